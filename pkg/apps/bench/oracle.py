"""
Oráculo por enumeración exhaustiva de DFA completos pequeños.

Sirve de verificación independiente de las codificaciones SAT: para cada
tamaño se recorren todas las funciones de transición (vectorizadas con numpy)
y todos los conjuntos de aceptación.
"""

import logging
from typing import List, Optional, Sequence, Set

import numpy as np

from core.base.automata_base import Dfa
from core.base.samples_base import LabeledSamples, Word
from core.config.app_config import COMMON_CONFIG
from core.config.constants import ERROR_MESSAGES
from core.utils.common_validations import validate_allocation
from core.utils.errors import SearchSpaceTooLarge

logger = logging.getLogger(__name__)


def search_space(num_states: int, num_letters: int) -> int:
    """m^(m·|Σ|) funciones de transición por 2^m conjuntos de aceptación"""
    return num_states ** (num_states * num_letters) * 2 ** num_states


def _check_guard(num_states: int, num_letters: int) -> None:
    limit = COMMON_CONFIG['oracle_config']['max_search_space']
    size = search_space(num_states, num_letters)
    if size > limit:
        raise SearchSpaceTooLarge(ERROR_MESSAGES['search_space_too_large'].format(size, limit))


def transition_tables(num_states: int, num_letters: int) -> np.ndarray:
    """
    Todas las tablas de transición, una por fila.

    La columna ``estado·|Σ| + letra`` contiene el destino (base 0); la
    columna 0 es la que varía más rápido entre filas consecutivas.
    """
    positions = num_states * num_letters
    count = num_states ** positions
    index = np.arange(count, dtype=np.int64)[:, None]
    weights = num_states ** np.arange(positions, dtype=np.int64)[None, :]
    return ((index // weights) % num_states).astype(np.int64)


def final_states(tables: np.ndarray, words: Sequence[Word], num_letters: int) -> np.ndarray:
    """Matriz (palabras × tablas) con el estado (base 0) alcanzado por cada palabra"""
    rows = np.arange(tables.shape[0])
    finals = np.empty((len(words), tables.shape[0]), dtype=np.int64)
    for w, word in enumerate(words):
        state = np.zeros(tables.shape[0], dtype=np.int64)
        for letter in word:
            state = tables[rows, state * num_letters + letter]
        finals[w] = state
    return finals


def _accepting_mask(code: int, num_states: int) -> np.ndarray:
    return np.array([(code >> s) & 1 == 1 for s in range(num_states)])


def oracle_exists_dfa(samples: LabeledSamples, num_states: int) -> Optional[Dfa]:
    """
    Primer DFA completo de ``num_states`` estados consistente con las muestras.

    Orden: conjuntos de aceptación como contador binario (exterior) y, dentro,
    tablas de transición con la posición 0 variando más rápido.
    """
    num_letters = samples.alphabet.size
    _check_guard(num_states, num_letters)

    tables = transition_tables(num_states, num_letters)
    positives = list(samples.positives)
    negatives = list(samples.negatives)
    finals = final_states(tables, positives + negatives, num_letters)
    split = len(positives)

    for code in range(2 ** num_states):
        mask = _accepting_mask(code, num_states)
        accepted = mask[finals]
        ok = accepted[:split].all(axis=0) & ~accepted[split:].any(axis=0)
        hits = np.flatnonzero(ok)
        if hits.size:
            table = tables[hits[0]]
            delta = tuple(tuple(int(table[s * num_letters + a]) + 1 for a in range(num_letters))
                          for s in range(num_states))
            accepting = frozenset(s + 1 for s in range(num_states) if mask[s])
            return Dfa(num_states=num_states, delta=delta, accepting=accepting)
    return None


def rejection_signatures(samples: LabeledSamples, num_states: int) -> Set[int]:
    """
    Conjuntos de negativas rechazadas (como máscara de bits) por los DFA de
    ``num_states`` estados que aceptan todas las positivas.
    """
    num_letters = samples.alphabet.size
    _check_guard(num_states, num_letters)

    tables = transition_tables(num_states, num_letters)
    positives = list(samples.positives)
    negatives = list(samples.negatives)
    finals = final_states(tables, positives + negatives, num_letters)
    split = len(positives)
    weights = [1 << i for i in range(len(negatives))]

    signatures: Set[int] = set()
    for code in range(2 ** num_states):
        mask = _accepting_mask(code, num_states)
        accepted = mask[finals]
        keep = accepted[:split].all(axis=0)
        if not keep.any():
            continue
        if not negatives:
            signatures.add(0)
            continue
        rejected = ~accepted[split:, keep]
        for row in np.unique(rejected.T, axis=0):
            signatures.add(sum(w for w, bit in zip(weights, row) if bit))
    return signatures


def oracle_exists_decomposition(samples: LabeledSamples, allocation: Sequence[int]) -> bool:
    """
    True si alguna tupla de DFAs con la asignación dada es consistente.

    Cada DFA se reduce a la firma de negativas que rechaza; la tupla es
    consistente si la unión de firmas cubre todas las negativas.
    """
    allocation = validate_allocation(allocation)
    full = (1 << len(samples.negatives)) - 1

    cache = {}
    reachable: List[int] = [0]
    for m in allocation:
        if m not in cache:
            cache[m] = rejection_signatures(samples, m)
        if not cache[m]:
            return False
        reachable = sorted({r | s for r in reachable for s in cache[m]})
    found = full in reachable
    logger.debug("oráculo %s: %s", allocation, found)
    return found
