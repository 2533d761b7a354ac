"""
Generación determinista (por semilla) de muestras etiquetadas.

Generadores:
- partial_order_tasks: orden parcial aleatorio entre tareas (letras); una
  palabra es positiva si respeta todas las precedencias.
- random_split: conjunción de dos DFA completos aleatorios de 2-3 estados.
"""

import itertools
import logging
import string
from dataclasses import dataclass
from functools import partial
from typing import Callable, FrozenSet, List, Sequence, Tuple

import numpy as np

from core.base.automata_base import Decomposition, Dfa, decomposition_accepts
from core.base.samples_base import Alphabet, LabeledSamples, Word
from core.config.app_config import COMMON_CONFIG
from core.config.constants import ERROR_MESSAGES
from core.utils.common_validations import validate_positive
from core.utils.errors import InsufficientWords

logger = logging.getLogger(__name__)

GENERATORS = ('partial_order_tasks', 'random_split')

Labeler = Callable[[Word], bool]


@dataclass(frozen=True)
class BenchmarkSpec:
    alphabet_size: int
    max_word_length: int
    num_examples_per_label: int
    generator: str = 'partial_order_tasks'
    seed: int = 0

    def __post_init__(self):
        for name in ('alphabet_size', 'max_word_length', 'num_examples_per_label'):
            validate_positive(name, getattr(self, name))
        if self.generator not in GENERATORS:
            raise ValueError(f"Generador no soportado: {self.generator}. Use {GENERATORS}")


def task_alphabet(size: int) -> Alphabet:
    """a, b, c, ... y t26, t27, ... más allá de la z"""
    letters = [string.ascii_lowercase[i] if i < 26 else f"t{i}" for i in range(size)]
    return Alphabet(tuple(letters))


def count_words(alphabet_size: int, max_length: int) -> int:
    """Palabras no vacías de longitud <= max_length"""
    return sum(alphabet_size ** length for length in range(1, max_length + 1))


def random_partial_order(rng: np.random.Generator, alphabet_size: int,
                         edge_probability: float) -> FrozenSet[Tuple[int, int]]:
    """
    Orden parcial estricto: aristas aleatorias sobre un orden topológico
    aleatorio, cerradas transitivamente. Con al menos dos letras nunca queda vacío.
    """
    topo = [int(x) for x in rng.permutation(alphabet_size)]
    edges = set()
    for i, j in itertools.combinations(range(alphabet_size), 2):
        if rng.random() < edge_probability:
            edges.add((topo[i], topo[j]))
    if not edges and alphabet_size >= 2:
        edges.add((topo[0], topo[1]))

    closure = set(edges)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(closure), repeat=2):
            if b == c and (a, d) not in closure:
                closure.add((a, d))
                changed = True
    return frozenset(closure)


def respects_order(word: Sequence[int], order: FrozenSet[Tuple[int, int]]) -> bool:
    """Para cada a ≺ b, ninguna b aparece antes de la primera a"""
    first = {}
    for position, letter in enumerate(word):
        first.setdefault(letter, position)
    for a, b in order:
        if b in first and (a not in first or first[a] > first[b]):
            return False
    return True


def random_dfa(rng: np.random.Generator, num_states: int, num_letters: int) -> Dfa:
    delta = rng.integers(1, num_states + 1, size=(num_states, num_letters))
    accepting = frozenset(int(s) + 1 for s in np.flatnonzero(rng.random(num_states) < 0.5))
    return Dfa(num_states=num_states, delta=tuple(tuple(int(t) for t in row) for row in delta),
               accepting=accepting)


def random_target(rng: np.random.Generator, alphabet: Alphabet, max_length: int) -> Decomposition:
    """Dos DFA aleatorios; se vuelve a sortear si la conjunción es trivial en las palabras cortas"""
    cfg = COMMON_CONFIG['bench_config']
    low, high = cfg['target_min_states'], cfg['target_max_states']
    sample_words = list(_enumerate_words(alphabet.size, min(max_length, 4)))

    target = None
    for _ in range(cfg['target_redraws']):
        dfas = sorted((random_dfa(rng, int(rng.integers(low, high + 1)), alphabet.size) for _ in range(2)),
                      key=lambda d: d.num_states)
        target = Decomposition(alphabet=alphabet, dfas=tuple(dfas))
        labels = {decomposition_accepts(target, w) for w in sample_words}
        if labels == {True, False}:
            return target
    logger.warning("No se encontró un objetivo no trivial en %d intentos", cfg['target_redraws'])
    return target


def _enumerate_words(alphabet_size: int, max_length: int):
    for length in range(1, max_length + 1):
        yield from itertools.product(range(alphabet_size), repeat=length)


def _sample_by_enumeration(rng: np.random.Generator, spec: BenchmarkSpec,
                           labeler: Labeler) -> Tuple[List[Word], List[Word]]:
    words = list(_enumerate_words(spec.alphabet_size, spec.max_word_length))
    order = rng.permutation(len(words))
    positives: List[Word] = []
    negatives: List[Word] = []
    quota = spec.num_examples_per_label
    for index in order:
        word = words[int(index)]
        bucket = positives if labeler(word) else negatives
        if len(bucket) < quota:
            bucket.append(word)
        if len(positives) == quota and len(negatives) == quota:
            break
    return positives, negatives


def _sample_by_rejection(rng: np.random.Generator, spec: BenchmarkSpec,
                         labeler: Labeler) -> Tuple[List[Word], List[Word]]:
    quota = spec.num_examples_per_label
    attempts = COMMON_CONFIG['bench_config']['max_attempts_factor'] * 2 * quota
    seen = set()
    positives: List[Word] = []
    negatives: List[Word] = []
    for _ in range(attempts):
        length = int(rng.integers(1, spec.max_word_length + 1))
        word = tuple(int(x) for x in rng.integers(0, spec.alphabet_size, size=length))
        if word in seen:
            continue
        seen.add(word)
        bucket = positives if labeler(word) else negatives
        if len(bucket) < quota:
            bucket.append(word)
        if len(positives) == quota and len(negatives) == quota:
            break
    return positives, negatives


def generate(spec: BenchmarkSpec) -> LabeledSamples:
    """
    Genera S+ y S- con ``num_examples_per_label`` palabras cada uno.

    Si el espacio de palabras es enumerable se muestrea sin reemplazo sobre
    todas las palabras; si no, por rechazo con longitud uniforme en 1..max.

    Raises:
        InsufficientWords: no hay palabras suficientes para las cuotas
    """
    cfg = COMMON_CONFIG['bench_config']
    rng = np.random.default_rng(spec.seed)
    alphabet = task_alphabet(spec.alphabet_size)
    quota = spec.num_examples_per_label

    available = count_words(spec.alphabet_size, spec.max_word_length)
    if available < 2 * quota:
        raise InsufficientWords(ERROR_MESSAGES['insufficient_words'].format(
            f"{available} palabras no vacías de longitud <= {spec.max_word_length} "
            f"para {2 * quota} ejemplos"))

    if spec.generator == 'partial_order_tasks':
        order = random_partial_order(rng, spec.alphabet_size, cfg['edge_probability'])
        logger.debug("Orden parcial: %s", sorted(order))
        labeler: Labeler = partial(respects_order, order=order)
    else:
        target = random_target(rng, alphabet, spec.max_word_length)
        labeler = partial(decomposition_accepts, target)

    if available <= cfg['enumeration_limit']:
        positives, negatives = _sample_by_enumeration(rng, spec, labeler)
    else:
        positives, negatives = _sample_by_rejection(rng, spec, labeler)

    if len(positives) < quota or len(negatives) < quota:
        raise InsufficientWords(ERROR_MESSAGES['insufficient_words'].format(
            f"{len(positives)} positivas y {len(negatives)} negativas de {quota} pedidas"))

    return LabeledSamples(alphabet, tuple(positives), tuple(negatives))

