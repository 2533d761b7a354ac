"""
Búsqueda de descomposiciones: órdenes entre asignaciones de estados,
enumeración por entropía, búsqueda states-optimal y frontera de Pareto.
"""

import logging
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from scipy.stats import entropy as shannon_entropy

from core.app_factory import EncoderFactory
from core.base.automata_base import (
    Decomposition,
    Dfa,
    verify_against_acceptor,
    verify_consistency,
)
from core.base.encoder_base import decode
from core.base.samples_base import LabeledSamples, prefixes
from core.config.app_config import COMMON_CONFIG, normalize_encoder_name
from core.config.constants import ERROR_MESSAGES
from core.utils.common_validations import validate_allocation
from core.utils.errors import (
    ArityMismatch,
    BoundExceeded,
    InternalInconsistency,
    InvalidBound,
    SolverUnknown,
)
from core.utils.sat_backend import SAT, UNKNOWN, UNSAT, SolverConfig, solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StatesAllocation:
    """(m_1, ..., m_n) ascendente con cada m_i >= 2"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'parts', validate_allocation(self.parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return '(' + ','.join(map(str, self.parts)) + ')'


def _parts(allocation) -> Tuple[int, ...]:
    return allocation.parts if isinstance(allocation, StatesAllocation) else tuple(allocation)


def entropy(allocation) -> float:
    """Entropía en bits de la distribución m_i / total"""
    parts = _parts(allocation)
    if sum(parts) <= 0:
        raise ValueError("La entropía requiere un total positivo")
    return float(shannon_entropy(parts, base=2))


def _entropy_key(parts: Sequence[int]) -> int:
    # Con total fijo, mayor entropía equivale a menor producto de m_i^m_i (exacto en enteros)
    return math.prod(m ** m for m in parts)


def pareto_dominates(a, b) -> bool:
    """a ≺ b: componente a componente <= con al menos una desigualdad estricta"""
    pa, pb = _parts(a), _parts(b)
    if len(pa) != len(pb):
        raise ArityMismatch(ERROR_MESSAGES['arity_mismatch'].format(pa, pb))
    return all(x <= y for x, y in zip(pa, pb)) and any(x < y for x, y in zip(pa, pb))


def states_optimal_less(a, b) -> bool:
    """a ⋖ b: menos estados en total o, con el mismo total, entropía mayor o igual"""
    pa, pb = _parts(a), _parts(b)
    if sum(pa) != sum(pb):
        return sum(pa) < sum(pb)
    return _entropy_key(pa) <= _entropy_key(pb)


@lru_cache(maxsize=None)
def _ascending_partitions(total: int, minimum: int) -> Tuple[Tuple[int, ...], ...]:
    found = [(total,)]
    m = minimum
    while m <= total - m:
        found.extend((m,) + rest for rest in _ascending_partitions(total - m, m))
        m += 1
    return tuple(found)


def compute_states_allocations(total: int, minimum: int = 2,
                               max_parts: Optional[int] = None) -> List[StatesAllocation]:
    """
    Particiones ascendentes de ``total`` en partes >= ``minimum``.

    Returns:
        Lista ordenada por entropía descendente; a igual entropía, la tupla
        lexicográficamente menor primero. ``max_parts`` descarta las que
        tienen más DFAs.
    """
    if minimum < 2 or total < minimum:
        raise InvalidBound(ERROR_MESSAGES['invalid_bound'].format(total, minimum))
    candidates = _ascending_partitions(total, minimum)
    if max_parts is not None:
        candidates = tuple(c for c in candidates if len(c) <= max_parts)
    ordered = sorted(candidates, key=lambda parts: (_entropy_key(parts), parts))
    return [StatesAllocation(parts) for parts in ordered]


def termination_bound(samples: LabeledSamples) -> int:
    """2 + Σ_{u∈S-}(|u| + 2): tamaño de ``bound_witness``"""
    return 2 + sum(len(u) + 2 for u in samples.negatives)


def _word_rejector(word: Sequence[int], num_letters: int) -> Dfa:
    # Cadena 1..|u|+1 que sigue u, sumidero |u|+2; sólo rechaza tras leer u completa
    length = len(word)
    sink = length + 2
    rows = []
    for state in range(1, length + 2):
        row = []
        for letter in range(num_letters):
            if state <= length and word[state - 1] == letter:
                row.append(state + 1)
            else:
                row.append(sink)
        rows.append(tuple(row))
    rows.append(tuple([sink] * num_letters))
    accepting = frozenset(range(1, sink + 1)) - {length + 1}
    return Dfa(num_states=sink, delta=tuple(rows), accepting=accepting)


def bound_witness(samples: LabeledSamples) -> Decomposition:
    """
    Descomposición trivial: un DFA de 2 estados que acepta todo y, por cada
    negativa u, un DFA de |u|+2 estados que rechaza exactamente u.
    """
    size = samples.alphabet.size
    accept_all = Dfa(num_states=2, delta=tuple((1,) * size for _ in range(2)), accepting=frozenset({1, 2}))
    dfas = [accept_all] + [_word_rejector(u, size) for u in samples.negatives]
    dfas.sort(key=lambda d: d.num_states)
    return Decomposition(alphabet=samples.alphabet, dfas=tuple(dfas))


@dataclass
class AllocationResult:
    status: str
    decomposition: Optional[Decomposition] = None
    stats: Dict[str, object] = field(default_factory=dict)


def solve_allocation(acceptor, allocation, cfg: Optional[SolverConfig] = None,
                     encoder: str = 'three_dfa', symmetry: bool = True,
                     samples: Optional[LabeledSamples] = None) -> AllocationResult:
    """
    Codificar, resolver, decodificar y verificar una asignación.

    La descomposición se verifica contra ``samples`` si se indican, y si no
    contra el propio aceptor. Un fallo de verificación es un error interno.
    """
    parts = _parts(allocation)
    instance = EncoderFactory.create_encoder(encoder).encode(acceptor, parts, symmetry)
    result = solve(instance, cfg)
    stats = {
        'num_vars': instance.num_vars,
        'num_clauses': instance.num_clauses,
        'solve_time_ms': result.stats.get('solve_time_ms'),
        'reason': result.reason,
    }
    logger.info("asignación %s: %s (%d vars, %d cláusulas)",
                parts, result.status, instance.num_vars, instance.num_clauses)

    if result.status != SAT:
        return AllocationResult(result.status, None, stats)

    decomposition = decode(instance, result.assignment)
    if samples is not None:
        verdict = verify_consistency(decomposition, samples)
    else:
        verdict = verify_against_acceptor(decomposition, acceptor)
    if not verdict.consistent:
        raise InternalInconsistency(ERROR_MESSAGES['inconsistent_decomposition'].format(
            f"{verdict.kind.value} en {acceptor.alphabet.format_word(verdict.word)!r}"))
    return AllocationResult(SAT, decomposition, stats)


def _solve_task(args) -> AllocationResult:
    acceptor, parts, cfg, encoder, symmetry, samples = args
    return solve_allocation(acceptor, parts, cfg, encoder, symmetry, samples)


def _raise_unknown(parts, result: AllocationResult):
    raise SolverUnknown(ERROR_MESSAGES['solver_unknown'].format(
        parts, result.stats.get('reason') or 'sin motivo'))


@dataclass
class StatesOptimalResult:
    total: int
    allocation: StatesAllocation
    decomposition: Decomposition

    @property
    def entropy(self) -> float:
        return entropy(self.allocation)


def solve_states_optimal(samples: LabeledSamples, cfg: Optional[SolverConfig] = None,
                         max_n: Optional[int] = None, encoder: str = 'three_dfa',
                         symmetry: bool = True, jobs: int = 1) -> StatesOptimalResult:
    """
    Descomposición states-optimal: para N = 2, 3, ... se prueban las
    asignaciones de N estados en orden de entropía y se devuelve la primera
    satisfacible.

    Con ``jobs > 1`` cada ronda se resuelve en un pool de procesos; la
    respuesta sigue siendo la primera satisfacible en el orden de la ronda.
    """
    encoder = normalize_encoder_name(encoder)
    acceptor = EncoderFactory.build_acceptor(encoder, samples)
    limit = termination_bound(samples)
    if max_n is not None:
        if max_n < 1:
            raise ValueError(f"max_n debe ser >= 1 (recibido {max_n})")
        # Con pocos DFAs el testigo puede no caber; un único DFA con |prefijos|+1 estados siempre basta
        limit = max(limit, len(prefixes(samples)) + 1)

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        total = COMMON_CONFIG['search_config']['min_states']
        while True:
            if total > limit:
                raise BoundExceeded(ERROR_MESSAGES['bound_exceeded'].format(total, limit))
            round_ = compute_states_allocations(total, 2, max_n)
            logger.info("N=%d: %d asignaciones", total, len(round_))

            for allocation, result in _solve_round(acceptor, round_, cfg, encoder, symmetry, samples, pool):
                if result.status == UNKNOWN:
                    _raise_unknown(allocation.parts, result)
                if result.status == SAT:
                    return StatesOptimalResult(total, allocation, result.decomposition)
            total += 1
    finally:
        if pool is not None:
            pool.shutdown()


def _solve_round(acceptor, round_: List[StatesAllocation], cfg, encoder, symmetry, samples,
                 pool: Optional[ProcessPoolExecutor]) -> Iterator[Tuple[StatesAllocation, AllocationResult]]:
    if pool is None:
        for allocation in round_:
            yield allocation, solve_allocation(acceptor, allocation, cfg, encoder, symmetry, samples)
        return
    tasks = [(acceptor, a.parts, cfg, encoder, symmetry, samples) for a in round_]
    yield from zip(round_, pool.map(_solve_task, tasks))


class ParetoFrontier:
    """Asignaciones no dominadas entre sí, con una descomposición testigo cada una"""

    def __init__(self):
        self.entries: Dict[Tuple[int, ...], Decomposition] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Tuple[StatesAllocation, Decomposition]]:
        for parts in sorted(self.entries):
            yield StatesAllocation(parts), self.entries[parts]

    def allocations(self) -> List[Tuple[int, ...]]:
        return sorted(self.entries)

    def dominates(self, allocation) -> bool:
        """True si alguna asignación de la frontera domina a ``allocation``"""
        parts = _parts(allocation)
        return any(pareto_dominates(existing, parts) for existing in self.entries)

    def add(self, allocation, decomposition: Decomposition) -> None:
        parts = _parts(allocation)
        if self.dominates(parts):
            raise InternalInconsistency(f"{parts} está dominada por la frontera")
        for existing in list(self.entries):
            if pareto_dominates(parts, existing):
                del self.entries[existing]
        self.entries[parts] = decomposition


def solve_pareto(samples: LabeledSamples, n: int, cfg: Optional[SolverConfig] = None,
                 encoder: str = 'three_dfa', symmetry: bool = True,
                 observer: Optional[Callable[[Tuple[int, ...], AllocationResult], None]] = None) -> ParetoFrontier:
    """
    Frontera de Pareto para n DFAs, recorriendo asignaciones en anchura.

    Cola inicial (2,...,2); se omiten las asignaciones dominadas por la
    frontera; una asignación insatisfacible encola sus incrementos de una
    componente que siguen siendo ascendentes. Ninguna se encola dos veces.
    ``observer`` recibe cada asignación resuelta con su resultado.
    """
    if n < 1:
        raise ValueError(f"n debe ser >= 1 (recibido {n})")
    encoder = normalize_encoder_name(encoder)
    acceptor = EncoderFactory.build_acceptor(encoder, samples)

    frontier = ParetoFrontier()
    start = (2,) * n
    queue = deque([start])
    visited = {start}

    while queue:
        parts = queue.popleft()
        if frontier.dominates(parts):
            continue
        result = solve_allocation(acceptor, parts, cfg, encoder, symmetry, samples)
        if observer is not None:
            observer(parts, result)
        if result.status == UNKNOWN:
            _raise_unknown(parts, result)
        if result.status == SAT:
            frontier.add(parts, result.decomposition)
            continue
        assert result.status == UNSAT
        for index in range(n):
            bumped = parts[:index] + (parts[index] + 1,) + parts[index + 1:]
            if list(bumped) == sorted(bumped) and bumped not in visited:
                visited.add(bumped)
                queue.append(bumped)

    logger.info("Frontera de Pareto con %d DFAs: %s", n, frontier.allocations())
    return frontier
