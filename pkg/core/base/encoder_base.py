"""
Base de las codificaciones SAT: mapa de variables, instancia CNF,
ruptura de simetrías, decodificación de modelos y estadísticas.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.base.automata_base import Decomposition, Dfa
from core.base.samples_base import Alphabet
from core.config.constants import ERROR_MESSAGES
from core.utils.common_validations import validate_allocation
from core.utils.errors import MalformedModel

logger = logging.getLogger(__name__)

Clause = List[int]
VarKey = Tuple[Hashable, ...]


class VarMap:
    """
    Biyección entre claves simbólicas y variables 1..next_free-1.

    Claves: ('x', k, v, i), ('e', k, l, i, j), ('z', k, i), ('r', v, k) y los
    auxiliares de simetría ('t', k, i, j), ('p', k, j, i), ('m', k, l, i, j).
    Los DFA y sus estados se indexan desde 1, las letras desde 0.
    """

    def __init__(self, allocation: Sequence[int], num_letters: int):
        self.allocation = tuple(allocation)
        self.num_letters = num_letters
        self._ids: Dict[VarKey, int] = {}
        self._keys: List[VarKey] = []

    def new(self, *key) -> int:
        if key in self._ids:
            raise KeyError(f"Variable duplicada: {key}")
        self._keys.append(key)
        self._ids[key] = len(self._keys)
        return len(self._keys)

    def __getitem__(self, key: VarKey) -> int:
        return self._ids[key]

    def __contains__(self, key: VarKey) -> bool:
        return key in self._ids

    def __len__(self) -> int:
        return len(self._keys)

    def key_of(self, var: int) -> VarKey:
        return self._keys[var - 1]

    @property
    def next_free(self) -> int:
        return len(self._keys) + 1

    def count(self, kind: str) -> int:
        return sum(1 for key in self._keys if key[0] == kind)

    def states(self, k: int) -> range:
        return range(1, self.allocation[k - 1] + 1)

    def x(self, k: int, v: int, i: int) -> int:
        return self._ids[('x', k, v, i)]

    def e(self, k: int, letter: int, i: int, j: int) -> int:
        return self._ids[('e', k, letter, i, j)]

    def z(self, k: int, i: int) -> int:
        return self._ids[('z', k, i)]

    def selector(self, v: int, k: int) -> int:
        return self._ids[('r', v, k)]


@dataclass
class CnfInstance:
    num_vars: int
    clauses: List[Clause]
    var_map: VarMap
    meta: Dict[str, object]
    alphabet: Alphabet
    groups: Dict[str, int] = field(default_factory=dict)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def allocation(self) -> Tuple[int, ...]:
        return self.var_map.allocation

    def validate(self) -> None:
        for clause in self.clauses:
            if not clause:
                raise ValueError("Cláusula vacía en la instancia")
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise ValueError(f"Literal fuera de rango: {literal}")


class ClauseBuilder:
    """Acumula cláusulas etiquetadas por grupo, en orden de emisión"""

    def __init__(self, var_map: VarMap, groups: Iterable[str]):
        self.var_map = var_map
        self.clauses: List[Clause] = []
        self.groups: Dict[str, int] = {g: 0 for g in groups}

    def add(self, group: str, clause: Clause) -> None:
        self.clauses.append(list(clause))
        self.groups[group] = self.groups.get(group, 0) + 1

    def extend(self, group: str, clauses: Iterable[Clause]) -> None:
        for clause in clauses:
            self.add(group, clause)


def allocate_core_vars(var_map: VarMap, states: Sequence[int]) -> None:
    """Bloques x, e, z en orden lexicográfico de índices"""
    allocation = var_map.allocation
    for k in range(1, len(allocation) + 1):
        for v in states:
            for i in var_map.states(k):
                var_map.new('x', k, v, i)
    for k in range(1, len(allocation) + 1):
        for letter in range(var_map.num_letters):
            for i in var_map.states(k):
                for j in var_map.states(k):
                    var_map.new('e', k, letter, i, j)
    for k in range(1, len(allocation) + 1):
        for i in var_map.states(k):
            var_map.new('z', k, i)


def allocate_selectors(var_map: VarMap, rejecting: Iterable[int]) -> None:
    for v in sorted(rejecting):
        for k in range(1, len(var_map.allocation) + 1):
            var_map.new('r', v, k)


def determinism_clauses(var_map: VarMap) -> Iterable[Clause]:
    """Cada (estado, letra) tiene a lo sumo un sucesor"""
    for k in range(1, len(var_map.allocation) + 1):
        m = var_map.allocation[k - 1]
        for letter in range(var_map.num_letters):
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    for t in range(j + 1, m + 1):
                        yield [-var_map.e(k, letter, i, j), -var_map.e(k, letter, i, t)]


def completeness_clauses(var_map: VarMap) -> Iterable[Clause]:
    """Cada (estado, letra) tiene al menos un sucesor"""
    for k in range(1, len(var_map.allocation) + 1):
        for letter in range(var_map.num_letters):
            for i in var_map.states(k):
                yield [var_map.e(k, letter, i, j) for j in var_map.states(k)]


def negative_selector_clauses(var_map: VarMap, rejecting: Iterable[int]) -> Iterable[Clause]:
    """
    Rechazo por al menos un DFA: un selector r[v][k] por DFA, la disyunción
    de selectores y, si r[v][k], ningún estado de aceptación del DFA k para v.
    """
    n = len(var_map.allocation)
    for v in sorted(rejecting):
        yield [var_map.selector(v, k) for k in range(1, n + 1)]
        for k in range(1, n + 1):
            for i in var_map.states(k):
                yield [-var_map.selector(v, k), -var_map.x(k, v, i), -var_map.z(k, i)]


def at_most_one_color(var_map: VarMap, states: Iterable[int]) -> Iterable[Clause]:
    for v in states:
        for k in range(1, len(var_map.allocation) + 1):
            m = var_map.allocation[k - 1]
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    yield [-var_map.x(k, v, i), -var_map.x(k, v, j)]


def encode_symmetry(var_map: VarMap, k: int) -> List[Clause]:
    """
    Cláusulas de ruptura de simetrías del DFA k (enumeración en profundidad).

    Los estados se numeran en el orden de descubrimiento de un recorrido en
    profundidad desde el estado 1 que prueba las letras en orden: el padre de
    j es su mayor predecesor menor que j, los estados entre el padre y j ya
    están cerrados y los hermanos se ordenan por su letra mínima. Los
    auxiliares t, p, m se reservan aquí.
    """
    m = var_map.allocation[k - 1]
    letters = range(var_map.num_letters)
    clauses: List[Clause] = []

    t = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            t[i, j] = var_map.new('t', k, i, j)
    p = {}
    for j in range(2, m + 1):
        for i in range(1, j):
            p[j, i] = var_map.new('p', k, j, i)
    msym = {}
    for letter in letters:
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                msym[letter, i, j] = var_map.new('m', k, letter, i, j)

    # Todo estado distinto del inicial tiene un padre menor
    for j in range(2, m + 1):
        clauses.append([p[j, i] for i in range(1, j)])

    # p[j][i] <-> t[i][j] y ningún t[h][j] con i < h < j
    for j in range(2, m + 1):
        for i in range(1, j):
            between = range(i + 1, j)
            clauses.append([-p[j, i], t[i, j]])
            for h in between:
                clauses.append([-p[j, i], -t[h, j]])
            clauses.append([p[j, i], -t[i, j]] + [t[h, j] for h in between])

    # t[i][j] <-> existe una letra de i a j
    for (i, j), var in t.items():
        edges = [var_map.e(k, letter, i, j) for letter in letters]
        clauses.append([-var] + edges)
        for edge in edges:
            clauses.append([-edge, var])

    # i < h < j < q: si i es padre de j, h ya no lleva a estados posteriores a j
    for i in range(1, m + 1):
        for h in range(i + 1, m + 1):
            for j in range(h + 1, m + 1):
                for q in range(j + 1, m + 1):
                    clauses.append([-p[j, i], -t[h, q]])

    # m[l][i][j] <-> e[l][i][j] y ninguna letra menor va de i a j
    for (letter, i, j), var in msym.items():
        edge = var_map.e(k, letter, i, j)
        smaller = [var_map.e(k, h, i, j) for h in range(letter)]
        clauses.append([-var, edge])
        for other in smaller:
            clauses.append([-var, -other])
        clauses.append([var, -edge] + smaller)

    # Hermanos j < q de un mismo padre i ordenados por letra mínima
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for q in range(j + 1, m + 1):
                for r in letters:
                    for s in range(r + 1, var_map.num_letters):
                        clauses.append([-p[j, i], -p[q, i], -msym[s, i, j], -msym[r, i, q]])

    return clauses


def decode(instance: CnfInstance, assignment: Mapping[int, bool]) -> Decomposition:
    """
    Reconstruye la descomposición a partir de un modelo.

    δ_k(i, l) = j con e[k][l][i][j] verdadero; F_k = {i : z[k][i]}.
    Lanza MalformedModel si algún par (i, l) no tiene exactamente un sucesor.
    """
    var_map = instance.var_map
    dfas = []
    for k in range(1, len(var_map.allocation) + 1):
        rows = []
        for i in var_map.states(k):
            row = []
            for letter in range(var_map.num_letters):
                targets = [j for j in var_map.states(k)
                           if assignment.get(var_map.e(k, letter, i, j), False)]
                if len(targets) != 1:
                    raise MalformedModel(ERROR_MESSAGES['malformed_model'].format(
                        k, i, instance.alphabet.letters[letter], len(targets)))
                row.append(targets[0])
            rows.append(tuple(row))
        accepting = frozenset(i for i in var_map.states(k) if assignment.get(var_map.z(k, i), False))
        dfas.append(Dfa(num_states=len(rows), delta=tuple(rows), accepting=accepting))
    return Decomposition(alphabet=instance.alphabet, dfas=tuple(dfas))


def encoding_stats(instance: CnfInstance) -> Dict[str, object]:
    """Tamaño de la instancia y cláusulas por grupo"""
    return {
        'num_vars': instance.num_vars,
        'num_clauses': instance.num_clauses,
        'groups': dict(instance.groups),
    }


class EncoderBase(ABC):
    """
    Clase base de las codificaciones.

    Las subclases reservan sus variables y emiten sus grupos de cláusulas en
    ``build``; la base valida la asignación, añade las simetrías y empaqueta
    la instancia.
    """

    kind: str = ''

    def __init__(self, config: Optional[dict] = None):
        from core.config import get_config, validate_config
        self.config = config or get_config(self.kind)
        validate_config(self.config)

    def encode(self, acceptor, allocation: Sequence[int], symmetry: Optional[bool] = None) -> CnfInstance:
        allocation = validate_allocation(allocation)
        if symmetry is None:
            symmetry = self.config.get('symmetry', True)

        var_map = VarMap(allocation, acceptor.alphabet.size)
        builder = ClauseBuilder(var_map, self.config['clause_groups'])
        self.build(builder, acceptor, allocation)

        if symmetry:
            for k in range(1, len(allocation) + 1):
                builder.extend('SYM', encode_symmetry(var_map, k))

        instance = CnfInstance(
            num_vars=len(var_map),
            clauses=builder.clauses,
            var_map=var_map,
            meta={
                'encoding': self.kind,
                'allocation': allocation,
                'acceptor_states': acceptor.num_states,
                'symmetry': symmetry,
            },
            alphabet=acceptor.alphabet,
            groups=builder.groups,
        )
        logger.debug("%s %s: %d variables, %d cláusulas",
                     self.kind, allocation, instance.num_vars, instance.num_clauses)
        return instance

    @abstractmethod
    def build(self, builder: ClauseBuilder, acceptor, allocation: Tuple[int, ...]) -> None:
        """Reserva variables y emite los grupos de cláusulas propios"""
        pass
