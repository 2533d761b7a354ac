"""
Autómatas: APTA, 3DFA (reducción hacia atrás con Register), DFA completos,
descomposiciones y verificación de consistencia.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from core.base.samples_base import Alphabet, LabeledSamples, Word, prefixes, word_prefixes
from core.utils.errors import InvalidAutomaton

logger = logging.getLogger(__name__)

Transitions = Mapping[Tuple[int, int], int]


class Classification(str, Enum):
    ACCEPT = 'accept'
    REJECT = 'reject'
    DONT_CARE = 'dont_care'


class ViolationKind(str, Enum):
    POSITIVE_REJECTED = 'positive_rejected'
    NEGATIVE_ACCEPTED = 'negative_accepted'


class AcceptorMixin:
    """Comportamiento común de APTA y 3DFA (δ parcial, tres clases de estado)"""

    alphabet: Alphabet
    initial: int
    delta: Transitions
    accepting: FrozenSet[int]
    rejecting: FrozenSet[int]

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def dont_care(self) -> FrozenSet[int]:
        return frozenset(self.states) - self.accepting - self.rejecting

    def state_class(self, state: int) -> Classification:
        if state in self.accepting:
            return Classification.ACCEPT
        if state in self.rejecting:
            return Classification.REJECT
        return Classification.DONT_CARE

    def successors(self, state: int) -> Dict[int, int]:
        """Sucesores definidos de un estado, letra -> estado"""
        return {a: self.delta[(state, a)]
                for a in range(self.alphabet.size) if (state, a) in self.delta}

    def outgoing_letters(self, state: int) -> Tuple[int, ...]:
        """l(v): letras con transición saliente desde v"""
        return tuple(a for a in range(self.alphabet.size) if (state, a) in self.delta)

    def run(self, word: Sequence[int]) -> Optional[int]:
        """Estado alcanzado por la palabra, o None si falta una transición"""
        state = self.initial
        for letter in word:
            state = self.delta.get((state, letter))
            if state is None:
                return None
        return state


@dataclass(frozen=True)
class Apta(AcceptorMixin):
    """Árbol de prefijos aumentado: un estado por prefijo de S"""

    alphabet: Alphabet
    initial: int
    delta: Transitions
    accepting: FrozenSet[int]
    rejecting: FrozenSet[int]
    prefix_of: Tuple[Word, ...]
    parents: Mapping[int, Tuple[int, int]]  # estado -> (padre, letra entrante)

    @property
    def states(self) -> Tuple[int, ...]:
        return tuple(range(len(self.prefix_of)))

    def state_of(self, word: Sequence[int]) -> Optional[int]:
        return self.run(word)


@dataclass(frozen=True)
class ThreeDfa(AcceptorMixin):
    """
    DFA de tres valores resultado de la reducción.

    Cada representante conserva el menor id de APTA de su clase, así que los
    ids no son contiguos; ``provenance`` guarda la clase completa.
    """

    alphabet: Alphabet
    states: Tuple[int, ...]
    initial: int
    delta: Transitions
    accepting: FrozenSet[int]
    rejecting: FrozenSet[int]
    merged: FrozenSet[int]
    provenance: Mapping[int, FrozenSet[int]]


@dataclass(frozen=True)
class Dfa:
    """DFA completo con estados 1..m, estado inicial 1"""

    num_states: int
    delta: Tuple[Tuple[int, ...], ...]   # delta[i-1][letra] = j
    accepting: FrozenSet[int]
    initial: int = 1

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'accepting', frozenset(self.accepting))

        if self.num_states < 2:
            raise InvalidAutomaton(f"Un DFA necesita al menos 2 estados (tiene {self.num_states})")
        if len(delta) != self.num_states:
            raise InvalidAutomaton(f"δ tiene {len(delta)} filas para {self.num_states} estados")
        widths = {len(row) for row in delta}
        if len(widths) != 1 or 0 in widths:
            raise InvalidAutomaton("δ debe estar definida para cada par (estado, letra)")
        for row in delta:
            for target in row:
                if not 1 <= target <= self.num_states:
                    raise InvalidAutomaton(f"Destino fuera de rango: {target}")
        if not self.accepting <= set(range(1, self.num_states + 1)):
            raise InvalidAutomaton(f"Estados de aceptación fuera de rango: {sorted(self.accepting)}")
        if self.initial != 1:
            raise InvalidAutomaton("El estado inicial debe ser 1")

    @property
    def num_letters(self) -> int:
        return len(self.delta[0])

    def step(self, state: int, letter: int) -> int:
        return self.delta[state - 1][letter]

    def run(self, word: Sequence[int]) -> int:
        state = self.initial
        for letter in word:
            state = self.delta[state - 1][letter]
        return state

    def transitions(self) -> Iterable[Tuple[int, int, int]]:
        for i, row in enumerate(self.delta, start=1):
            for letter, j in enumerate(row):
                yield i, letter, j


@dataclass(frozen=True)
class Decomposition:
    """Tupla (A_1, ..., A_n) con m_1 <= ... <= m_n"""

    alphabet: Alphabet
    dfas: Tuple[Dfa, ...]

    def __post_init__(self):
        dfas = tuple(self.dfas)
        object.__setattr__(self, 'dfas', dfas)
        if not dfas:
            raise InvalidAutomaton("Una descomposición necesita al menos un DFA")
        sizes = [d.num_states for d in dfas]
        if sizes != sorted(sizes):
            raise InvalidAutomaton(f"Los tamaños deben ser ascendentes: {tuple(sizes)}")
        for dfa in dfas:
            if dfa.num_letters != self.alphabet.size:
                raise InvalidAutomaton(
                    f"DFA con {dfa.num_letters} letras sobre un alfabeto de {self.alphabet.size}")

    @property
    def allocation(self) -> Tuple[int, ...]:
        return tuple(d.num_states for d in self.dfas)

    @property
    def total_states(self) -> int:
        return sum(self.allocation)


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    word: Optional[Word] = None
    kind: Optional[ViolationKind] = None


def build_apta(samples: LabeledSamples, numbering: str = 'insertion') -> Apta:
    """
    Construye el APTA de las muestras.

    Args:
        samples: muestras validadas
        numbering: 'insertion' (orden de descubrimiento insertando S+ y luego S-,
            numeración por defecto) o 'length_lex' (orden de prefixes())

    Returns:
        Apta con un estado por prefijo
    """
    if numbering == 'insertion':
        order: Dict[Word, int] = {(): 0}
        for word, _ in samples.labeled_words():
            for prefix in word_prefixes(word):
                if prefix not in order:
                    order[prefix] = len(order)
        prefix_of = tuple(order)
    elif numbering == 'length_lex':
        prefix_of = prefixes(samples)
    else:
        raise ValueError(f"Numeración no soportada: {numbering}")

    state_of = {prefix: i for i, prefix in enumerate(prefix_of)}
    delta: Dict[Tuple[int, int], int] = {}
    parents: Dict[int, Tuple[int, int]] = {}
    for prefix, state in state_of.items():
        if prefix:
            parent = state_of[prefix[:-1]]
            delta[(parent, prefix[-1])] = state
            parents[state] = (parent, prefix[-1])

    accepting = frozenset(state_of[w] for w in samples.positives)
    rejecting = frozenset(state_of[w] for w in samples.negatives)

    return Apta(
        alphabet=samples.alphabet,
        initial=state_of[()],
        delta=delta,
        accepting=accepting,
        rejecting=rejecting,
        prefix_of=prefix_of,
        parents=parents,
    )


def reduce_to_3dfa(apta: Apta) -> ThreeDfa:
    """
    Reducción hacia atrás del APTA usando un Register.

    Los estados se procesan desde las hojas hacia la raíz (profundidad
    decreciente, luego id). Dos estados no rechazantes son equivalentes si
    tienen la misma clase (aceptación o indiferente) y, para cada letra, ambos
    carecen de sucesor o comparten representante. Los estados rechazantes
    nunca se fusionan.
    """
    order = sorted(apta.states, key=lambda s: (-len(apta.prefix_of[s]), s))

    register: Dict[tuple, int] = {}
    provisional: Dict[int, int] = {}

    for state in order:
        if state in apta.rejecting:
            provisional[state] = state
            continue
        children = tuple(
            provisional[apta.delta[(state, a)]] if (state, a) in apta.delta else None
            for a in range(apta.alphabet.size)
        )
        key = (state in apta.accepting, children)
        provisional[state] = register.setdefault(key, state)

    classes: Dict[int, List[int]] = defaultdict(list)
    for state, rep in provisional.items():
        classes[rep].append(state)

    # Representante final: el menor id de APTA de la clase
    final = {rep: min(members) for rep, members in classes.items()}
    rep_of = {state: final[rep] for state, rep in provisional.items()}

    states = tuple(sorted(final.values()))
    delta = {}
    for rep in states:
        for letter, child in apta.successors(rep).items():
            delta[(rep, letter)] = rep_of[child]

    provenance = {final[rep]: frozenset(members) for rep, members in classes.items()}
    merged = frozenset(rep for rep, members in provenance.items() if len(members) >= 2)

    acceptor = ThreeDfa(
        alphabet=apta.alphabet,
        states=states,
        initial=rep_of[apta.initial],
        delta=delta,
        accepting=frozenset(s for s in states if s in apta.accepting),
        rejecting=frozenset(s for s in states if s in apta.rejecting),
        merged=merged,
        provenance=provenance,
    )
    logger.debug("3DFA: %d estados (APTA %d), |M|=%d",
                 acceptor.num_states, apta.num_states, len(merged))
    return acceptor


def check_three_dfa(acceptor: ThreeDfa, apta: Optional[Apta] = None) -> None:
    """
    Verifica los invariantes del 3DFA; lanza InvalidAutomaton si alguno falla.

    Con ``apta`` se comprueba además que la procedencia cubre el APTA, que la
    clasificación coincide con la de cada miembro y que ningún par de estados
    rechazantes del APTA comparte estado.
    """
    states = set(acceptor.states)

    if acceptor.accepting & acceptor.rejecting:
        raise InvalidAutomaton("A y R no son disjuntos")
    if not (acceptor.accepting | acceptor.rejecting | acceptor.merged) <= states:
        raise InvalidAutomaton("A, R o M contienen estados inexistentes")
    if acceptor.initial not in states:
        raise InvalidAutomaton("Estado inicial inexistente")
    for (source, letter), target in acceptor.delta.items():
        if source not in states or target not in states:
            raise InvalidAutomaton(f"Transición inválida {source} -{letter}-> {target}")
        if not 0 <= letter < acceptor.alphabet.size:
            raise InvalidAutomaton(f"Letra fuera del alfabeto: {letter}")

    if set(acceptor.provenance) != states:
        raise InvalidAutomaton("La procedencia no cubre exactamente los estados")
    merged = {s for s, members in acceptor.provenance.items() if len(members) >= 2}
    if merged != set(acceptor.merged):
        raise InvalidAutomaton(f"M={sorted(acceptor.merged)} no coincide con la procedencia")

    # Ningún estado rechazante representa más de un prefijo
    over_merged = acceptor.rejecting & acceptor.merged
    if over_merged:
        raise InvalidAutomaton(f"Estados rechazantes fusionados: {sorted(over_merged)}")

    seen = set()
    for members in acceptor.provenance.values():
        if seen & members:
            raise InvalidAutomaton("Un estado del APTA aparece en dos clases")
        seen |= members

    if apta is None:
        return

    if seen != set(apta.states):
        raise InvalidAutomaton("La procedencia no cubre los estados del APTA")
    owner = {m: s for s, members in acceptor.provenance.items() for m in members}
    rejecting_images = [owner[v] for v in apta.rejecting]
    if len(set(rejecting_images)) != len(rejecting_images):
        raise InvalidAutomaton("Dos estados rechazantes del APTA comparten estado")
    for member, state in owner.items():
        if apta.state_class(member) != acceptor.state_class(state):
            raise InvalidAutomaton(f"El estado {member} del APTA cambia de clase en {state}")


def classify(acceptor: Union[ThreeDfa, Apta], word: Sequence[int]) -> Classification:
    """Clasificación +/-/? de una palabra; una transición ausente da indiferente"""
    state = acceptor.run(word)
    if state is None:
        return Classification.DONT_CARE
    return acceptor.state_class(state)


def dfa_accepts(dfa: Dfa, word: Sequence[int]) -> bool:
    return dfa.run(word) in dfa.accepting


def decomposition_accepts(decomposition: Decomposition, word: Sequence[int]) -> bool:
    """Palabra aceptada si y sólo si todos los DFA la aceptan"""
    return all(dfa_accepts(dfa, word) for dfa in decomposition.dfas)


def verify_consistency(decomposition: Decomposition, samples: LabeledSamples) -> ConsistencyVerdict:
    """
    Consistencia: cada positiva aceptada por todos los DFA, cada negativa rechazada por
    al menos uno. Devuelve la primera violación en orden de muestra.
    """
    for word, label in samples.labeled_words():
        accepted = decomposition_accepts(decomposition, word)
        if label and not accepted:
            return ConsistencyVerdict(False, word, ViolationKind.POSITIVE_REJECTED)
        if not label and accepted:
            return ConsistencyVerdict(False, word, ViolationKind.NEGATIVE_ACCEPTED)
    return ConsistencyVerdict(True)


def verify_against_acceptor(decomposition: Decomposition,
                            acceptor: Union[ThreeDfa, Apta]) -> ConsistencyVerdict:
    """
    Comprueba la consistencia recorriendo el producto aceptor × DFAs.

    Los caminos desde el estado inicial del aceptor son exactamente las
    palabras de S (y sus prefijos), así que basta revisar los pares alcanzados.
    """
    start = (acceptor.initial, tuple(d.initial for d in decomposition.dfas))
    stack: List[Tuple[Tuple[int, Tuple[int, ...]], Word]] = [(start, ())]
    seen = {start}
    while stack:
        (state, tracks), word = stack.pop()
        accepted = all(t in d.accepting for t, d in zip(tracks, decomposition.dfas))
        if state in acceptor.accepting and not accepted:
            return ConsistencyVerdict(False, word, ViolationKind.POSITIVE_REJECTED)
        if state in acceptor.rejecting and accepted:
            return ConsistencyVerdict(False, word, ViolationKind.NEGATIVE_ACCEPTED)
        for letter, target in acceptor.successors(state).items():
            pair = (target, tuple(d.step(t, letter) for t, d in zip(tracks, decomposition.dfas)))
            if pair not in seen:
                seen.add(pair)
                stack.append((pair, word + (letter,)))
    return ConsistencyVerdict(True)
