"""
Codificación SAT clásica sobre el APTA (restricciones 1-9), usada como
referencia de comparación frente a la codificación sobre 3DFA.
"""

from typing import Optional, Tuple

from core.base.automata_base import Apta
from core.base.encoder_base import (
    ClauseBuilder,
    EncoderBase,
    allocate_core_vars,
    allocate_selectors,
    at_most_one_color,
    completeness_clauses,
    determinism_clauses,
    negative_selector_clauses,
)
from core.config.app_config import APTA_LEGACY_CONFIG
from core.utils.errors import EncodingError


class AptaLegacyEncoder(EncoderBase):
    """Variables x (colores de nodos), y (= e, transiciones) y z (aceptación)"""

    kind = 'apta_legacy'

    def __init__(self, config: Optional[dict] = None):
        super().__init__(config or APTA_LEGACY_CONFIG)

    def build(self, builder: ClauseBuilder, apta: Apta, allocation: Tuple[int, ...]) -> None:
        if not isinstance(apta, Apta):
            raise EncodingError(f"La codificación clásica requiere un Apta, no {type(apta).__name__}")
        vm = builder.var_map
        n = len(allocation)
        nodes = apta.states
        positives = sorted(apta.accepting)
        negatives = sorted(apta.rejecting)
        non_root = [v for v in nodes if v != apta.initial]

        allocate_core_vars(vm, nodes)
        allocate_selectors(vm, negatives)

        # 0: la raíz toma el color 1 en cada DFA
        for k in range(1, n + 1):
            builder.add('0', [vm.x(k, apta.initial, 1)])

        # 1: positivos aceptados por todos los DFA
        for v in positives:
            for k in range(1, n + 1):
                for i in vm.states(k):
                    builder.add('1', [-vm.x(k, v, i), vm.z(k, i)])

        # 2: negativos rechazados por al menos un DFA (selectores)
        builder.extend('2', negative_selector_clauses(vm, negatives))

        # 3: al menos un color por DFA
        for v in nodes:
            for k in range(1, n + 1):
                builder.add('3', [vm.x(k, v, i) for i in vm.states(k)])

        # 4: padre e hijo coloreados fijan la transición
        for v in non_root:
            parent, letter = apta.parents[v]
            for k in range(1, n + 1):
                for i in vm.states(k):
                    for j in vm.states(k):
                        builder.add('4', [-vm.x(k, parent, i), -vm.x(k, v, j), vm.e(k, letter, i, j)])

        builder.extend('5', determinism_clauses(vm))
        builder.extend('6', at_most_one_color(vm, nodes))
        builder.extend('7', completeness_clauses(vm))

        # 8: color del padre y transición fijan el color del hijo
        for v in non_root:
            parent, letter = apta.parents[v]
            for k in range(1, n + 1):
                for i in vm.states(k):
                    for j in vm.states(k):
                        builder.add('8', [-vm.x(k, parent, i), -vm.e(k, letter, i, j), vm.x(k, v, j)])

        # 9: un nodo negativo con color no aceptador excluye ese color a los positivos
        for neg in negatives:
            for pos in positives:
                for k in range(1, n + 1):
                    for i in vm.states(k):
                        builder.add('9', [-vm.x(k, neg, i), vm.z(k, i), -vm.x(k, pos, i)])


def encode_apta_legacy(apta: Apta, allocation, symmetry: bool = True):
    return AptaLegacyEncoder().encode(apta, allocation, symmetry)
