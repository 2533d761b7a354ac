"""
Codificación SAT sobre el 3DFA reducido.
Simplificada usando la base común de codificaciones.
"""

from typing import Optional, Tuple

from core.base.automata_base import ThreeDfa
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
from core.config.app_config import THREE_DFA_CONFIG
from core.utils.errors import EncodingError


class ThreeDfaEncoder(EncoderBase):
    """Restricciones D1-D2, R1-R2, T1-T3 y O1' sobre un ThreeDfa"""

    kind = 'three_dfa'

    def __init__(self, config: Optional[dict] = None):
        super().__init__(config or THREE_DFA_CONFIG)

    def build(self, builder: ClauseBuilder, acceptor: ThreeDfa, allocation: Tuple[int, ...]) -> None:
        if not isinstance(acceptor, ThreeDfa):
            raise EncodingError(f"La codificación 3DFA requiere un ThreeDfa, no {type(acceptor).__name__}")
        vm = builder.var_map
        n = len(allocation)

        allocate_core_vars(vm, acceptor.states)
        allocate_selectors(vm, acceptor.rejecting)

        builder.extend('D1', determinism_clauses(vm))
        builder.extend('D2', completeness_clauses(vm))

        for v in sorted(acceptor.accepting):
            for k in range(1, n + 1):
                for i in vm.states(k):
                    builder.add('R1', [-vm.x(k, v, i), vm.z(k, i)])
        builder.extend('R2', negative_selector_clauses(vm, acceptor.rejecting))

        for k in range(1, n + 1):
            builder.add('T1', [vm.x(k, acceptor.initial, 1)])

        for v in acceptor.states:
            for k in range(1, n + 1):
                builder.add('T2', [vm.x(k, v, i) for i in vm.states(k)])

        # Sólo letras con transición saliente en el 3DFA
        for v in acceptor.states:
            for letter, target in acceptor.successors(v).items():
                for k in range(1, n + 1):
                    for i in vm.states(k):
                        for j in vm.states(k):
                            builder.add('T3', [-vm.x(k, v, i), -vm.e(k, letter, i, j), vm.x(k, target, j)])

        unmerged = [v for v in acceptor.states if v not in acceptor.merged]
        builder.extend("O1'", at_most_one_color(vm, unmerged))


def encode_3dfa(acceptor: ThreeDfa, allocation, symmetry: bool = True):
    return ThreeDfaEncoder().encode(acceptor, allocation, symmetry)
