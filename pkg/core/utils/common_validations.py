"""
Validaciones comunes: asignaciones de estados, parámetros numéricos
y forma del JSON de descomposiciones.
"""

from typing import Any, Dict, List, Sequence, Tuple

from core.config.constants import ERROR_MESSAGES
from core.utils.errors import AllocationTooSmall, EmptyAllocation, EncodingError


def validate_allocation(allocation: Sequence[int]) -> Tuple[int, ...]:
    """
    Normaliza y valida una asignación de estados (m_1, ..., m_n).

    Returns:
        Tupla ascendente con cada m_i >= 2
    """
    allocation = tuple(int(m) for m in allocation)
    if not allocation:
        raise EmptyAllocation(ERROR_MESSAGES['empty_allocation'])
    if any(m < 2 for m in allocation):
        raise AllocationTooSmall(ERROR_MESSAGES['allocation_too_small'].format(allocation))
    if list(allocation) != sorted(allocation):
        raise EncodingError(ERROR_MESSAGES['allocation_not_sorted'].format(allocation))
    return allocation


def parse_allocation(text: str) -> Tuple[int, ...]:
    """'2,3' o '(2,3)' -> (2, 3), validado"""
    cleaned = text.strip().strip('()')
    if not cleaned:
        raise EmptyAllocation(ERROR_MESSAGES['empty_allocation'])
    try:
        parts = [int(p) for p in cleaned.split(',') if p.strip()]
    except ValueError:
        raise EncodingError(f"Asignación inválida: {text!r}")
    return validate_allocation(parts)


def validate_positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise ValueError(f"{name} debe ser >= {minimum} (recibido {value})")
    return value


class DecompositionJsonValidator:
    """Validador de la forma del JSON de una descomposición"""

    REQUIRED_DFA_FIELDS = ('num_states', 'initial', 'accepting', 'delta')

    def validate(self, data: Any) -> Tuple[bool, List[str]]:
        """
        Returns:
            Tuple (es_valido, lista_errores)
        """
        errors: List[str] = []
        if not isinstance(data, dict):
            return False, ["La raíz debe ser un objeto"]

        alphabet = data.get('alphabet')
        if not isinstance(alphabet, list) or not alphabet or not all(isinstance(a, str) for a in alphabet):
            errors.append("'alphabet' debe ser una lista no vacía de cadenas")
            alphabet = []

        dfas = data.get('dfas')
        if not isinstance(dfas, list) or not dfas:
            errors.append("'dfas' debe ser una lista no vacía")
            return False, errors

        for index, dfa in enumerate(dfas):
            errors.extend(self._validate_dfa(index, dfa, set(alphabet)))

        return len(errors) == 0, errors

    def _validate_dfa(self, index: int, dfa: Dict[str, Any], letters: set) -> List[str]:
        errors = []
        if not isinstance(dfa, dict):
            return [f"DFA {index}: debe ser un objeto"]
        missing = [f for f in self.REQUIRED_DFA_FIELDS if f not in dfa]
        if missing:
            return [f"DFA {index}: faltan campos {missing}"]

        num_states = dfa['num_states']
        if not isinstance(num_states, int) or num_states < 2:
            errors.append(f"DFA {index}: 'num_states' debe ser un entero >= 2")
        if dfa['initial'] != 1:
            errors.append(f"DFA {index}: 'initial' debe ser 1")
        if not isinstance(dfa['accepting'], list):
            errors.append(f"DFA {index}: 'accepting' debe ser una lista")
        if not isinstance(dfa['delta'], list):
            errors.append(f"DFA {index}: 'delta' debe ser una lista")
            return errors

        for edge in dfa['delta']:
            if not isinstance(edge, dict) or set(edge) != {'from', 'letter', 'to'}:
                errors.append(f"DFA {index}: transición mal formada {edge!r}")
            elif letters and edge['letter'] not in letters:
                errors.append(f"DFA {index}: letra desconocida {edge['letter']!r}")
        return errors
