"""
Paquete de configuración: codificaciones, solver, benchmarks y constantes.
"""

from .app_config import (
    THREE_DFA_CONFIG,
    APTA_LEGACY_CONFIG,
    COMMON_CONFIG,
    get_config,
    get_available_encoders,
    validate_config,
    normalize_encoder_name,
    solver_config_from_options,
)
from .constants import (
    EXIT_CODES,
    SAMPLE_FORMATS,
    LOGGING_CONFIG,
    ERROR_MESSAGES,
)

__all__ = [
    'THREE_DFA_CONFIG',
    'APTA_LEGACY_CONFIG',
    'COMMON_CONFIG',
    'get_config',
    'get_available_encoders',
    'validate_config',
    'normalize_encoder_name',
    'solver_config_from_options',
    'EXIT_CODES',
    'SAMPLE_FORMATS',
    'LOGGING_CONFIG',
    'ERROR_MESSAGES',
]
