"""
Configuraciones específicas para cada codificación (variante de encoder).
"""

import os
from typing import Optional

from core.config.constants import CLAUSE_GROUPS, SOLVER_ENV_VAR

THREE_DFA_CONFIG = {
    # Información de la codificación
    'nombre': 'three_dfa',
    'titulo': 'Codificación SAT vía 3DFA (restricciones D, R, T, O1\')',
    'cli_name': '3dfa',

    # Aceptor sobre el que trabaja
    'acceptor': 'three_dfa',
    'clause_groups': CLAUSE_GROUPS['three_dfa'],

    # Ruptura de simetrías activada por defecto (configuración recomendada)
    'symmetry': True,
}

APTA_LEGACY_CONFIG = {
    'nombre': 'apta_legacy',
    'titulo': 'Codificación SAT vía APTA (restricciones 1-9)',
    'cli_name': 'apta',

    'acceptor': 'apta',
    'clause_groups': CLAUSE_GROUPS['apta_legacy'],

    'symmetry': True,
}

# Configuración común para ambas codificaciones
COMMON_CONFIG = {
    'solver_config': {
        'mode': 'builtin',
        'external_path': None,
        'timeout_ms': None,
    },

    'search_config': {
        'min_states': 2,       # un DFA completo de 1 estado es trivial
        'jobs': 1,
    },

    'bench_config': {
        'generator': 'partial_order_tasks',
        'edge_probability': 0.5,
        'enumeration_limit': 200000,   # palabras enumerables para verificar cuotas
        'max_attempts_factor': 200,
        'target_min_states': 2,
        'target_max_states': 3,
        'target_redraws': 50,
    },

    'oracle_config': {
        'max_search_space': 10 ** 7,
    },

    'export_config': {
        'json_indent': 2,
    },
}

_CONFIGS = {
    'three_dfa': THREE_DFA_CONFIG,
    'apta_legacy': APTA_LEGACY_CONFIG,
}

# Alias aceptados en la línea de comandos
_ALIASES = {cfg['cli_name']: name for name, cfg in _CONFIGS.items()}


def normalize_encoder_name(encoder: str) -> str:
    """Traducir alias de CLI ('3dfa', 'apta') al nombre interno"""
    name = encoder.lower()
    return _ALIASES.get(name, name)


def get_config(encoder: str):
    """
    Obtiene la configuración para la codificación especificada.

    Args:
        encoder: 'three_dfa', 'apta_legacy' o sus alias '3dfa', 'apta'

    Returns:
        Diccionario con la configuración completa
    """
    name = normalize_encoder_name(encoder)

    if name not in _CONFIGS:
        raise ValueError(f"Codificación no soportada: {encoder}. Use 'three_dfa' o 'apta_legacy'")

    config = dict(_CONFIGS[name])

    # Agregar configuración común
    config['common'] = COMMON_CONFIG

    return config


def validate_config(config: dict) -> bool:
    """
    Valida que la configuración tenga los campos requeridos.
    """
    required_fields = ['nombre', 'titulo', 'acceptor', 'clause_groups', 'symmetry']

    for field in required_fields:
        if field not in config:
            raise ValueError(f"Campo requerido '{field}' no encontrado en configuración")

    return True


def get_available_encoders():
    """Lista de codificaciones disponibles"""
    return list(_CONFIGS)


def solver_config_from_options(mode: Optional[str] = None,
                               command: Optional[str] = None,
                               timeout_ms: Optional[int] = None):
    """
    Construye un SolverConfig a partir de las opciones del CLI.

    Si no se indica comando se usa la variable de entorno DFA_DECOMP_SOLVER;
    un comando presente sin modo explícito implica modo externo.
    """
    from core.utils.sat_backend import SolverConfig

    defaults = COMMON_CONFIG['solver_config']
    command = command or os.environ.get(SOLVER_ENV_VAR) or defaults['external_path']

    if mode is None:
        mode = 'external' if command else defaults['mode']

    if timeout_ms is None:
        timeout_ms = defaults['timeout_ms']

    return SolverConfig(mode=mode, external_path=command, timeout_ms=timeout_ms)
