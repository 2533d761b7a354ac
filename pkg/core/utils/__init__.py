"""
Utilidades compartidas del proyecto

Módulos:
- errors: jerarquía de excepciones con códigos de salida
- logging_utils: configuración de logging (colorlog)
- common_validations: validación de asignaciones y JSON
- dimacs_utils, cdcl_solver, sat_backend: resolución SAT
- export_utils, file_utils: salidas DOT/JSON y archivos
"""

from .errors import DecompError
from .logging_utils import setup_logging

__all__ = ['DecompError', 'setup_logging']
