"""
Configuración de logging con colores (colorlog) y archivo rotativo opcional
"""

import logging
import logging.handlers
import sys
from typing import Optional

import colorlog

from core.config.constants import LOGGING_CONFIG

_ROOT_LOGGER = 'dfa_decomp'


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """
    Instala los handlers en el logger raíz.

    Args:
        level: nivel ('DEBUG', 'INFO', ...); por defecto LOGGING_CONFIG['level']
        log_file: ruta de archivo rotativo opcional

    Returns:
        Logger raíz configurado
    """
    level = (level or LOGGING_CONFIG['level']).upper()
    root = logging.getLogger()
    root.setLevel(level)

    # Evitar handlers duplicados si se llama dos veces (tests, CLI repetido)
    for handler in list(root.handlers):
        if getattr(handler, '_dfa_decomp', False):
            root.removeHandler(handler)

    stream = colorlog.StreamHandler(sys.stderr)
    stream.setFormatter(colorlog.ColoredFormatter(
        LOGGING_CONFIG['format'],
        log_colors=LOGGING_CONFIG['colors'],
    ))
    stream._dfa_decomp = True
    root.addHandler(stream)

    if log_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=LOGGING_CONFIG['max_bytes'],
            backupCount=LOGGING_CONFIG['backup_count'],
            encoding='utf-8',
        )
        file_handler.setFormatter(logging.Formatter(LOGGING_CONFIG['file_format']))
        file_handler._dfa_decomp = True
        root.addHandler(file_handler)

    return logging.getLogger(_ROOT_LOGGER)
