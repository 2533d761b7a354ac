"""
Utilidades para manejo de archivos de muestras, plantillas y salidas
"""

import json
import os
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Any, Iterator, Optional

from core.config.app_config import COMMON_CONFIG
from core.config.constants import ERROR_MESSAGES
from core.utils.errors import DecompositionFormatError, EmptyInput, FileAccessError
from shared import TEMPLATES_DIR


def read_text_file(path: str, encoding: str = 'utf-8') -> str:
    """
    Lee un archivo de texto de entrada

    Args:
        path: Ruta al archivo
        encoding: Codificación del archivo

    Returns:
        Contenido del archivo
    """
    try:
        with open(path, 'r', encoding=encoding) as file:
            return file.read()
    except FileNotFoundError:
        raise EmptyInput(ERROR_MESSAGES['file_not_found'].format(path))
    except UnicodeDecodeError as exc:
        raise EmptyInput(f"Error de codificación en {path}", detail=str(exc))
    except OSError as exc:
        raise FileAccessError(ERROR_MESSAGES['file_access'].format(path), detail=exc.strerror)


@contextmanager
def open_output(path: str, mode: str = 'w', **kwargs) -> Iterator[IO]:
    """Abre un archivo de salida; los fallos del sistema de archivos salen como FileAccessError"""
    try:
        ensure_parent_exists(path)
        handle = open(path, mode, **kwargs)
    except OSError as exc:
        raise FileAccessError(ERROR_MESSAGES['file_access'].format(path), detail=exc.strerror)
    with handle:
        try:
            yield handle
        except OSError as exc:
            raise FileAccessError(ERROR_MESSAGES['file_access'].format(path), detail=exc.strerror)


def write_text_file(content: str, output_path: str, encoding: str = 'utf-8') -> None:
    """Escribe texto con finales de línea LF, creando el directorio si hace falta"""
    with open_output(output_path, 'w', encoding=encoding, newline='\n') as file:
        file.write(content)


def read_json_file(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as file:
            return json.load(file)
    except FileNotFoundError:
        raise DecompositionFormatError(ERROR_MESSAGES['file_not_found'].format(path))
    except json.JSONDecodeError as exc:
        raise DecompositionFormatError(ERROR_MESSAGES['invalid_json'].format(exc))
    except OSError as exc:
        raise FileAccessError(ERROR_MESSAGES['file_access'].format(path), detail=exc.strerror)


def write_json_file(data: Any, output_path: str, indent: Optional[int] = None) -> None:
    if indent is None:
        indent = COMMON_CONFIG['export_config']['json_indent']
    write_text_file(json.dumps(data, indent=indent, ensure_ascii=False) + '\n', output_path)


def ensure_parent_exists(path: str) -> None:
    """
    Asegura que el directorio que contendrá el archivo existe

    Args:
        path: Ruta del archivo
    """
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(parent):
        os.makedirs(parent)


def get_template_path(filename: str) -> Path:
    """Ruta a una plantilla compartida (shared/templates)"""
    return TEMPLATES_DIR / filename
