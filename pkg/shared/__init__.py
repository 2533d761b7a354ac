"""Recursos compartidos entre codificaciones: plantillas de exportación"""
from pathlib import Path

TEMPLATES_DIR = Path(__file__).parent / "templates"

__all__ = ['TEMPLATES_DIR']
