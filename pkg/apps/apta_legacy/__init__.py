"""
Codificación SAT clásica vía APTA (referencia de comparación)
"""

__version__ = "1.0.0"
