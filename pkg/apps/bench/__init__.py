"""
Benchmarks: generación de muestras, oráculo por enumeración y métricas
"""

__version__ = "1.0.0"
