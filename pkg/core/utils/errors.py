"""
Jerarquía de excepciones del proyecto.

Cada familia lleva un ``exit_code`` que el launcher traduce directamente
al código de salida del proceso.
"""

from typing import Optional


class DecompError(Exception):
    """Error base de la librería"""

    exit_code = 4

    def __init__(self, message: str, *, detail: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        if self.detail:
            return f"{self.message} ({self.detail})"
        return self.message


# Muestras etiquetadas
class SampleError(DecompError):
    exit_code = 1


class MalformedHeader(SampleError):
    pass


class UnknownSymbol(SampleError):
    pass


class ConflictingLabel(SampleError):
    pass


class EmptyInput(SampleError):
    pass


# Autómatas
class AutomatonError(DecompError):
    exit_code = 4


class InvalidAutomaton(AutomatonError):
    pass


class DecompositionFormatError(AutomatonError):
    exit_code = 1


# Archivos
class FileAccessError(DecompError):
    exit_code = 1


# Codificación
class EncodingError(DecompError):
    exit_code = 1


class AllocationTooSmall(EncodingError):
    pass


class EmptyAllocation(EncodingError):
    pass


class MalformedModel(EncodingError):
    exit_code = 4


# Solver
class SolverError(DecompError):
    exit_code = 3


class SolverCrashed(SolverError):
    pass


class OutputUnparseable(SolverError):
    pass


class SolverUnknown(SolverError):
    """El solver devolvió ``unknown`` (timeout o fallo); la búsqueda se aborta"""


# Búsqueda
class SearchError(DecompError):
    exit_code = 4


class ArityMismatch(SearchError):
    exit_code = 1


class InvalidBound(SearchError):
    exit_code = 1


class BoundExceeded(SearchError):
    pass


class InternalInconsistency(SearchError):
    pass


# Benchmarks / oráculo
class BenchError(DecompError):
    exit_code = 2


class InsufficientWords(BenchError):
    pass


class SearchSpaceTooLarge(BenchError):
    pass
