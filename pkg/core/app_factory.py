"""
Factory centralizado para crear codificaciones y sus aceptores
Elimina duplicación entre el 3DFA y el APTA clásico
"""

from core.base.automata_base import build_apta, reduce_to_3dfa
from core.config.app_config import normalize_encoder_name


class EncoderFactory:
    """Factory para crear codificaciones SAT según su variante"""

    @staticmethod
    def create_encoder(kind: str):
        """
        Crear codificación según variante

        Args:
            kind: 'three_dfa' o 'apta_legacy' (o sus alias '3dfa', 'apta')

        Returns:
            Instancia de ThreeDfaEncoder o AptaLegacyEncoder
        """
        name = normalize_encoder_name(kind)
        if name == 'three_dfa':
            from apps.three_dfa.encoder import ThreeDfaEncoder
            return ThreeDfaEncoder()
        elif name == 'apta_legacy':
            from apps.apta_legacy.encoder import AptaLegacyEncoder
            return AptaLegacyEncoder()
        else:
            raise ValueError(f"Codificación no soportada: {kind}")

    @staticmethod
    def build_acceptor(kind: str, samples, numbering: str = 'insertion'):
        """Aceptor sobre el que trabaja la codificación: 3DFA reducido o APTA"""
        name = normalize_encoder_name(kind)
        apta = build_apta(samples, numbering)
        if name == 'three_dfa':
            return reduce_to_3dfa(apta)
        elif name == 'apta_legacy':
            return apta
        else:
            raise ValueError(f"Codificación no soportada: {kind}")


def encode(acceptor, allocation, encoder: str = 'three_dfa', symmetry: bool = True):
    """Atajo: codificar un aceptor con la variante indicada"""
    return EncoderFactory.create_encoder(encoder).encode(acceptor, allocation, symmetry)
