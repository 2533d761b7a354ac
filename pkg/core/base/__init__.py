"""
Clases base: muestras, autómatas, codificaciones y búsqueda
"""

from .samples_base import Alphabet, LabeledSamples
from .automata_base import Apta, ThreeDfa, Dfa, Decomposition
from .encoder_base import EncoderBase, CnfInstance, VarMap

__all__ = ['Alphabet', 'LabeledSamples', 'Apta', 'ThreeDfa', 'Dfa', 'Decomposition',
           'EncoderBase', 'CnfInstance', 'VarMap']
