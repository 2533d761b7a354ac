"""
Codificación SAT vía 3DFA (reducción hacia atrás del APTA)
"""

__version__ = "1.0.0"
