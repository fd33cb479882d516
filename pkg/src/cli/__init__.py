"""
Módulo de la CLI del simulador.
Contiene el grupo de comandos click 'mc-papr'.
"""

from .commands import cli

__all__ = [
    "cli",
]
