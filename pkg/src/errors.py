"""
Jerarquía de excepciones del simulador.
Cada error lleva el código de salida que usa la CLI.
"""


class SimulationError(Exception):
    """
    Error base del simulador MC-CDMA.
    """

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class SizingError(SimulationError, ValueError):
    """Longitudes incompatibles: potencias de dos, niveles DWT, prefijo cíclico."""


class DegenerateInputError(SimulationError, ValueError):
    """Entrada sin contenido útil (trama nula, lista vacía, muy pocas muestras)."""


class ConfigError(SimulationError):
    """Configuración inválida o archivo de configuración ilegible."""

    exit_code = 2


class OutputError(SimulationError):
    """No se pudo escribir el resultado."""

    exit_code = 3
