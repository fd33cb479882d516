"""
Módulo de configuración del simulador.
Contiene settings, logging y la carga de planes de experimento.
"""

from .settings import (
    Settings,
    settings,
    get_settings,
    get_workers,
)

from .logging_config import (
    configure_logging,
    get_logger,
)

__all__ = [
    # Settings
    "Settings",
    "settings",
    "get_settings",
    "get_workers",

    # Logging
    "configure_logging",
    "get_logger",
]
