"""
Configuración de logging del simulador.
Un único handler sobre el logger 'mc_papr'; los módulos usan loggers hijos.
"""

import logging
from typing import Optional

from .settings import Settings, get_settings

ROOT_LOGGER_NAME = "mc_papr"


def configure_logging(settings: Optional[Settings] = None, level: Optional[str] = None) -> logging.Logger:
    """
    Configurar el logger raíz del simulador.

    Args:
        settings: Configuración a usar (por defecto la global)
        level: Nivel que sustituye al de la configuración

    Returns:
        Logger 'mc_papr' configurado
    """
    settings = settings or get_settings()
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel((level or settings.log_level).upper())

    # Un solo handler, ligado al stderr actual aunque se configure varias veces
    for old_handler in list(logger.handlers):
        logger.removeHandler(old_handler)
    handler = logging.StreamHandler()
    formatter = logging.Formatter(settings.log_format, datefmt=settings.log_datefmt)
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.propagate = False
    return logger


def get_logger(area: str) -> logging.Logger:
    """
    Obtener logger hijo para un área del simulador.

    Args:
        area: Nombre corto del área (por ejemplo 'experiments')

    Returns:
        Logger 'mc_papr.<area>'
    """
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{area}")
