"""
Carga de planes de experimento desde archivos 'clave = valor'.
El archivo se lee con python-dotenv y se valida con los schemas Pydantic.
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import ValidationError

from src.errors import ConfigError
from src.schemas import ExperimentKind, ExperimentPlan, SystemConfig

from .settings import get_settings

PLAN_KEYS = set(ExperimentPlan.model_fields) - {"experiment", "system"}
SYSTEM_KEYS = set(SystemConfig.model_fields)


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Leer un archivo de configuración 'clave = valor'.

    Args:
        path: Ruta del archivo

    Returns:
        Diccionario con claves en minúsculas

    Raises:
        ConfigError: Si el archivo no existe o alguna línea no tiene valor
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"No se encuentra el archivo de configuración: {path}")

    raw = dotenv_values(path, encoding="utf-8")
    values: Dict[str, str] = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigError(f"La clave '{key}' no tiene valor en {path}")
        values[key.strip().lower()] = value.strip()
    return values


def _format_validation_error(exc: ValidationError) -> str:
    """Resumir el primer error de validación en una línea."""
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "config"
    return f"{location}: {first.get('msg', 'valor inválido')}"


def _coerce(key: str, value: Any) -> Any:
    # Polinomios en hexadecimal o binario (0x89, 0b1011)
    if key.endswith("_taps") and isinstance(value, str):
        try:
            return int(value, 0)
        except ValueError:
            raise ConfigError(f"Polinomio inválido en '{key}': {value}") from None
    return value


def build_plan(
    experiment: Union[str, ExperimentKind],
    values: Optional[Mapping[str, Any]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentPlan:
    """
    Construir un ExperimentPlan a partir de valores de archivo y overrides de la CLI.

    Args:
        experiment: Experimento a ejecutar
        values: Valores leídos del archivo
        overrides: Valores de la CLI (los None se ignoran)

    Returns:
        Plan validado

    Raises:
        ConfigError: Si hay claves desconocidas o valores inválidos
    """
    merged: Dict[str, Any] = {"seed": get_settings().default_seed}
    merged.update(values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})

    unknown = sorted(set(merged) - PLAN_KEYS - SYSTEM_KEYS)
    if unknown:
        raise ConfigError(f"Claves de configuración desconocidas: {', '.join(unknown)}")

    system_values = {k: _coerce(k, v) for k, v in merged.items() if k in SYSTEM_KEYS}
    plan_values = {k: v for k, v in merged.items() if k in PLAN_KEYS}
    try:
        system = SystemConfig.model_validate(system_values)
        return ExperimentPlan.model_validate({"experiment": experiment, "system": system, **plan_values})
    except ValidationError as exc:
        raise ConfigError(f"Configuración inválida - {_format_validation_error(exc)}") from exc


def load_plan(
    experiment: Union[str, ExperimentKind],
    config_path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentPlan:
    """
    Cargar un plan desde archivo (opcional) y aplicar overrides.

    Args:
        experiment: Experimento a ejecutar
        config_path: Archivo 'clave = valor' (None = valores por defecto)
        overrides: Valores de la CLI

    Returns:
        Plan validado
    """
    values = read_config_file(config_path) if config_path is not None else {}
    return build_plan(experiment, values, overrides)
