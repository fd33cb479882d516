"""
Configuración de la aplicación usando Pydantic Settings.
Maneja variables de entorno y configuraciones por defecto del simulador.
"""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Constantes para configuración por defecto
DEFAULT_LOG_FORMAT = "%(asctime)s - 📡 %(message)s"
ALLOWED_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseSettings):
    """
    Configuración global del simulador.
    Las variables de entorno usan el prefijo MC_PAPR_ (por ejemplo MC_PAPR_WORKERS=8).
    """

    # ==========================================
    # CONFIGURACIÓN GENERAL
    # ==========================================
    app_name: str = Field(default="MC-CDMA PAPR Lab", description="Nombre de la aplicación")
    app_version: str = Field(default="1.0.0", description="Versión de la aplicación")

    # ==========================================
    # CONFIGURACIÓN DE LOGGING
    # ==========================================
    log_level: str = Field(default="INFO", description="Nivel de logging")
    log_format: str = Field(default=DEFAULT_LOG_FORMAT, description="Formato de logs")
    log_datefmt: str = Field(default="%H:%M:%S", description="Formato de hora de los logs")

    # ==========================================
    # CONFIGURACIÓN DE EJECUCIÓN
    # ==========================================
    workers: int = Field(default=4, description="Workers para repartir los ensayos")
    output_dir: Path = Field(default=Path("results"), description="Directorio por defecto de los CSV")
    default_seed: int = Field(default=0, description="Semilla maestra por defecto")

    model_config = SettingsConfigDict(
        env_prefix="MC_PAPR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # Ignorar campos extra en lugar de rechazarlos
        validate_assignment=True,
    )

    # ==========================================
    # VALIDADORES
    # ==========================================
    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        """Validar nivel de logging."""
        if v.upper() not in ALLOWED_LOG_LEVELS:
            raise ValueError(f'Log level must be one of: {", ".join(ALLOWED_LOG_LEVELS)}')
        return v.upper()

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v):
        """Validar número de workers."""
        if v < 1:
            raise ValueError("Workers must be at least 1")
        return v

    @field_validator("default_seed")
    @classmethod
    def validate_seed(cls, v):
        """Validar semilla."""
        if v < 0:
            raise ValueError("Seed must be non-negative")
        return v


# Instancia global de configuración
settings = Settings()


def get_settings() -> Settings:
    """
    Obtener instancia de configuración.

    Returns:
        Configuración de la aplicación
    """
    return settings


def get_workers() -> int:
    """
    Obtener número de workers por defecto.

    Returns:
        Workers configurados
    """
    return settings.workers
