"""
Schemas Pydantic para planes de experimento.
Define los esquemas comparados y el ExperimentPlan que consume la CLI.
"""

from enum import Enum
from pathlib import Path
from typing import List, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.schemas.system import ChannelKind, Precoder, SystemConfig

DEFAULT_MUS = [2.0, 3.0, 5.0]
DEFAULT_SNR_DB = [-22.0, -20.0, -18.0, -16.0, -14.0, -12.0, -10.0]


def split_list(v):
    """
    Aceptar listas separadas por comas además de listas nativas.

    Args:
        v: Valor crudo del archivo de configuración o de la CLI

    Returns:
        Lista de elementos sin espacios
    """
    if isinstance(v, str):
        return [item.strip() for item in v.split(",") if item.strip()]
    return v


class ExperimentKind(str, Enum):
    """Experimentos disponibles."""
    CCDF = "ccdf"
    PSD = "psd"
    BER = "ber"
    SUMMARY = "summary"


class Scheme(str, Enum):
    """
    Sistemas comparados: original, compansión, DCT+compansión, DWT+compansión
    y las variantes solo con precodificación.
    """
    ORIGINAL = "original"
    COMPANDING = "companding"
    DCT_COMPANDING = "dct+companding"
    DWT_COMPANDING = "dwt+companding"
    DCT = "dct"
    DWT = "dwt"

    @property
    def precoder(self) -> Precoder:
        if self in (Scheme.DCT, Scheme.DCT_COMPANDING):
            return Precoder.DCT
        if self in (Scheme.DWT, Scheme.DWT_COMPANDING):
            return Precoder.DWT
        return Precoder.NONE

    @property
    def companded(self) -> bool:
        return self in (Scheme.COMPANDING, Scheme.DCT_COMPANDING, Scheme.DWT_COMPANDING)

    def label(self, mu: Optional[float] = None) -> str:
        """
        Nombre de columna CSV del esquema.

        Args:
            mu: Factor de compansión (ignorado si el esquema no compande)

        Returns:
            Etiqueta como 'original', 'comp_mu2' o 'dwt_mu5'
        """
        if not self.companded:
            return self.value
        prefix = {
            Scheme.COMPANDING: "comp",
            Scheme.DCT_COMPANDING: "dct",
            Scheme.DWT_COMPANDING: "dwt",
        }[self]
        return f"{prefix}_mu{mu:g}"


class SchemeColumn(NamedTuple):
    """Columna de salida: etiqueta, esquema y μ."""
    label: str
    scheme: Scheme
    mu: Optional[float]


class ExperimentPlan(BaseModel):
    """
    Plan de experimento: configuración base, esquemas, valores de μ y rejillas.
    """
    experiment: ExperimentKind = Field(description="Experimento a ejecutar")
    system: SystemConfig = Field(default_factory=SystemConfig, description="Configuración base")
    schemes: List[Scheme] = Field(
        default_factory=lambda: [Scheme.ORIGINAL, Scheme.COMPANDING, Scheme.DCT_COMPANDING, Scheme.DWT_COMPANDING],
        description="Esquemas comparados",
    )
    mus: List[float] = Field(default_factory=lambda: list(DEFAULT_MUS), description="Valores de μ")
    threshold_start: float = Field(default=0.0, description="Primer umbral CCDF en dB")
    threshold_stop: float = Field(default=20.0, description="Último umbral CCDF en dB")
    threshold_step: float = Field(default=0.1, gt=0, description="Paso de la rejilla CCDF en dB")
    snr_db: List[float] = Field(default_factory=lambda: list(DEFAULT_SNR_DB), description="Rejilla de SNR por muestra")
    channel: ChannelKind = Field(default=ChannelKind.AWGN, description="Canal del experimento BER")
    trials: int = Field(default=20, ge=1, description="Bloques de n_symbols tramas por esquema")
    workers: Optional[int] = Field(default=None, ge=1, description="Workers (None = configuración global)")
    psd_segment: int = Field(default=256, description="Longitud de segmento Welch")
    psd_overlap: float = Field(default=0.5, ge=0, lt=1, description="Solape Welch")
    target_ccdf: float = Field(default=1e-2, gt=0, lt=1, description="Probabilidad CCDF del resumen")
    output: Optional[Path] = Field(default=None, description="Ruta del CSV de salida")

    @field_validator("schemes", "mus", "snr_db", mode="before")
    @classmethod
    def validate_lists(cls, v):
        """Aceptar listas separadas por comas."""
        return split_list(v)

    @field_validator("mus")
    @classmethod
    def validate_mus(cls, v):
        """Validar valores de μ."""
        if not v:
            raise ValueError("La lista de μ no puede estar vacía")
        if any(mu <= 0 for mu in v):
            raise ValueError("Todos los valores de μ deben ser positivos")
        return v

    @field_validator("schemes")
    @classmethod
    def validate_schemes(cls, v):
        """Validar lista de esquemas."""
        if not v:
            raise ValueError("La lista de esquemas no puede estar vacía")
        return list(dict.fromkeys(v))

    @model_validator(mode="after")
    def validate_grids(self):
        """Validar rejillas."""
        if self.threshold_stop <= self.threshold_start:
            raise ValueError("threshold_stop must be greater than threshold_start")
        if self.psd_segment < 2 or self.psd_segment & (self.psd_segment - 1):
            raise ValueError("psd_segment must be a power of two")
        if self.experiment is ExperimentKind.BER and not self.snr_db:
            raise ValueError("snr_db must not be empty for BER runs")
        return self

    def thresholds(self) -> np.ndarray:
        """Rejilla de umbrales CCDF en dB (incluye ambos extremos)."""
        grid = np.arange(self.threshold_start, self.threshold_stop + self.threshold_step / 2, self.threshold_step)
        return np.round(grid, 10)

    def columns(self) -> List[SchemeColumn]:
        """
        Columnas de salida ordenadas por esquema y luego por μ.

        Returns:
            Lista de columnas sin duplicados
        """
        result: List[SchemeColumn] = []
        for scheme in self.schemes:
            if scheme.companded:
                result.extend(SchemeColumn(scheme.label(mu), scheme, mu) for mu in self.mus)
            else:
                result.append(SchemeColumn(scheme.label(), scheme, None))
        return result

    def system_for(self, column: SchemeColumn) -> SystemConfig:
        """
        Configuración del sistema para una columna.

        Args:
            column: Columna del plan

        Returns:
            SystemConfig con precodificador y compander del esquema
        """
        overrides = {"precoder": column.scheme.precoder, "compander": column.scheme.companded}
        if column.mu is not None:
            overrides["mu"] = column.mu
        return self.system.with_overrides(**overrides)
