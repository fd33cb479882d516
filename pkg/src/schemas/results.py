"""
Schemas Pydantic para resultados de medición.
PAPR, tablas CCDF, estimaciones PSD y curvas BER.
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

THRESHOLD_DESCRIPTION = "Umbrales P0 en dB"


class PaprSample(BaseModel):
    """
    PAPR de una trama en dB.
    """
    model_config = ConfigDict(frozen=True)

    value_db: float = Field(ge=0, description="PAPR en dB")


class CcdfTable(BaseModel):
    """
    Tabla CCDF: probabilidad empírica de PAPR > P0 por esquema.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    thresholds_db: np.ndarray = Field(description=THRESHOLD_DESCRIPTION)
    columns: Dict[str, np.ndarray] = Field(default_factory=dict, description="Probabilidades por esquema")

    @field_validator("thresholds_db", mode="before")
    @classmethod
    def validate_thresholds(cls, v):
        """Validar rejilla de umbrales."""
        grid = np.asarray(v, dtype=float).reshape(-1)
        if grid.size == 0:
            raise ValueError("La rejilla de umbrales no puede estar vacía")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("Los umbrales deben ser estrictamente crecientes")
        return grid

    @model_validator(mode="after")
    def validate_columns(self):
        """Validar que cada columna sea una probabilidad no creciente."""
        for label, probs in self.columns.items():
            if probs.shape != self.thresholds_db.shape:
                raise ValueError(f"column {label} does not match the threshold grid")
            if np.any(probs < 0) or np.any(probs > 1):
                raise ValueError(f"column {label} is not a probability")
            if np.any(np.diff(probs) > 0):
                raise ValueError(f"column {label} must be non-increasing")
        return self

    @property
    def labels(self) -> List[str]:
        return list(self.columns)


class PsdEstimate(BaseModel):
    """
    Densidad espectral de potencia estimada por Welch.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    frequencies: np.ndarray = Field(description="Frecuencia normalizada (ciclos/muestra) en orden FFT")
    power: np.ndarray = Field(description="Densidad lineal por bin")
    density_db: np.ndarray = Field(description="Densidad en dB normalizada a pico 0 dB")
    label: str = Field(default="", description="Esquema")

    @model_validator(mode="after")
    def validate_bins(self):
        """Validar longitudes y finitud."""
        size = self.frequencies.size
        if self.power.size != size or self.density_db.size != size:
            raise ValueError("PSD arrays must share the bin count")
        if not (np.all(np.isfinite(self.power)) and np.all(np.isfinite(self.density_db))):
            raise ValueError("PSD values must be finite")
        return self

    @property
    def segment(self) -> int:
        return int(self.frequencies.size)


class BerCurve(BaseModel):
    """
    BER frente a SNR por esquema.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    snr_db: np.ndarray = Field(description="SNR por muestra en dB")
    ebn0_db: np.ndarray = Field(description="Eb/N0 equivalente en dB")
    columns: Dict[str, np.ndarray] = Field(default_factory=dict, description="BER por esquema")
    theory: Optional[np.ndarray] = Field(default=None, description="Curva teórica")


class PaprReduction(BaseModel):
    """
    Fila del resumen de reducción de PAPR a una probabilidad CCDF objetivo.
    """
    label: str = Field(description="Esquema")
    papr_db: float = Field(description="PAPR en la probabilidad objetivo")
    reduction_db: float = Field(description="Reducción frente al sistema original")
    extra_reduction_db: Optional[float] = Field(default=None, description="Reducción frente al esquema previo")
    out_of_band_db: Optional[float] = Field(default=None, description="Nivel medio fuera de banda")
    mean_amplitude: Optional[float] = Field(default=None, description="Amplitud media de trama")
