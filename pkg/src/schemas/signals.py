"""
Schemas Pydantic para las señales del transceptor.
Vectores complejos, bloques de símbolos, secuencias de chips y tramas temporales.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.errors import DegenerateInputError
from src.schemas.system import CodeFamily, Modulation

ARRAY_CONFIG = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def as_complex_vector(values, name: str = "vector") -> np.ndarray:
    """
    Convertir una secuencia en ComplexVector: 1-D, complex128, no vacío y finito.

    Args:
        values: Secuencia o array de entrada
        name: Nombre usado en los mensajes de error

    Returns:
        Array complejo de una dimensión

    Raises:
        DegenerateInputError: Si está vacío o contiene NaN/Inf
    """
    vector = np.asarray(values, dtype=np.complex128)
    if vector.ndim != 1:
        vector = vector.reshape(-1)
    if vector.size == 0:
        raise DegenerateInputError(f"{name} no puede estar vacío")
    if not np.all(np.isfinite(vector)):
        raise DegenerateInputError(f"{name} contiene valores no finitos")
    return vector


class SymbolBlock(BaseModel):
    """
    Símbolos de constelación a_k(n) de un usuario.
    """
    model_config = ARRAY_CONFIG

    symbols: np.ndarray = Field(description="Símbolos complejos")
    modulation: Modulation = Field(description="Constelación de origen")

    @field_validator("symbols", mode="before")
    @classmethod
    def validate_symbols(cls, v):
        """Validar símbolos."""
        return as_complex_vector(v, "symbols")

    def __len__(self) -> int:
        return int(self.symbols.size)


class ChipSequence(BaseModel):
    """
    Código de ensanchamiento c_k con chips en {+1, -1}.
    """
    model_config = ARRAY_CONFIG

    chips: np.ndarray = Field(description="Chips bipolares")
    family: CodeFamily = Field(description="Familia del código")

    @field_validator("chips", mode="before")
    @classmethod
    def validate_chips(cls, v):
        """Validar que todos los chips sean +1 o -1."""
        chips = np.asarray(v, dtype=np.int8).reshape(-1)
        if chips.size == 0:
            raise ValueError("La secuencia de chips no puede estar vacía")
        if not np.all(np.abs(chips) == 1):
            raise ValueError("Todos los chips deben ser +1 o -1")
        return chips

    def __len__(self) -> int:
        return int(self.chips.size)


class TimeFrame(BaseModel):
    """
    Símbolo multiportadora en banda base (con o sin prefijo cíclico).

    Además de las muestras transporta la información lateral que el receptor
    conoce por configuración: amplitud de referencia del compander, ganancia de
    renormalización y coeficiente del canal plano.
    """
    model_config = ARRAY_CONFIG

    samples: np.ndarray = Field(description="Muestras complejas p(n)/v(n)/r(n)")
    cp_len: int = Field(default=0, ge=0, description="Muestras de prefijo cíclico al inicio")
    index: int = Field(default=0, ge=0, description="Índice del símbolo en la secuencia")
    amplitude_ref: Optional[float] = Field(default=None, description="Amplitud media s usada al comprimir")
    power_gain: float = Field(default=1.0, gt=0, description="Ganancia de renormalización aplicada")
    channel_gain: complex = Field(default=1 + 0j, description="Coeficiente h del canal plano")

    @field_validator("samples", mode="before")
    @classmethod
    def validate_samples(cls, v):
        """Validar muestras."""
        return as_complex_vector(v, "samples")

    @property
    def body(self) -> np.ndarray:
        """Muestras sin prefijo cíclico."""
        return self.samples[self.cp_len:]

    def __len__(self) -> int:
        return int(self.samples.size)
