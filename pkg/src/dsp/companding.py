"""
Compansión ley μ de la señal multiportadora en el dominio del tiempo.
Compresión en el transmisor y expansión inversa en el receptor, conservando la fase.
"""

from typing import Optional

import numpy as np

from src.errors import DegenerateInputError
from src.schemas.signals import TimeFrame
from src.schemas.system import CompanderParams


def compress_magnitude(magnitude: np.ndarray, params: CompanderParams) -> np.ndarray:
    """|v| = s·ln(1 + μ|p|/s) / ln(1 + μ)."""
    mu, s = params.mu, params.s
    return s * np.log1p(mu * magnitude / s) / np.log1p(mu)


def expand_magnitude(magnitude: np.ndarray, params: CompanderParams) -> np.ndarray:
    """|Q| = (s/μ)·(exp(|r|·ln(1 + μ)/s) - 1)."""
    mu, s = params.mu, params.s
    return (s / mu) * np.expm1(magnitude * np.log1p(mu) / s)


def _apply_to_magnitude(samples: np.ndarray, law) -> np.ndarray:
    magnitude = np.abs(samples)
    scaled = law(magnitude)
    out = np.zeros_like(samples)
    nonzero = magnitude > 0
    out[nonzero] = samples[nonzero] * (scaled[nonzero] / magnitude[nonzero])
    return out


def average_amplitude(frame: TimeFrame) -> float:
    """
    Amplitud media s = mean|p(n)| de la trama.

    Args:
        frame: Trama de entrada

    Returns:
        Amplitud media positiva

    Raises:
        DegenerateInputError: Si la trama es todo ceros
    """
    s = float(np.mean(np.abs(frame.samples)))
    if s <= 0:
        raise DegenerateInputError("La compansión no está definida para una trama nula")
    return s


def mu_compress(frame: TimeFrame, params: CompanderParams, renormalize: bool = False) -> TimeFrame:
    """
    Comprimir la magnitud de cada muestra con la ley μ.

    Args:
        frame: Trama p(n)
        params: μ y amplitud media s
        renormalize: Reescalar para que E|v|² = E|p|²

    Returns:
        Trama v(n) con amplitude_ref = s y la ganancia de potencia aplicada
    """
    compressed = _apply_to_magnitude(frame.samples, lambda m: compress_magnitude(m, params))
    gain = 1.0
    if renormalize:
        gain = renormalization_gain(frame.samples, compressed)
        compressed = compressed * gain
    return frame.model_copy(update={"samples": compressed, "amplitude_ref": params.s, "power_gain": gain})


def mu_expand(frame: TimeFrame, params: CompanderParams, power_gain: Optional[float] = None) -> TimeFrame:
    """
    Expandir la trama recibida con la ley μ inversa.

    Args:
        frame: Trama r(n)
        params: Los mismos μ y s usados al comprimir
        power_gain: Ganancia de renormalización a deshacer (por defecto la de la trama)

    Returns:
        Trama Q(n) con power_gain = 1
    """
    gain = frame.power_gain if power_gain is None else power_gain
    samples = frame.samples / gain
    expanded = _apply_to_magnitude(samples, lambda m: expand_magnitude(m, params))
    return frame.model_copy(update={"samples": expanded, "power_gain": 1.0})


def renormalization_gain(original: np.ndarray, companded: np.ndarray) -> float:
    """
    Factor de amplitud que iguala la potencia media de la trama companda a la original.

    Raises:
        DegenerateInputError: Si la trama companda es nula
    """
    companded_power = float(np.mean(np.abs(companded) ** 2))
    if companded_power <= 0:
        raise DegenerateInputError("No se puede renormalizar una trama nula")
    return float(np.sqrt(np.mean(np.abs(original) ** 2) / companded_power))
