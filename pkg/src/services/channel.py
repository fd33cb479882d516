"""
Servicio de canal: ideal, AWGN y Rayleigh plano con AWGN.
La aleatoriedad llega siempre como un numpy Generator derivado de una semilla.
"""

import math
from typing import List, Optional, Sequence

import numpy as np

from src.schemas import ChannelKind, ChannelSpec, TimeFrame


def noise_variance(signal_power: float, snr_db: float) -> float:
    """
    Varianza del ruido complejo para una SNR por muestra.

    Args:
        signal_power: Potencia media de la señal
        snr_db: SNR en dB (+inf = sin ruido)

    Returns:
        Varianza total (parte real + imaginaria)
    """
    if math.isinf(snr_db):
        return 0.0
    return signal_power / (10 ** (snr_db / 10))


def complex_gaussian(rng: np.random.Generator, size, variance: float = 1.0) -> np.ndarray:
    """Ruido gaussiano complejo circular de varianza total dada."""
    scale = np.sqrt(variance / 2)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def rayleigh_gain(rng: np.random.Generator) -> complex:
    """Coeficiente plano h con |h| Rayleigh (E|h|² = 1) y fase uniforme."""
    return complex(complex_gaussian(rng, None, 1.0))


def apply_channel(
    frame: TimeFrame,
    spec: ChannelSpec,
    rng: Optional[np.random.Generator] = None,
) -> TimeFrame:
    """
    Pasar una trama por el canal.

    La varianza del ruido se calcula con la potencia de la trama que entra al canal
    (antes del desvanecimiento). En Rayleigh el coeficiente h queda registrado en la
    trama para la ecualización ideal del receptor.

    Args:
        frame: Trama transmitida
        spec: Modelo de canal y SNR
        rng: Generador aleatorio (por defecto uno nuevo con spec.seed)

    Returns:
        Trama recibida
    """
    if spec.kind is ChannelKind.IDEAL:
        return frame
    rng = rng if rng is not None else np.random.default_rng(spec.seed)

    samples = frame.samples
    power = float(np.mean(np.abs(samples) ** 2))
    gain = 1 + 0j
    if spec.kind is ChannelKind.RAYLEIGH_AWGN:
        gain = rayleigh_gain(rng)
        samples = samples * gain

    variance = noise_variance(power, spec.snr_db)
    if variance > 0:
        samples = samples + complex_gaussian(rng, samples.shape, variance)
    return frame.model_copy(update={"samples": samples, "channel_gain": frame.channel_gain * gain})


def apply_channel_frames(
    frames: Sequence[TimeFrame],
    spec: ChannelSpec,
    rng: Optional[np.random.Generator] = None,
) -> List[TimeFrame]:
    """
    Pasar una secuencia de tramas por el canal con un único flujo aleatorio.

    Args:
        frames: Tramas en orden
        spec: Modelo de canal
        rng: Generador compartido por todas las tramas

    Returns:
        Tramas recibidas en el mismo orden
    """
    rng = rng if rng is not None else np.random.default_rng(spec.seed)
    return [apply_channel(frame, spec, rng) for frame in frames]
