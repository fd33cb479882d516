"""
Servicio de métricas: PAPR, CCDF, PSD de Welch y BER.
Incluye el acumulador CCDF asociativo que combinan los workers.
"""

from typing import Dict, Iterable, Optional, Sequence, Union

import numpy as np
from scipy.signal import welch
from scipy.special import erfc

from src.dsp.numerics import hann_window
from src.errors import DegenerateInputError, SizingError
from src.schemas import (
    CcdfTable,
    ChannelKind,
    Modulation,
    PaprSample,
    PsdEstimate,
    TimeFrame,
)

PaprValues = Union[Sequence[PaprSample], Sequence[float], np.ndarray]


# ===== PAPR =====

def papr_db(frame: TimeFrame) -> PaprSample:
    """
    PAPR de una trama: 10·log10(max|p|² / mean|p|²) sobre el cuerpo sin prefijo.

    Args:
        frame: Trama temporal

    Returns:
        PaprSample en dB

    Raises:
        DegenerateInputError: Si el cuerpo de la trama es nulo
    """
    return PaprSample(value_db=float(papr_db_batch(frame.body[None, :])[0]))


def papr_db_batch(bodies: np.ndarray) -> np.ndarray:
    """
    PAPR en dB de un lote de cuerpos de trama (M, N).

    Raises:
        DegenerateInputError: Si alguna trama es nula
    """
    power = np.abs(np.atleast_2d(bodies)) ** 2
    mean = power.mean(axis=-1)
    if np.any(mean <= 0):
        raise DegenerateInputError("El PAPR no está definido para una trama nula")
    # max >= mean siempre; el recorte absorbe el redondeo
    return np.maximum(10 * np.log10(power.max(axis=-1) / mean), 0.0)


def frame_paprs(frames: Iterable[TimeFrame]) -> np.ndarray:
    """PAPR en dB de cada trama, en orden."""
    bodies = [frame.body for frame in frames]
    if not bodies:
        return np.empty(0)
    return papr_db_batch(np.stack(bodies))


def _papr_array(samples: PaprValues) -> np.ndarray:
    values = [s.value_db if isinstance(s, PaprSample) else s for s in samples]
    return np.asarray(values, dtype=float).reshape(-1)


# ===== CCDF =====

def exceedance_counts(values: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Número de muestras con PAPR estrictamente mayor que cada umbral."""
    ordered = np.sort(np.asarray(values, dtype=float))
    return ordered.size - np.searchsorted(ordered, thresholds, side="right")


def ccdf(samples: PaprValues, thresholds: Sequence[float], label: str = "papr") -> CcdfTable:
    """
    CCDF empírica: fracción de muestras con PAPR > P0 para cada umbral.

    Args:
        samples: Muestras de PAPR (PaprSample o floats en dB)
        thresholds: Umbrales P0 en dB
        label: Nombre de la columna

    Returns:
        CcdfTable con una columna

    Raises:
        DegenerateInputError: Si no hay muestras
    """
    values = _papr_array(samples)
    if values.size == 0:
        raise DegenerateInputError("La CCDF necesita al menos una muestra")
    grid = np.asarray(thresholds, dtype=float)
    return CcdfTable(thresholds_db=grid, columns={label: exceedance_counts(values, grid) / values.size})


class CcdfAccumulator:
    """
    Acumulador de excedencias por columna.

    Guarda conteos enteros, por lo que merge es asociativo y conmutativo:
    el reparto de ensayos entre workers no cambia la tabla final.
    """

    def __init__(self, thresholds: Sequence[float]):
        self.thresholds = np.asarray(thresholds, dtype=float)
        self.counts: Dict[str, np.ndarray] = {}
        self.totals: Dict[str, int] = {}

    def add(self, label: str, values: PaprValues) -> None:
        """Sumar muestras de PAPR a una columna."""
        values = _papr_array(values)
        counts = exceedance_counts(values, self.thresholds)
        self.counts[label] = self.counts.get(label, np.zeros_like(counts)) + counts
        self.totals[label] = self.totals.get(label, 0) + values.size

    def merge(self, other: "CcdfAccumulator") -> "CcdfAccumulator":
        """
        Combinar dos acumuladores con la misma rejilla.

        Returns:
            Nuevo acumulador con la suma de ambos
        """
        if not np.array_equal(self.thresholds, other.thresholds):
            raise SizingError("Los acumuladores CCDF usan rejillas distintas")
        merged = CcdfAccumulator(self.thresholds)
        for source in (self, other):
            for label, counts in source.counts.items():
                merged.counts[label] = merged.counts.get(label, np.zeros_like(counts)) + counts
                merged.totals[label] = merged.totals.get(label, 0) + source.totals[label]
        return merged

    def table(self, labels: Optional[Sequence[str]] = None) -> CcdfTable:
        """
        Tabla CCDF normalizada.

        Args:
            labels: Orden de columnas (por defecto el de inserción)

        Raises:
            DegenerateInputError: Si alguna columna no tiene muestras
        """
        columns = {}
        for label in labels or list(self.counts):
            total = self.totals.get(label, 0)
            if total == 0:
                raise DegenerateInputError(f"La columna {label} no tiene muestras")
            columns[label] = self.counts[label] / total
        return CcdfTable(thresholds_db=self.thresholds, columns=columns)


def papr_at_probability(table: CcdfTable, label: str, probability: float) -> float:
    """
    Primer umbral en el que la CCDF cae a la probabilidad objetivo o por debajo.

    Args:
        table: Tabla CCDF
        label: Columna a leer
        probability: Probabilidad objetivo (por ejemplo 1e-2)

    Returns:
        PAPR en dB, o NaN si la curva no baja hasta la probabilidad en la rejilla
    """
    column = table.columns[label]
    below = np.nonzero(column <= probability)[0]
    if below.size == 0:
        return float("nan")
    return float(table.thresholds_db[below[0]])


# ===== PSD =====

def _normalized_psd(frequencies: np.ndarray, power: np.ndarray, label: str) -> PsdEstimate:
    peak = float(np.max(power))
    if not peak > 0:
        raise DegenerateInputError("La PSD de una señal nula no está definida")
    floor = np.maximum(power, np.finfo(float).tiny)
    return PsdEstimate(
        frequencies=frequencies,
        power=power,
        density_db=10 * np.log10(floor / peak),
        label=label,
    )


def psd_welch(
    frames: Sequence[TimeFrame],
    segment: int = 256,
    overlap: float = 0.5,
    label: str = "",
) -> PsdEstimate:
    """
    PSD de Welch de las tramas concatenadas (ventana de Hann, espectro bilateral).

    Args:
        frames: Tramas transmitidas en orden
        segment: Longitud de segmento (potencia de dos)
        overlap: Fracción de solape entre segmentos
        label: Nombre del esquema

    Returns:
        PsdEstimate en orden FFT con la densidad normalizada a pico 0 dB

    Raises:
        DegenerateInputError: Si no hay muestras suficientes para un segmento
    """
    if not frames:
        raise DegenerateInputError("La PSD necesita al menos una trama")
    signal = np.concatenate([frame.samples for frame in frames])
    if signal.size < segment:
        raise DegenerateInputError(f"{signal.size} muestras no llenan un segmento de {segment}")

    frequencies, power = welch(
        signal,
        fs=1.0,
        window=hann_window(segment),
        nperseg=segment,
        noverlap=int(segment * overlap),
        detrend=False,
        return_onesided=False,
        scaling="density",
    )
    return _normalized_psd(frequencies, power, label)


def average_psd(estimates: Sequence[PsdEstimate], label: Optional[str] = None) -> PsdEstimate:
    """
    Promediar estimaciones PSD lineales de igual rejilla (por ejemplo, una por ensayo).

    Raises:
        DegenerateInputError: Si la lista está vacía
    """
    if not estimates:
        raise DegenerateInputError("No hay estimaciones PSD que promediar")
    power = np.mean(np.stack([estimate.power for estimate in estimates]), axis=0)
    return _normalized_psd(estimates[0].frequencies, power, label if label is not None else estimates[0].label)


def occupied_band_mask(frequencies: np.ndarray, n_subcarriers: int, ifft_size: int) -> np.ndarray:
    """Bins de frecuencia normalizada dentro de [0, N_c/N)."""
    return (frequencies >= 0) & (frequencies < n_subcarriers / ifft_size)


def out_of_band_level_db(estimate: PsdEstimate, n_subcarriers: int, ifft_size: int) -> float:
    """
    Nivel medio fuera de banda respecto al pico, en dB.

    Args:
        estimate: PSD estimada
        n_subcarriers: Subportadoras ocupadas N_c
        ifft_size: Tamaño de IFFT N

    Returns:
        10·log10(media lineal fuera de banda / pico)
    """
    outside = ~occupied_band_mask(estimate.frequencies, n_subcarriers, ifft_size)
    if not np.any(outside):
        raise DegenerateInputError("No hay bins fuera de banda")
    level = float(np.mean(estimate.power[outside]))
    return float(10 * np.log10(max(level, np.finfo(float).tiny) / np.max(estimate.power)))


def mean_amplitude(frames: Sequence[TimeFrame]) -> float:
    """
    Amplitud media |p(n)| sobre los cuerpos de todas las tramas.

    Raises:
        DegenerateInputError: Si no hay tramas
    """
    if not frames:
        raise DegenerateInputError("No hay tramas para medir la amplitud")
    return float(np.mean(np.abs(np.concatenate([frame.body for frame in frames]))))


# ===== BER =====

def bit_errors(tx_bits, rx_bits) -> int:
    """
    Número de bits distintos entre dos flujos de igual longitud.

    Raises:
        SizingError: Si las longitudes difieren
        DegenerateInputError: Si los flujos están vacíos
    """
    tx = np.asarray(tx_bits).reshape(-1)
    rx = np.asarray(rx_bits).reshape(-1)
    if tx.size != rx.size:
        raise SizingError(f"Flujos de bits de longitudes distintas: {tx.size} y {rx.size}")
    if tx.size == 0:
        raise DegenerateInputError("La BER necesita al menos un bit")
    return int(np.count_nonzero(tx != rx))


def ber(tx_bits, rx_bits) -> float:
    """
    Tasa de error de bit: fracción de bits distintos.

    Args:
        tx_bits: Bits transmitidos
        rx_bits: Bits decididos

    Returns:
        BER en [0, 1]
    """
    return bit_errors(tx_bits, rx_bits) / np.asarray(tx_bits).size


def ebn0_db(snr_db: Sequence[float], ifft_size: int, modulation: Modulation) -> np.ndarray:
    """
    Eb/N0 equivalente a una SNR por muestra: Eb/N0 = N·SNR / bits_por_símbolo.

    La energía de un símbolo ensanchado ocupa las N muestras del cuerpo de la trama.
    """
    snr = np.asarray(snr_db, dtype=float)
    return snr + 10 * np.log10(ifft_size / modulation.bits_per_symbol)


def theoretical_ber(ebn0: Sequence[float], channel: ChannelKind) -> np.ndarray:
    """
    BER teórica por bit de BPSK/QPSK Gray.

    AWGN: Q(√(2·Eb/N0)). Rayleigh plano con ecualización ideal: ½(1 - √(γ/(1+γ))).
    Canal ideal: cero.

    Args:
        ebn0: Eb/N0 en dB
        channel: Modelo de canal

    Returns:
        BER teórica por punto
    """
    gamma = 10 ** (np.asarray(ebn0, dtype=float) / 10)
    if channel is ChannelKind.IDEAL:
        return np.zeros_like(gamma)
    if channel is ChannelKind.AWGN:
        return 0.5 * erfc(np.sqrt(gamma))
    return 0.5 * (1 - np.sqrt(gamma / (1 + gamma)))
