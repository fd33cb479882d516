"""
Transformadas ortogonales (FFT/IFFT unitarias, DCT-II ortonormal, DWT Haar multinivel) y ventanas.

Todas las funciones son puras y operan sobre el último eje, de modo que aceptan
un vector (N,) o un lote de tramas (M, N).
"""

from functools import lru_cache

import numpy as np
from scipy.signal import get_window

from src.errors import SizingError
from src.schemas.system import HAAR_QMF, QmfPair, is_power_of_two


def _check_power_of_two(length: int, operation: str) -> None:
    if not is_power_of_two(length):
        raise SizingError(f"{operation} requiere una longitud potencia de dos, recibido {length}")


# ===== FFT / IFFT =====

def fft(x: np.ndarray) -> np.ndarray:
    """
    FFT unitaria (escala 1/√N), conserva la energía.

    Args:
        x: Vector o lote complejo con longitud potencia de dos

    Returns:
        Espectro con la misma forma

    Raises:
        SizingError: Si la longitud no es potencia de dos
    """
    x = np.asarray(x, dtype=np.complex128)
    _check_power_of_two(x.shape[-1], "fft")
    return np.fft.fft(x, axis=-1, norm="ortho")


def ifft(X: np.ndarray) -> np.ndarray:
    """
    IFFT unitaria (escala 1/√N), inversa exacta de fft.

    Args:
        X: Espectro con longitud potencia de dos

    Returns:
        Señal temporal con la misma forma

    Raises:
        SizingError: Si la longitud no es potencia de dos
    """
    X = np.asarray(X, dtype=np.complex128)
    _check_power_of_two(X.shape[-1], "ifft")
    return np.fft.ifft(X, axis=-1, norm="ortho")


# ===== DCT-II =====

@lru_cache(maxsize=32)
def _dct_matrix_cached(size: int) -> np.ndarray:
    n = np.arange(size)
    k = n[:, None]
    matrix = np.cos(np.pi * (2 * n[None, :] + 1) * k / (2 * size))
    scale = np.full(size, np.sqrt(2.0 / size))
    scale[0] = np.sqrt(1.0 / size)
    matrix = scale[:, None] * matrix
    matrix.setflags(write=False)
    return matrix


def dct_matrix(size: int) -> np.ndarray:
    """
    Matriz DCT-II ortonormal C_N con filas b(k)·cos[π(2n+1)k/(2N)].

    Args:
        size: Orden N de la matriz

    Returns:
        Matriz N×N de solo lectura
    """
    if size < 1:
        raise SizingError("El orden de la matriz DCT debe ser positivo")
    return _dct_matrix_cached(int(size))


def dct_forward(p: np.ndarray) -> np.ndarray:
    """
    DCT-II ortonormal, P_c = C_N p.

    Las partes real e imaginaria se transforman por separado (la matriz es real).
    """
    p = np.asarray(p, dtype=np.complex128)
    return p @ dct_matrix(p.shape[-1]).T


def dct_inverse(P: np.ndarray) -> np.ndarray:
    """
    DCT inversa, p = C_Nᵀ P_c.
    """
    P = np.asarray(P, dtype=np.complex128)
    return P @ dct_matrix(P.shape[-1])


# ===== DWT HAAR =====

def _check_levels(length: int, levels: int) -> None:
    if levels < 1:
        raise SizingError("La DWT requiere al menos un nivel")
    if length % (1 << levels):
        raise SizingError(f"{levels} niveles DWT no caben en una longitud {length}")


def haar_dwt(x: np.ndarray, levels: int, qmf: QmfPair = HAAR_QMF) -> np.ndarray:
    """
    Descomposición Haar ortonormal multinivel.

    La salida es la concatenación [approx_L | detail_L | detail_{L-1} | ... | detail_1].

    Args:
        x: Vector o lote con longitud divisible por 2^levels
        levels: Niveles de descomposición
        qmf: Par QMF de longitud 2

    Returns:
        Coeficientes con la misma forma que x

    Raises:
        SizingError: Si los niveles no caben en la longitud
    """
    x = np.asarray(x, dtype=np.complex128)
    _check_levels(x.shape[-1], levels)
    (h0, h1), (g0, g1) = qmf.lowpass, qmf.highpass

    approx = x
    details = []
    for _ in range(levels):
        even, odd = approx[..., 0::2], approx[..., 1::2]
        details.append(g0 * even + g1 * odd)
        approx = h0 * even + h1 * odd
    return np.concatenate([approx] + details[::-1], axis=-1)


def haar_idwt(c: np.ndarray, levels: int, qmf: QmfPair = HAAR_QMF) -> np.ndarray:
    """
    Reconstrucción exacta de haar_dwt.

    Args:
        c: Coeficientes [approx_L | detail_L | ... | detail_1]
        levels: Niveles usados en el análisis
        qmf: Par QMF de longitud 2

    Returns:
        Señal reconstruida

    Raises:
        SizingError: Si niveles y longitud no concuerdan
    """
    c = np.asarray(c, dtype=np.complex128)
    length = c.shape[-1]
    _check_levels(length, levels)
    (h0, h1), (g0, g1) = qmf.lowpass, qmf.highpass

    size = length >> levels
    approx = c[..., :size]
    offset = size
    for _ in range(levels):
        detail = c[..., offset:offset + size]
        merged = np.empty(approx.shape[:-1] + (2 * size,), dtype=np.complex128)
        merged[..., 0::2] = h0 * approx + g0 * detail
        merged[..., 1::2] = h1 * approx + g1 * detail
        approx = merged
        offset += size
        size *= 2
    return approx


# ===== VENTANAS =====

def hann_window(length: int) -> np.ndarray:
    """
    Ventana de Hann periódica usada por el estimador de Welch.

    Args:
        length: Longitud del segmento

    Returns:
        Ventana real de longitud length
    """
    if length < 1:
        raise SizingError("La ventana debe tener al menos una muestra")
    return get_window("hann", length, fftbins=True)
