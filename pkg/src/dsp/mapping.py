"""
Modulación BPSK/QPSK y decisión dura de símbolos.
"""

import numpy as np

from src.errors import SizingError
from src.schemas.signals import SymbolBlock
from src.schemas.system import Modulation

INV_SQRT2 = 1 / np.sqrt(2)


def as_bits(bits) -> np.ndarray:
    """
    Normalizar un flujo de bits a un array uint8 de ceros y unos.

    Raises:
        ValueError: Si algún valor no es 0 ni 1
    """
    array = np.asarray(bits).reshape(-1)
    if array.size and not np.all((array == 0) | (array == 1)):
        raise ValueError("Los bits deben valer 0 o 1")
    return array.astype(np.uint8)


def map_bits(bits, modulation: Modulation) -> SymbolBlock:
    """
    Mapear bits a símbolos de la constelación.

    BPSK: 0 -> +1, 1 -> -1.
    QPSK (Gray, pares b0 b1): 00 -> (1+j)/√2, 01 -> (-1+j)/√2, 11 -> (-1-j)/√2, 10 -> (1-j)/√2.

    Args:
        bits: Flujo de bits
        modulation: Constelación

    Returns:
        SymbolBlock de magnitud unitaria

    Raises:
        SizingError: Si QPSK recibe un número impar de bits
    """
    bits = as_bits(bits)
    if modulation is Modulation.BPSK:
        symbols = 1.0 - 2.0 * bits
    else:
        if bits.size % 2:
            raise SizingError("QPSK requiere un número par de bits")
        pairs = bits.reshape(-1, 2).astype(np.float64)
        # b0 decide la parte imaginaria, b1 la real
        symbols = ((1.0 - 2.0 * pairs[:, 1]) + 1j * (1.0 - 2.0 * pairs[:, 0])) * INV_SQRT2
    return SymbolBlock(symbols=symbols, modulation=modulation)


def demap_symbols(symbols: SymbolBlock, modulation: Modulation) -> np.ndarray:
    """
    Decisión dura de mínima distancia.

    Los empates en la frontera de decisión se resuelven hacia el bit 0.

    Args:
        symbols: Símbolos recibidos
        modulation: Constelación

    Returns:
        Bits uint8
    """
    values = symbols.symbols
    if modulation is Modulation.BPSK:
        return (values.real < 0).astype(np.uint8)
    bits = np.empty((values.size, 2), dtype=np.uint8)
    bits[:, 0] = values.imag < 0
    bits[:, 1] = values.real < 0
    return bits.reshape(-1)
