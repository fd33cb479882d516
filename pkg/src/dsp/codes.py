"""
Códigos de ensanchamiento: secuencias PN (m-secuencias LFSR), familias Gold y Walsh-Hadamard.
Incluye el ensanchamiento y desensanchamiento de bloques de símbolos.
"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import hadamard

from src.errors import SizingError
from src.schemas.signals import ChipSequence, SymbolBlock
from src.schemas.system import CodeFamily, LfsrSpec, Modulation, SystemConfig, is_power_of_two


def bits_to_chips(bits: np.ndarray) -> np.ndarray:
    """Convertir bits a chips bipolares (0 -> +1, 1 -> -1)."""
    return (1 - 2 * np.asarray(bits, dtype=np.int8)).astype(np.int8)


# ===== M-SECUENCIAS =====

@lru_cache(maxsize=64)
def _lfsr_bits(degree: int, taps: int, seed: int) -> np.ndarray:
    # Recurrencia a[n+m] = XOR de a[n+j] para cada bit j de taps (j < m).
    # El bit i del estado contiene a[n+i]; el bit 0 es la salida.
    period = (1 << degree) - 1
    feedback_mask = taps & period
    state = seed
    bits = np.empty(period, dtype=np.int8)
    for n in range(period):
        bits[n] = state & 1
        feedback = bin(state & feedback_mask).count("1") & 1
        state = (state >> 1) | (feedback << (degree - 1))
        if state == seed and n < period - 1:
            raise SizingError(f"El polinomio {taps:#x} no es primitivo (período {n + 1})")
    bits.setflags(write=False)
    return bits


def pn_sequence(spec: LfsrSpec) -> ChipSequence:
    """
    Generar un período completo de una m-secuencia.

    Args:
        spec: Grado, polinomio y estado inicial del LFSR

    Returns:
        ChipSequence PN de longitud 2^m - 1

    Raises:
        SizingError: Si el polinomio no genera una secuencia de período máximo
    """
    bits = _lfsr_bits(spec.degree, spec.taps, spec.seed)
    return ChipSequence(chips=bits_to_chips(bits), family=CodeFamily.PN)


def gold_codes(degree: int, pair: Tuple[LfsrSpec, LfsrSpec], index: int) -> ChipSequence:
    """
    Miembro de la familia Gold generada por un par preferido.

    El índice 0 es la primera m-secuencia, el 1 la segunda y los índices
    2..2^m combinan la primera con la segunda desplazada index-2 posiciones.

    Args:
        degree: Grado m del par
        pair: Par preferido de especificaciones LFSR
        index: Miembro de la familia (0..2^m)

    Returns:
        ChipSequence Gold de longitud 2^m - 1

    Raises:
        ValueError: Si el índice está fuera de la familia o los grados no coinciden
    """
    first, second = pair
    if first.degree != degree or second.degree != degree:
        raise ValueError("Los dos generadores Gold deben tener el grado de la familia")
    family_size = (1 << degree) + 1
    if not 0 <= index < family_size:
        raise ValueError(f"Índice Gold {index} fuera de la familia de {family_size} códigos")

    u = _lfsr_bits(first.degree, first.taps, first.seed)
    v = _lfsr_bits(second.degree, second.taps, second.seed)
    if index == 0:
        bits = u
    elif index == 1:
        bits = v
    else:
        bits = u ^ np.roll(v, -(index - 2))
    return ChipSequence(chips=bits_to_chips(bits), family=CodeFamily.GOLD)


def walsh_hadamard(order: int) -> np.ndarray:
    """
    Matriz de Walsh-Hadamard por construcción de Sylvester.

    Args:
        order: Orden de la matriz (potencia de dos)

    Returns:
        Matriz order×order de chips ±1 (int8)

    Raises:
        SizingError: Si el orden no es potencia de dos
    """
    if not is_power_of_two(order):
        raise SizingError(f"El orden Walsh-Hadamard debe ser potencia de dos, recibido {order}")
    return hadamard(order, dtype=np.int8)


def walsh_code(order: int, row: int) -> ChipSequence:
    """Fila de la matriz de Walsh-Hadamard como ChipSequence."""
    if not 0 <= row < order:
        raise ValueError(f"Fila Walsh {row} fuera de rango para orden {order}")
    return ChipSequence(chips=walsh_hadamard(order)[row], family=CodeFamily.WALSH)


# ===== ENSANCHAMIENTO =====

def spread(symbols: SymbolBlock, code: ChipSequence) -> np.ndarray:
    """
    Ensanchar cada símbolo a N_c chips: a·c_k.

    Args:
        symbols: Bloque de símbolos
        code: Código de ensanchamiento

    Returns:
        Vector complejo de longitud len(symbols)·N_c
    """
    return np.outer(symbols.symbols, code.chips).reshape(-1)


def despread(chips: np.ndarray, code: ChipSequence, modulation: Modulation = Modulation.BPSK) -> SymbolBlock:
    """
    Correlar y normalizar: a = (1/N_c)·Σ chips·c_k.

    Args:
        chips: Vector de chips recibidos
        code: Código del usuario
        modulation: Constelación asociada al bloque resultante

    Returns:
        SymbolBlock con un símbolo por cada N_c chips

    Raises:
        SizingError: Si el número de chips no es múltiplo de N_c
    """
    chips = np.asarray(chips, dtype=np.complex128).reshape(-1)
    n_c = len(code)
    if chips.size == 0 or chips.size % n_c:
        raise SizingError(f"{chips.size} chips no son múltiplo del factor de ensanchamiento {n_c}")
    symbols = chips.reshape(-1, n_c) @ code.chips.astype(np.float64) / n_c
    return SymbolBlock(symbols=symbols, modulation=modulation)


def spread_rows(symbols: np.ndarray, codes: np.ndarray) -> np.ndarray:
    """
    Ensanchar un símbolo por fila con su propio código.

    Args:
        symbols: Símbolos (M,)
        codes: Códigos por símbolo (M, N_c)

    Returns:
        Chips (M, N_c)
    """
    return np.asarray(symbols, dtype=np.complex128)[:, None] * codes


def despread_rows(chips: np.ndarray, codes: np.ndarray) -> np.ndarray:
    """
    Desensanchar fila a fila, inversa exacta de spread_rows.

    Args:
        chips: Chips (M, N_c)
        codes: Códigos por símbolo (M, N_c)

    Returns:
        Símbolos (M,)
    """
    if chips.shape != codes.shape:
        raise SizingError(f"Chips {chips.shape} y códigos {codes.shape} no coinciden")
    return np.sum(chips * codes, axis=-1) / codes.shape[-1]


# ===== CÓDIGOS POR USUARIO Y SÍMBOLO =====

def user_sequence(cfg: SystemConfig, user: int) -> np.ndarray:
    """
    Secuencia base de chips de un usuario.

    Args:
        cfg: Configuración del sistema
        user: Usuario k (0..K-1)

    Returns:
        Chips ±1: período PN/Gold completo o fila Walsh de longitud N_c
    """
    if not 0 <= user < cfg.n_users:
        raise ValueError(f"Usuario {user} fuera de rango (K={cfg.n_users})")
    if cfg.code_family is CodeFamily.PN:
        return pn_sequence(cfg.pn_spec).chips
    if cfg.code_family is CodeFamily.GOLD:
        return gold_codes(cfg.gold_degree, cfg.gold_pair, cfg.gold_index + user).chips
    return walsh_code(cfg.n_subcarriers, cfg.walsh_row + user).chips


def code_matrix(cfg: SystemConfig, user: int, symbol_indices: Sequence[int]) -> np.ndarray:
    """
    Códigos de ensanchamiento de un usuario para una lista de símbolos.

    Las secuencias PN y Gold se recorren cíclicamente: el símbolo n usa la ventana
    de N_c chips que empieza en (n·N_c + k·pn_user_shift) mod período. Los códigos
    Walsh son fijos por usuario.

    Args:
        cfg: Configuración del sistema
        user: Usuario k
        symbol_indices: Índices absolutos de símbolo

    Returns:
        Matriz (len(symbol_indices), N_c) de chips ±1 como float64
    """
    sequence = user_sequence(cfg, user).astype(np.float64)
    indices = np.asarray(symbol_indices, dtype=np.int64).reshape(-1)
    n_c = cfg.n_subcarriers

    if cfg.code_family is CodeFamily.WALSH:
        return np.tile(sequence, (indices.size, 1))

    offset = user * cfg.pn_user_shift if cfg.code_family is CodeFamily.PN else 0
    period = sequence.size
    starts = (indices * n_c + offset) % period
    positions = (starts[:, None] + np.arange(n_c)[None, :]) % period
    return sequence[positions]
