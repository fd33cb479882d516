"""
Transceptor MC-CDMA: transmisor y receptor extremo a extremo.
Modulación, ensanchamiento, precodificación DCT/DWT, IFFT, prefijo cíclico y compansión ley μ.
"""

from typing import List, Optional, Sequence

import numpy as np

from src.config.logging_config import get_logger
from src.dsp.codes import code_matrix, despread_rows, spread_rows
from src.dsp.companding import average_amplitude, mu_compress, mu_expand
from src.dsp.mapping import as_bits, demap_symbols, map_bits
from src.dsp.numerics import dct_forward, dct_inverse, fft, haar_dwt, haar_idwt, ifft
from src.errors import SizingError
from src.schemas import CompanderParams, Precoder, SymbolBlock, SystemConfig, TimeFrame

logger = get_logger("transceiver")


# ===== PRECODIFICACIÓN =====

def precode(chips: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """
    Aplicar el precodificador ortonormal Q = H·P a cada fila de chips.

    Args:
        chips: Chips ensanchados (..., N_c)
        cfg: Configuración con el precodificador

    Returns:
        Chips precodificados con la misma forma
    """
    if cfg.precoder is Precoder.DCT:
        return dct_forward(chips)
    if cfg.precoder is Precoder.DWT:
        return haar_dwt(chips, cfg.resolved_dwt_levels)
    return np.asarray(chips, dtype=np.complex128)


def unprecode(coefficients: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """
    Deshacer el precodificador: P = Hᵀ·Q.
    """
    if cfg.precoder is Precoder.DCT:
        return dct_inverse(coefficients)
    if cfg.precoder is Precoder.DWT:
        return haar_idwt(coefficients, cfg.resolved_dwt_levels)
    return np.asarray(coefficients, dtype=np.complex128)


# ===== PREFIJO CÍCLICO Y SUMA DE USUARIOS =====

def add_cyclic_prefix(frame: TimeFrame, cp_len: int) -> TimeFrame:
    """
    Anteponer las últimas cp_len muestras del cuerpo.

    Args:
        frame: Trama sin prefijo
        cp_len: Longitud del prefijo

    Returns:
        Trama con prefijo (cp_len marcado en la trama)

    Raises:
        SizingError: Si la trama ya tiene prefijo o cp_len no es menor que el cuerpo
    """
    if frame.cp_len:
        raise SizingError("La trama ya tiene prefijo cíclico")
    body = frame.samples
    if not 0 <= cp_len < body.size:
        raise SizingError(f"cp_len={cp_len} fuera de rango para un cuerpo de {body.size} muestras")
    samples = np.concatenate([body[body.size - cp_len:], body])
    return frame.model_copy(update={"samples": samples, "cp_len": cp_len})


def remove_cyclic_prefix(frame: TimeFrame) -> TimeFrame:
    """
    Quitar el prefijo cíclico y devolver solo el cuerpo.
    """
    return frame.model_copy(update={"samples": frame.body.copy(), "cp_len": 0})


def combine_users(frames: Sequence[TimeFrame], n_users: Optional[int] = None) -> TimeFrame:
    """
    Suma muestra a muestra de las tramas síncronas de K usuarios.

    Args:
        frames: Una trama por usuario
        n_users: K esperado (por defecto len(frames))

    Returns:
        Trama combinada

    Raises:
        SizingError: Si el número de tramas o sus longitudes no coinciden
    """
    if not frames:
        raise SizingError("combine_users necesita al menos una trama")
    if n_users is not None and len(frames) != n_users:
        raise SizingError(f"Se esperaban {n_users} tramas de usuario, recibidas {len(frames)}")
    lengths = {len(frame) for frame in frames}
    if len(lengths) != 1:
        raise SizingError(f"Las tramas de usuario tienen longitudes distintas: {sorted(lengths)}")
    if len(frames) == 1:
        return frames[0]
    total = np.sum([frame.samples for frame in frames], axis=0)
    return frames[0].model_copy(update={"samples": total})


# ===== TRANSMISOR =====

def _user_bits(cfg: SystemConfig, bits) -> np.ndarray:
    bits = as_bits(bits)
    expected = cfg.n_users * cfg.bits_per_user
    if bits.size != expected:
        raise SizingError(
            f"Se esperaban {expected} bits ({cfg.n_users} usuarios × {cfg.n_symbols} símbolos), recibidos {bits.size}"
        )
    return bits.reshape(cfg.n_users, cfg.bits_per_user)


def modulate_bodies(cfg: SystemConfig, bits, symbol_offset: int = 0) -> np.ndarray:
    """
    Pasos de mapeo, ensanchamiento, precodificación e IFFT para todos los usuarios.

    Args:
        cfg: Configuración del sistema
        bits: K·n_symbols·bits_por_símbolo bits, usuario a usuario
        symbol_offset: Índice absoluto del primer símbolo (ventana de código)

    Returns:
        Cuerpos de trama por usuario (K, n_symbols, N)
    """
    per_user = _user_bits(cfg, bits)
    indices = symbol_offset + np.arange(cfg.n_symbols)
    bins = np.zeros((cfg.n_users, cfg.n_symbols, cfg.ifft_size), dtype=np.complex128)
    for user in range(cfg.n_users):
        symbols = map_bits(per_user[user], cfg.modulation).symbols
        chips = spread_rows(symbols, code_matrix(cfg, user, indices))
        # N_c chips precodificados en los bins 0..N_c-1, el resto a cero
        bins[user, :, :cfg.n_subcarriers] = precode(chips, cfg)
    return ifft(bins)


def transmit(cfg: SystemConfig, bits, symbol_offset: int = 0) -> List[TimeFrame]:
    """
    Transmisor MC-CDMA completo.

    Por símbolo: mapeo, ensanchamiento, precodificación, IFFT, suma de usuarios,
    prefijo cíclico y compresión ley μ con la amplitud media de la trama.

    Args:
        cfg: Configuración del sistema
        bits: Bits de los K usuarios concatenados
        symbol_offset: Índice absoluto del primer símbolo

    Returns:
        Una TimeFrame por símbolo, con índice symbol_offset + i
    """
    bodies = modulate_bodies(cfg, bits, symbol_offset)
    frames: List[TimeFrame] = []
    for i in range(cfg.n_symbols):
        user_frames = [
            TimeFrame(samples=bodies[user, i], index=symbol_offset + i)
            for user in range(cfg.n_users)
        ]
        frame = add_cyclic_prefix(combine_users(user_frames, cfg.n_users), cfg.cp_len)
        if cfg.compander:
            params = CompanderParams(mu=cfg.mu, s=average_amplitude(frame))
            frame = mu_compress(frame, params, renormalize=cfg.renormalize)
        frames.append(frame)

    logger.debug(
        f"Transmitidas {len(frames)} tramas (precoder={cfg.precoder.value}, compander={cfg.compander}, mu={cfg.mu:g})"
    )
    return frames


# ===== RECEPTOR =====

def receive_symbols(
    cfg: SystemConfig,
    frames: Sequence[TimeFrame],
    user: int = 0,
    expand: bool = True,
) -> np.ndarray:
    """
    Receptor hasta el desensanchamiento: símbolos blandos de un usuario.

    Por trama: ecualización con el h registrado, expansión ley μ, eliminación del
    prefijo, FFT, extracción de los N_c bins, precodificador inverso y desensanchamiento.

    Args:
        cfg: Configuración usada en el transmisor
        frames: Tramas recibidas
        user: Usuario a recuperar
        expand: Aplicar la expansión (False reproduce un receptor sin expansor)

    Returns:
        Símbolos blandos (len(frames),)

    Raises:
        SizingError: Si alguna trama no tiene la longitud de la configuración
    """
    if not frames:
        raise SizingError("El receptor necesita al menos una trama")

    bodies = []
    for frame in frames:
        if len(frame) != cfg.frame_length:
            raise SizingError(f"Trama de {len(frame)} muestras, se esperaban {cfg.frame_length}")
        if frame.channel_gain != 1:
            frame = frame.model_copy(update={"samples": frame.samples / frame.channel_gain, "channel_gain": 1 + 0j})
        if cfg.compander and expand:
            if frame.amplitude_ref is None:
                raise ValueError(f"La trama {frame.index} no lleva la amplitud de referencia del compander")
            frame = mu_expand(frame, CompanderParams(mu=cfg.mu, s=frame.amplitude_ref))
        bodies.append(remove_cyclic_prefix(frame).samples)

    spectrum = fft(np.stack(bodies))[:, :cfg.n_subcarriers]
    chips = unprecode(spectrum, cfg)
    codes = code_matrix(cfg, user, [frame.index for frame in frames])
    return despread_rows(chips, codes)


def receive(
    cfg: SystemConfig,
    frames: Sequence[TimeFrame],
    user: int = 0,
    expand: bool = True,
) -> np.ndarray:
    """
    Receptor MC-CDMA completo: símbolos blandos seguidos de decisión dura.

    Args:
        cfg: Configuración usada en el transmisor
        frames: Tramas recibidas
        user: Usuario a recuperar
        expand: Aplicar la expansión ley μ

    Returns:
        Bits del usuario (uint8)
    """
    symbols = receive_symbols(cfg, frames, user=user, expand=expand)
    return demap_symbols(SymbolBlock(symbols=symbols, modulation=cfg.modulation), cfg.modulation)
