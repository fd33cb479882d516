"""
Bloques de procesado de señal del transceptor MC-CDMA.
Transformadas, códigos de ensanchamiento, modulación y compansión ley μ.
"""

from .numerics import (
    fft,
    ifft,
    dct_matrix,
    dct_forward,
    dct_inverse,
    haar_dwt,
    haar_idwt,
    hann_window,
)

from .codes import (
    pn_sequence,
    gold_codes,
    walsh_hadamard,
    walsh_code,
    spread,
    despread,
    spread_rows,
    despread_rows,
    code_matrix,
)

from .mapping import (
    map_bits,
    demap_symbols,
)

from .companding import (
    average_amplitude,
    mu_compress,
    mu_expand,
)

__all__ = [
    # Transformadas
    "fft",
    "ifft",
    "dct_matrix",
    "dct_forward",
    "dct_inverse",
    "haar_dwt",
    "haar_idwt",
    "hann_window",

    # Códigos
    "pn_sequence",
    "gold_codes",
    "walsh_hadamard",
    "walsh_code",
    "spread",
    "despread",
    "spread_rows",
    "despread_rows",
    "code_matrix",

    # Modulación
    "map_bits",
    "demap_symbols",

    # Compansión
    "average_amplitude",
    "mu_compress",
    "mu_expand",
]
