"""
Módulo de servicios del simulador.
Contiene el transceptor, el canal, las métricas, los experimentos y la escritura de CSV.
"""

from .transceiver import (
    transmit,
    receive,
    receive_symbols,
    add_cyclic_prefix,
    remove_cyclic_prefix,
    combine_users,
)
from .channel import apply_channel, apply_channel_frames
from .metrics import (
    papr_db,
    ccdf,
    CcdfAccumulator,
    psd_welch,
    ber,
    mean_amplitude,
    papr_at_probability,
    out_of_band_level_db,
    theoretical_ber,
)
from .experiments import (
    ExperimentService,
    experiment_service,
    get_experiment_service,
    run_ccdf,
    run_psd,
    run_ber,
    run_summary,
)

__all__ = [
    # Transceptor
    "transmit",
    "receive",
    "receive_symbols",
    "add_cyclic_prefix",
    "remove_cyclic_prefix",
    "combine_users",

    # Canal
    "apply_channel",
    "apply_channel_frames",

    # Métricas
    "papr_db",
    "ccdf",
    "CcdfAccumulator",
    "psd_welch",
    "ber",
    "mean_amplitude",
    "papr_at_probability",
    "out_of_band_level_db",
    "theoretical_ber",

    # Experimentos
    "ExperimentService",
    "experiment_service",
    "get_experiment_service",
    "run_ccdf",
    "run_psd",
    "run_ber",
    "run_summary",
]
