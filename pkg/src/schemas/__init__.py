"""
Módulo de schemas del simulador MC-CDMA.
Contiene los modelos de configuración, señales, resultados y respuestas de la CLI.
"""

from .base import BaseResponse, RunResponse, ErrorResponse
from .system import (
    Modulation,
    CodeFamily,
    Precoder,
    ChannelKind,
    LfsrSpec,
    QmfPair,
    HAAR_QMF,
    CompanderParams,
    ChannelSpec,
    SystemConfig,
    is_power_of_two,
    is_primitive,
)
from .signals import as_complex_vector, SymbolBlock, ChipSequence, TimeFrame
from .results import PaprSample, CcdfTable, PsdEstimate, BerCurve, PaprReduction
from .experiment import ExperimentKind, Scheme, SchemeColumn, ExperimentPlan

__all__ = [
    # Respuestas
    "BaseResponse",
    "RunResponse",
    "ErrorResponse",

    # Sistema
    "Modulation",
    "CodeFamily",
    "Precoder",
    "ChannelKind",
    "LfsrSpec",
    "QmfPair",
    "HAAR_QMF",
    "CompanderParams",
    "ChannelSpec",
    "SystemConfig",
    "is_power_of_two",
    "is_primitive",

    # Señales
    "as_complex_vector",
    "SymbolBlock",
    "ChipSequence",
    "TimeFrame",

    # Resultados
    "PaprSample",
    "CcdfTable",
    "PsdEstimate",
    "BerCurve",
    "PaprReduction",

    # Experimentos
    "ExperimentKind",
    "Scheme",
    "SchemeColumn",
    "ExperimentPlan",
]
