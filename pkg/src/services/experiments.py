"""
Servicio de experimentos: barridos CCDF, comparación PSD, curvas BER y resumen de reducción de PAPR.
Los ensayos se reparten entre workers con anyio y se combinan en orden de ensayo.
"""

import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import anyio
import numpy as np

from src.config import get_logger, get_workers
from src.schemas import (
    BerCurve,
    CcdfTable,
    ChannelSpec,
    ExperimentPlan,
    PaprReduction,
    PsdEstimate,
    Scheme,
    SchemeColumn,
    SystemConfig,
)
from src.services.channel import apply_channel_frames
from src.services.metrics import (
    CcdfAccumulator,
    average_psd,
    bit_errors,
    ebn0_db,
    frame_paprs,
    mean_amplitude,
    out_of_band_level_db,
    papr_at_probability,
    psd_welch,
    theoretical_ber,
)
from src.services.transceiver import receive, transmit

logger = get_logger("experiments")

# Flujos aleatorios independientes por ensayo
BITS_STREAM = 0
CHANNEL_STREAM = 1

ColumnConfigs = List[Tuple[SchemeColumn, SystemConfig]]


# ===== SEMILLAS Y REPARTO =====

def trial_rng(seed: int, trial: int, stream: int, *key: int) -> np.random.Generator:
    """
    Generador de un ensayo: SeedSequence([seed, trial]) con spawn_key (stream, *key).

    El resultado de cada ensayo depende solo de la semilla maestra y del índice de
    ensayo, nunca del número de ensayos ni de workers.
    """
    sequence = np.random.SeedSequence(entropy=[seed, trial], spawn_key=(stream, *key))
    return np.random.default_rng(sequence)


def trial_bits(cfg: SystemConfig, trial: int) -> np.ndarray:
    """
    Bits de todos los usuarios para un ensayo.

    Args:
        cfg: Configuración base (semilla, usuarios, símbolos)
        trial: Índice de ensayo

    Returns:
        K·n_symbols·bits_por_símbolo bits uint8
    """
    rng = trial_rng(cfg.seed, trial, BITS_STREAM)
    return rng.integers(0, 2, size=cfg.n_users * cfg.bits_per_user, dtype=np.uint8)


def trial_chunks(trials: int, workers: int) -> List[List[int]]:
    """Repartir los ensayos 0..trials-1 en bloques contiguos no vacíos."""
    parts = np.array_split(np.arange(trials), max(1, min(workers, trials)))
    return [part.tolist() for part in parts if part.size]


def column_configs(plan: ExperimentPlan) -> ColumnConfigs:
    """Columnas del plan con su SystemConfig."""
    return [(column, plan.system_for(column)) for column in plan.columns()]


# ===== TRABAJO POR BLOQUE DE ENSAYOS =====

class TrialMeasurements:
    """
    Medidas de transmisión de un bloque de ensayos.

    Las PSD y amplitudes se guardan por ensayo para combinarlas siempre en el
    mismo orden, sea cual sea el reparto entre workers.
    """

    def __init__(self, thresholds: np.ndarray):
        self.ccdf = CcdfAccumulator(thresholds)
        self.psd: Dict[str, List[PsdEstimate]] = {}
        self.amplitude: Dict[str, List[float]] = {}

    def extend(self, other: "TrialMeasurements") -> None:
        """Añadir las medidas de un bloque posterior."""
        self.ccdf = self.ccdf.merge(other.ccdf)
        for label, estimates in other.psd.items():
            self.psd.setdefault(label, []).extend(estimates)
        for label, values in other.amplitude.items():
            self.amplitude.setdefault(label, []).extend(values)


def measure_trials(
    plan: ExperimentPlan,
    columns: ColumnConfigs,
    trials: Sequence[int],
    with_psd: bool = False,
) -> TrialMeasurements:
    """
    Transmitir los ensayos indicados para cada columna y medir PAPR (y PSD).

    Args:
        plan: Plan del experimento
        columns: Columnas con su configuración
        trials: Índices de ensayo del bloque
        with_psd: Estimar también la PSD y la amplitud media por ensayo

    Returns:
        Medidas del bloque
    """
    measurements = TrialMeasurements(plan.thresholds())
    for trial in trials:
        bits = trial_bits(plan.system, trial)
        for column, cfg in columns:
            frames = transmit(cfg, bits, symbol_offset=trial * cfg.n_symbols)
            measurements.ccdf.add(column.label, frame_paprs(frames))
            if with_psd:
                estimate = psd_welch(frames, plan.psd_segment, plan.psd_overlap, column.label)
                measurements.psd.setdefault(column.label, []).append(estimate)
                measurements.amplitude.setdefault(column.label, []).append(mean_amplitude(frames))
        logger.debug(f"Ensayo {trial} completado ({len(columns)} columnas)")
    return measurements


def count_bit_errors(plan: ExperimentPlan, columns: ColumnConfigs, trials: Sequence[int]) -> np.ndarray:
    """
    Errores de bit del usuario 0 por columna y punto de SNR.

    Todas las columnas de un ensayo comparten bits y realización de canal.

    Returns:
        Matriz (columnas, puntos SNR) de errores
    """
    errors = np.zeros((len(columns), len(plan.snr_db)), dtype=np.int64)
    for trial in trials:
        bits = trial_bits(plan.system, trial)
        user_bits = bits[:plan.system.bits_per_user]
        for i, (column, cfg) in enumerate(columns):
            frames = transmit(cfg, bits, symbol_offset=trial * cfg.n_symbols)
            for j, snr in enumerate(plan.snr_db):
                spec = ChannelSpec(kind=plan.channel, snr_db=snr, seed=plan.system.seed)
                received = apply_channel_frames(frames, spec, trial_rng(plan.system.seed, trial, CHANNEL_STREAM, j))
                errors[i, j] += bit_errors(user_bits, receive(cfg, received, user=0))
        logger.debug(f"Ensayo BER {trial} completado")
    return errors


# ===== SERVICIO =====

class ExperimentService:
    """
    Servicio que ejecuta los experimentos repartiendo ensayos entre workers.
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers

    def _workers_for(self, plan: ExperimentPlan) -> int:
        return plan.workers or self.workers or get_workers()

    async def map_trials(self, plan: ExperimentPlan, work: Callable[[List[int]], Any]) -> List[Any]:
        """
        Ejecutar work sobre bloques de ensayos en hilos, limitado a N workers.

        Args:
            plan: Plan con el número de ensayos y workers
            work: Función síncrona que recibe una lista de índices de ensayo

        Returns:
            Resultados por bloque, en orden de ensayo
        """
        workers = self._workers_for(plan)
        chunks = trial_chunks(plan.trials, workers)
        limiter = anyio.CapacityLimiter(workers)
        results: List[Any] = [None] * len(chunks)
        failures: List[Optional[Exception]] = [None] * len(chunks)

        async def run_chunk(position: int, chunk: List[int]) -> None:
            try:
                results[position] = await anyio.to_thread.run_sync(work, chunk, limiter=limiter)
            except Exception as exc:
                failures[position] = exc

        async with anyio.create_task_group() as task_group:
            for position, chunk in enumerate(chunks):
                task_group.start_soon(run_chunk, position, chunk)

        for failure in failures:
            if failure is not None:
                raise failure
        return results

    async def _measure(self, plan: ExperimentPlan, columns: ColumnConfigs, with_psd: bool) -> TrialMeasurements:
        chunks = await self.map_trials(plan, lambda trials: measure_trials(plan, columns, trials, with_psd))
        total = TrialMeasurements(plan.thresholds())
        for chunk in chunks:
            total.extend(chunk)
        return total

    def _log_start(self, plan: ExperimentPlan, columns: ColumnConfigs) -> float:
        labels = ", ".join(column.label for column, _ in columns)
        logger.info(
            f"🚀 {plan.experiment.value}: {len(columns)} columnas [{labels}], "
            f"{plan.trials} ensayos × {plan.system.n_symbols} tramas, {self._workers_for(plan)} workers"
        )
        return time.time()

    def _log_end(self, plan: ExperimentPlan, start: float) -> None:
        logger.info(f"✅ {plan.experiment.value} completado ({time.time() - start:.3f}s)")

    async def run_ccdf(self, plan: ExperimentPlan) -> CcdfTable:
        """
        CCDF del PAPR para cada esquema y μ.

        Args:
            plan: Plan del experimento

        Returns:
            CcdfTable con una columna por esquema×μ
        """
        columns = column_configs(plan)
        start = self._log_start(plan, columns)
        measurements = await self._measure(plan, columns, with_psd=False)
        table = measurements.ccdf.table([column.label for column, _ in columns])
        self._log_end(plan, start)
        return table

    async def run_psd(self, plan: ExperimentPlan) -> List[PsdEstimate]:
        """
        PSD de Welch por esquema, promediada sobre los ensayos.

        Returns:
            Una PsdEstimate por columna
        """
        columns = column_configs(plan)
        start = self._log_start(plan, columns)
        measurements = await self._measure(plan, columns, with_psd=True)
        estimates = [average_psd(measurements.psd[column.label], column.label) for column, _ in columns]
        self._log_end(plan, start)
        return estimates

    async def run_ber(self, plan: ExperimentPlan) -> BerCurve:
        """
        BER frente a SNR por esquema, con la curva teórica del canal.

        Returns:
            BerCurve con una columna por esquema×μ
        """
        columns = column_configs(plan)
        start = self._log_start(plan, columns)
        chunks = await self.map_trials(plan, lambda trials: count_bit_errors(plan, columns, trials))
        errors = np.sum(chunks, axis=0)
        total_bits = plan.trials * plan.system.bits_per_user

        ebn0 = ebn0_db(plan.snr_db, plan.system.ifft_size, plan.system.modulation)
        curve = BerCurve(
            snr_db=np.asarray(plan.snr_db, dtype=float),
            ebn0_db=ebn0,
            columns={column.label: errors[i] / total_bits for i, (column, _) in enumerate(columns)},
            theory=theoretical_ber(ebn0, plan.channel),
        )
        self._log_end(plan, start)
        return curve

    async def run_summary(self, plan: ExperimentPlan) -> List[PaprReduction]:
        """
        Resumen de reducción de PAPR a la probabilidad CCDF objetivo.

        El sistema original se añade siempre como referencia.

        Returns:
            Una fila por columna
        """
        if Scheme.ORIGINAL not in plan.schemes:
            plan = plan.model_copy(update={"schemes": [Scheme.ORIGINAL, *plan.schemes]})
        columns = column_configs(plan)
        start = self._log_start(plan, columns)
        measurements = await self._measure(plan, columns, with_psd=True)
        table = measurements.ccdf.table([column.label for column, _ in columns])
        system = plan.system

        reference = papr_at_probability(table, Scheme.ORIGINAL.label(), plan.target_ccdf)
        rows = []
        for column, _ in columns:
            papr = papr_at_probability(table, column.label, plan.target_ccdf)
            previous = previous_label(column)
            extra = None
            if previous is not None and previous in table.columns:
                extra = papr_at_probability(table, previous, plan.target_ccdf) - papr
            psd = average_psd(measurements.psd[column.label], column.label)
            rows.append(PaprReduction(
                label=column.label,
                papr_db=papr,
                reduction_db=reference - papr,
                extra_reduction_db=extra,
                out_of_band_db=out_of_band_level_db(psd, system.n_subcarriers, system.ifft_size),
                mean_amplitude=float(np.mean(measurements.amplitude[column.label])),
            ))
        self._log_end(plan, start)
        return rows


def previous_label(column: SchemeColumn) -> Optional[str]:
    """
    Columna del esquema inmediatamente más simple.

    compansión -> original, DCT+compansión -> compansión, DWT+compansión -> DCT+compansión,
    precodificación sola -> original.
    """
    previous = {
        Scheme.COMPANDING: Scheme.ORIGINAL,
        Scheme.DCT_COMPANDING: Scheme.COMPANDING,
        Scheme.DWT_COMPANDING: Scheme.DCT_COMPANDING,
        Scheme.DCT: Scheme.ORIGINAL,
        Scheme.DWT: Scheme.ORIGINAL,
    }.get(column.scheme)
    if previous is None:
        return None
    return previous.label(column.mu)


# Instancia global del servicio
experiment_service = ExperimentService()


def get_experiment_service() -> ExperimentService:
    """
    Obtener instancia del servicio de experimentos.

    Returns:
        Servicio de experimentos
    """
    return experiment_service


# ===== ENTRADAS SÍNCRONAS =====

def run_ccdf(plan: ExperimentPlan) -> CcdfTable:
    """Ejecutar el barrido CCDF de forma síncrona."""
    return anyio.run(experiment_service.run_ccdf, plan)


def run_psd(plan: ExperimentPlan) -> List[PsdEstimate]:
    """Ejecutar la comparación PSD de forma síncrona."""
    return anyio.run(experiment_service.run_psd, plan)


def run_ber(plan: ExperimentPlan) -> BerCurve:
    """Ejecutar la curva BER de forma síncrona."""
    return anyio.run(experiment_service.run_ber, plan)


def run_summary(plan: ExperimentPlan) -> List[PaprReduction]:
    """Ejecutar el resumen de reducción de PAPR de forma síncrona."""
    return anyio.run(experiment_service.run_summary, plan)
