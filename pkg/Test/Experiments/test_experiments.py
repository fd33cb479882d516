"""
Tests para el servicio de experimentos.
Verifica semillas por ensayo, independencia del número de workers y los cuatro experimentos.
"""

import pytest
import sys
import os

import numpy as np

# Agregar el directorio raíz del proyecto al path para importar módulos
project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(project_root)

from src.schemas.experiment import ExperimentKind, ExperimentPlan, Scheme, SchemeColumn
from src.errors import DegenerateInputError
from src.schemas.system import ChannelKind, SystemConfig
from src.services.experiments import (
    ExperimentService,
    get_experiment_service,
    previous_label,
    trial_bits,
    trial_chunks,
    trial_rng,
    run_ccdf,
    run_summary,
)
from src.services.metrics import occupied_band_mask, papr_at_probability

ALL_SCHEMES = [Scheme.ORIGINAL, Scheme.COMPANDING, Scheme.DCT_COMPANDING, Scheme.DWT_COMPANDING]


def small_plan(experiment=ExperimentKind.CCDF, **overrides):
    values = {
        "experiment": experiment,
        "system": SystemConfig(n_symbols=32),
        "schemes": [Scheme.ORIGINAL, Scheme.COMPANDING],
        "mus": [2.0, 5.0],
        "trials": 3,
    }
    values.update(overrides)
    return ExperimentPlan(**values)


class TestTrialSeeding:
    """Tests para las semillas y el reparto de ensayos."""

    def test_trial_rng_is_deterministic(self):
        """Verificar que (semilla, ensayo, flujo) fija la secuencia."""
        first = trial_rng(7, 3, 0).integers(0, 1000, 10)
        second = trial_rng(7, 3, 0).integers(0, 1000, 10)
        other_stream = trial_rng(7, 3, 1).integers(0, 1000, 10)
        np.testing.assert_array_equal(first, second)
        assert not np.array_equal(first, other_stream)

    def test_trial_bits_depend_on_seed_and_trial(self):
        """Verificar que los bits dependen de la semilla y del índice de ensayo."""
        cfg = SystemConfig(n_symbols=16, n_users=1)
        assert trial_bits(cfg, 0).size == 16
        np.testing.assert_array_equal(trial_bits(cfg, 2), trial_bits(cfg, 2))
        assert not np.array_equal(trial_bits(cfg, 0), trial_bits(cfg, 1))
        assert not np.array_equal(trial_bits(cfg, 0), trial_bits(cfg.with_overrides(seed=1), 0))

    @pytest.mark.parametrize("trials,workers", [(1, 4), (5, 2), (10, 3), (4, 4)])
    def test_trial_chunks_cover_all_trials(self, trials, workers):
        """Verificar que los bloques cubren todos los ensayos en orden."""
        chunks = trial_chunks(trials, workers)
        assert len(chunks) == min(trials, workers)
        assert [trial for chunk in chunks for trial in chunk] == list(range(trials))

    def test_previous_label(self):
        """Verificar la cadena de esquemas para la reducción adicional."""
        assert previous_label(SchemeColumn("comp_mu2", Scheme.COMPANDING, 2.0)) == "original"
        assert previous_label(SchemeColumn("dwt_mu5", Scheme.DWT_COMPANDING, 5.0)) == "dct_mu5"
        assert previous_label(SchemeColumn("original", Scheme.ORIGINAL, None)) is None


class TestCcdfExperiment:
    """Tests para el barrido CCDF."""

    @pytest.mark.asyncio
    async def test_columns_and_ordering(self):
        """Verificar columnas y que la compansión desplaza la curva a la izquierda."""
        table = await ExperimentService(workers=2).run_ccdf(small_plan())
        assert table.labels == ["original", "comp_mu2", "comp_mu5"]
        assert np.all(table.columns["comp_mu2"] <= table.columns["original"])
        assert np.all(table.columns["comp_mu5"] <= table.columns["comp_mu2"])
        assert table.thresholds_db[0] == 0.0 and table.thresholds_db[-1] == 20.0

    @pytest.mark.asyncio
    async def test_independent_of_worker_count(self):
        """Verificar que 1 y 3 workers producen la misma tabla."""
        plan = small_plan(trials=5)
        single = await ExperimentService(workers=1).run_ccdf(plan)
        several = await ExperimentService(workers=3).run_ccdf(plan)
        for label in single.labels:
            np.testing.assert_array_equal(single.columns[label], several.columns[label])

    def test_companding_reduction_grows_with_mu(self):
        """Verificar reducción >= 2 dB con μ=2 a CCDF=1e-2 y crecimiento estricto con μ."""
        plan = small_plan(system=SystemConfig(n_symbols=512), mus=[2.0, 3.0, 5.0], trials=4, workers=4)
        table = run_ccdf(plan)
        reference = papr_at_probability(table, "original", 1e-2)
        reductions = [reference - papr_at_probability(table, f"comp_mu{mu}", 1e-2) for mu in (2, 3, 5)]
        assert reductions[0] >= 2.0
        assert reductions[0] < reductions[1] < reductions[2]

    def test_single_frame_is_a_step(self):
        """Verificar que con una sola trama la CCDF solo toma valores 0 o 1."""
        plan = small_plan(system=SystemConfig(n_symbols=1), trials=1)
        table = run_ccdf(plan)
        for column in table.columns.values():
            assert set(np.unique(column).tolist()) <= {0.0, 1.0}

    def test_plan_workers_take_precedence(self):
        """Verificar que los workers del plan tienen prioridad sobre los del servicio."""
        service = ExperimentService(workers=4)
        assert service._workers_for(small_plan(workers=2)) == 2
        assert service._workers_for(small_plan()) == 4
        assert get_experiment_service() is get_experiment_service()


class TestPsdExperiment:
    """Tests para la comparación PSD."""

    @pytest.mark.asyncio
    async def test_peak_inside_occupied_band(self):
        """Verificar una estimación por esquema con el pico en la banda ocupada."""
        plan = small_plan(ExperimentKind.PSD, schemes=ALL_SCHEMES, mus=[2.0], trials=2)
        estimates = await ExperimentService(workers=2).run_psd(plan)
        assert [estimate.label for estimate in estimates] == ["original", "comp_mu2", "dct_mu2", "dwt_mu2"]
        for estimate in estimates:
            mask = occupied_band_mask(estimate.frequencies, 64, 128)
            assert mask[int(np.argmax(estimate.power))]
            assert estimate.segment == 256

    @pytest.mark.asyncio
    async def test_deterministic(self):
        """Verificar que dos ejecuciones con la misma semilla coinciden."""
        plan = small_plan(ExperimentKind.PSD, trials=2)
        first = await ExperimentService(workers=1).run_psd(plan)
        second = await ExperimentService(workers=2).run_psd(plan)
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.power, b.power)

    @pytest.mark.asyncio
    async def test_trial_error_is_not_wrapped(self):
        """Verificar que un error dentro de un bloque de ensayos llega sin ExceptionGroup."""
        plan = small_plan(ExperimentKind.PSD, system=SystemConfig(n_symbols=1), trials=3)
        with pytest.raises(DegenerateInputError, match="segmento"):
            await ExperimentService(workers=3).run_psd(plan)


class TestBerExperiment:
    """Tests para la curva BER."""

    @pytest.mark.asyncio
    async def test_ideal_channel_has_no_errors(self):
        """Verificar BER nula en todos los esquemas con canal ideal."""
        plan = small_plan(ExperimentKind.BER, schemes=ALL_SCHEMES, mus=[2.0], channel=ChannelKind.IDEAL, snr_db=[0.0], trials=2)
        curve = await ExperimentService(workers=2).run_ber(plan)
        for values in curve.columns.values():
            assert values.tolist() == [0.0]
        assert curve.theory.tolist() == [0.0]

    @pytest.mark.asyncio
    async def test_awgn_curve_decreases(self):
        """Verificar que la BER del sistema original cae al subir la SNR."""
        plan = small_plan(
            ExperimentKind.BER,
            system=SystemConfig(n_symbols=256),
            schemes=[Scheme.ORIGINAL],
            snr_db=[-22.0, -14.0],
            trials=4,
        )
        curve = await ExperimentService(workers=2).run_ber(plan)
        original = curve.columns["original"]
        assert original[0] > original[1]
        np.testing.assert_allclose(curve.ebn0_db, np.array([-22.0, -14.0]) + 10 * np.log10(128))
        assert np.all(np.diff(curve.theory) < 0)


class TestSummaryExperiment:
    """Tests para el resumen de reducción de PAPR."""

    @pytest.mark.asyncio
    async def test_rows(self):
        """Verificar filas, referencia original y reducción de la compansión."""
        plan = small_plan(ExperimentKind.SUMMARY, schemes=[Scheme.COMPANDING, Scheme.DCT_COMPANDING], mus=[3.0], trials=2)
        rows = await ExperimentService(workers=2).run_summary(plan)
        assert [row.label for row in rows] == ["original", "comp_mu3", "dct_mu3"]
        original, companded, dct = rows
        assert original.reduction_db == 0.0
        assert original.extra_reduction_db is None
        assert companded.reduction_db >= 0.0
        assert companded.extra_reduction_db == pytest.approx(companded.reduction_db)
        assert dct.extra_reduction_db == pytest.approx(companded.papr_db - dct.papr_db)
        assert all(row.out_of_band_db < 0 for row in rows)
        assert all(row.mean_amplitude > 0 for row in rows)


class TestSchemeComparison:
    """Tests de la comparación entre esquemas con el sistema de referencia (PN, BPSK, μ=2)."""

    @pytest.fixture(scope="class")
    def rows(self):
        plan = ExperimentPlan(
            experiment=ExperimentKind.SUMMARY,
            system=SystemConfig(),
            schemes=ALL_SCHEMES,
            mus=[2.0],
            trials=20,
        )
        return {row.label: row for row in run_summary(plan)}

    def test_dct_adds_reduction_over_companding(self, rows):
        """Verificar que DCT+compansión reduce al menos 0.5 dB más que la compansión sola."""
        assert rows["comp_mu2"].reduction_db > 0
        assert rows["dct_mu2"].extra_reduction_db >= 0.5

    def test_haar_precoding_stays_above_dct(self, rows):
        """Verificar el orden medido: la DWT Haar ortonormal queda por encima de la DCT en PAPR."""
        assert rows["dwt_mu2"].extra_reduction_db < -0.5
        assert rows["dwt_mu2"].papr_db > rows["comp_mu2"].papr_db
        assert rows["dwt_mu2"].papr_db < rows["original"].papr_db

    def test_out_of_band_ordering(self, rows):
        """Verificar el orden medido fuera de banda: original < DCT < DWT."""
        original = rows["original"].out_of_band_db
        assert original < rows["dct_mu2"].out_of_band_db < rows["dwt_mu2"].out_of_band_db
