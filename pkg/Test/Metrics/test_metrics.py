"""
Tests unitarios para el servicio de métricas.
Verifica PAPR, CCDF y su acumulador, PSD de Welch y BER teórica y medida.
"""

import math

import pytest
import sys
import os

import numpy as np

# Agregar el directorio raíz del proyecto al path para importar módulos
project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(project_root)

from src.errors import DegenerateInputError, SizingError
from src.schemas.results import CcdfTable, PaprSample
from src.schemas.signals import TimeFrame
from src.schemas.system import ChannelKind, Modulation, SystemConfig
from src.services.metrics import (
    papr_db,
    frame_paprs,
    ccdf,
    CcdfAccumulator,
    papr_at_probability,
    psd_welch,
    average_psd,
    occupied_band_mask,
    out_of_band_level_db,
    mean_amplitude,
    bit_errors,
    ber,
    ebn0_db,
    theoretical_ber,
)
from src.services.transceiver import transmit


def chunks(signal, size):
    return [TimeFrame(samples=signal[i:i + size]) for i in range(0, signal.size, size)]


class TestPapr:
    """Tests para el PAPR por trama."""

    def test_constant_magnitude(self):
        """Verificar PAPR 0 dB para magnitud constante."""
        assert papr_db(TimeFrame(samples=np.exp(1j * np.arange(16)))).value_db == pytest.approx(0.0, abs=1e-12)

    def test_single_impulse(self):
        """Verificar [1,0,0,0] -> 10·log10(4) ≈ 6.0206 dB."""
        assert papr_db(TimeFrame(samples=[1, 0, 0, 0])).value_db == pytest.approx(6.0206, abs=1e-4)

    def test_alternating_signs(self):
        """Verificar [1,-1] -> 0 dB."""
        assert papr_db(TimeFrame(samples=[1, -1])).value_db == pytest.approx(0.0, abs=1e-12)

    def test_zero_frame_rejected(self):
        """Verificar que la trama nula produce DegenerateInputError."""
        with pytest.raises(DegenerateInputError):
            papr_db(TimeFrame(samples=[0, 0, 0]))

    def test_prefix_excluded_and_scale_invariant(self):
        """Verificar que el PAPR ignora el prefijo y no depende de la escala."""
        frame = TimeFrame(samples=[100, 1, 0, 0, 0], cp_len=1)
        assert papr_db(frame).value_db == pytest.approx(10 * np.log10(4), abs=1e-12)
        rng = np.random.default_rng(0)
        samples = rng.standard_normal(128) + 1j * rng.standard_normal(128)
        assert papr_db(TimeFrame(samples=samples)).value_db == pytest.approx(
            papr_db(TimeFrame(samples=3.7 * samples)).value_db, abs=1e-12
        )

    def test_batch_matches_direct_evaluation(self):
        """Verificar frame_paprs frente a la fórmula evaluada trama a trama."""
        cfg = SystemConfig(n_symbols=8)
        frames = transmit(cfg, np.zeros(8, dtype=np.uint8))
        expected = [10 * np.log10(np.max(np.abs(f.body) ** 2) / np.mean(np.abs(f.body) ** 2)) for f in frames]
        np.testing.assert_allclose(frame_paprs(frames), expected, atol=1e-12)


class TestCcdf:
    """Tests para la CCDF empírica."""

    def test_reference_table(self):
        """Verificar PAPRs [1,2,3,4] con umbrales [0, 2.5, 5] -> [1.0, 0.5, 0.0]."""
        table = ccdf([1, 2, 3, 4], [0, 2.5, 5])
        np.testing.assert_array_equal(table.columns["papr"], [1.0, 0.5, 0.0])

    def test_strict_inequality(self):
        """Verificar que un PAPR igual al umbral no cuenta como excedencia."""
        table = ccdf([PaprSample(value_db=2.0)], [1.0, 2.0], label="x")
        np.testing.assert_array_equal(table.columns["x"], [1.0, 0.0])

    def test_empty_rejected(self):
        """Verificar que la CCDF sin muestras produce DegenerateInputError."""
        with pytest.raises(DegenerateInputError):
            ccdf([], [0, 1])

    def test_monotone_and_bounded(self):
        """Verificar que la CCDF es no creciente y está en [0, 1]."""
        values = np.random.default_rng(1).uniform(0, 12, 500)
        column = ccdf(values, np.arange(0, 14, 0.1)).columns["papr"]
        assert np.all(np.diff(column) <= 0)
        assert column[0] <= 1 and column[-1] >= 0

    def test_invalid_table_rejected(self):
        """Verificar que una columna creciente no es una CCDF válida."""
        with pytest.raises(ValueError):
            CcdfTable(thresholds_db=[0, 1], columns={"x": np.array([0.1, 0.5])})

    def test_accumulator_merge_matches_single_pass(self):
        """Verificar que combinar acumuladores parciales reproduce la tabla completa en cualquier orden."""
        thresholds = np.arange(0, 12, 0.5)
        values = np.random.default_rng(2).uniform(0, 12, 300)
        whole = CcdfAccumulator(thresholds)
        whole.add("a", values)

        parts = []
        for chunk in np.array_split(values, 3):
            partial = CcdfAccumulator(thresholds)
            partial.add("a", chunk)
            parts.append(partial)
        forward = parts[0].merge(parts[1]).merge(parts[2])
        backward = parts[2].merge(parts[1].merge(parts[0]))

        np.testing.assert_array_equal(forward.table().columns["a"], whole.table().columns["a"])
        np.testing.assert_array_equal(backward.table().columns["a"], whole.table().columns["a"])

    def test_accumulator_grid_mismatch(self):
        """Verificar que no se combinan rejillas distintas."""
        with pytest.raises(SizingError):
            CcdfAccumulator([0, 1]).merge(CcdfAccumulator([0, 2]))

    def test_papr_at_probability(self):
        """Verificar el primer umbral con CCDF <= objetivo y NaN si no se alcanza."""
        table = CcdfTable(thresholds_db=[0, 1, 2], columns={"x": np.array([1.0, 0.5, 0.005])})
        assert papr_at_probability(table, "x", 0.01) == 2.0
        assert math.isnan(papr_at_probability(table, "x", 0.001))


class TestPsd:
    """Tests para la PSD de Welch."""

    def test_tone_peak_bin(self):
        """Verificar que un tono complejo concentra la potencia en su bin."""
        n = np.arange(256 * 40)
        tone = np.exp(2j * np.pi * 37 * n / 256)
        estimate = psd_welch(chunks(tone, 144), segment=256, overlap=0.5)
        assert int(np.argmax(estimate.power)) == 37
        assert estimate.density_db.max() == 0.0
        assert estimate.segment == 256

    def test_white_noise_is_flat(self):
        """Verificar que el ruido blanco da una PSD plana dentro de ±1.5 dB."""
        rng = np.random.default_rng(4)
        noise = rng.standard_normal(100_000) + 1j * rng.standard_normal(100_000)
        estimate = psd_welch(chunks(noise, 1000))
        level = 10 * np.log10(estimate.power / np.mean(estimate.power))
        assert np.max(np.abs(level)) < 1.5

    def test_total_power(self):
        """Verificar que la integral de la PSD coincide con la potencia media ±5%."""
        rng = np.random.default_rng(5)
        noise = 2.0 * (rng.standard_normal(50_000) + 1j * rng.standard_normal(50_000))
        estimate = psd_welch(chunks(noise, 500))
        integral = np.sum(estimate.power) / estimate.segment
        power = np.mean(np.abs(noise) ** 2)
        assert abs(integral - power) / power < 0.05

    def test_too_few_samples(self):
        """Verificar que menos muestras que un segmento producen DegenerateInputError."""
        with pytest.raises(DegenerateInputError):
            psd_welch([TimeFrame(samples=np.ones(100))], segment=256)
        with pytest.raises(DegenerateInputError):
            psd_welch([])

    def test_occupied_band_dominates(self):
        """Verificar que la banda ocupada supera a la banda libre en la señal MC-CDMA."""
        cfg = SystemConfig(n_symbols=128)
        bits = np.random.default_rng(6).integers(0, 2, cfg.bits_per_user)
        estimate = psd_welch(transmit(cfg, bits))
        mask = occupied_band_mask(estimate.frequencies, cfg.n_subcarriers, cfg.ifft_size)
        assert np.mean(estimate.power[mask]) > 10 * np.mean(estimate.power[~mask])
        assert out_of_band_level_db(estimate, cfg.n_subcarriers, cfg.ifft_size) < -10.0

    def test_average_psd(self):
        """Verificar que el promedio de dos estimaciones idénticas es la misma estimación."""
        rng = np.random.default_rng(7)
        noise = rng.standard_normal(4096) + 1j * rng.standard_normal(4096)
        estimate = psd_welch(chunks(noise, 512), label="ruido")
        averaged = average_psd([estimate, estimate])
        np.testing.assert_allclose(averaged.power, estimate.power)
        assert averaged.label == "ruido"
        with pytest.raises(DegenerateInputError):
            average_psd([])

    def test_mean_amplitude(self):
        """Verificar la amplitud media sobre los cuerpos de trama."""
        frames = [TimeFrame(samples=[9, 1, -1], cp_len=1), TimeFrame(samples=[9, 3j, 3], cp_len=1)]
        assert mean_amplitude(frames) == pytest.approx(2.0)


class TestBer:
    """Tests para la BER medida y teórica."""

    def test_reference_examples(self):
        """Verificar BER de flujos idénticos, opuestos y con un error."""
        assert ber([0, 1, 1, 0], [0, 1, 1, 0]) == 0.0
        assert ber([0, 0], [1, 1]) == 1.0
        assert ber([0, 1, 0, 1], [0, 1, 1, 1]) == 0.25
        assert bit_errors([0, 1, 0, 1], [0, 1, 1, 1]) == 1

    def test_length_mismatch(self):
        """Verificar que longitudes distintas producen SizingError."""
        with pytest.raises(SizingError):
            ber([0, 1], [0])
        with pytest.raises(DegenerateInputError):
            ber([], [])

    def test_ebn0_conversion(self):
        """Verificar Eb/N0 = SNR + 10·log10(N / bits por símbolo)."""
        assert ebn0_db([0.0], 128, Modulation.BPSK)[0] == pytest.approx(10 * np.log10(128))
        assert ebn0_db([-10.0], 128, Modulation.QPSK)[0] == pytest.approx(-10 + 10 * np.log10(64))

    def test_theoretical_curves(self):
        """Verificar los valores teóricos a 0 dB de Eb/N0."""
        assert theoretical_ber([0.0], ChannelKind.AWGN)[0] == pytest.approx(0.0786496, abs=1e-6)
        assert theoretical_ber([0.0], ChannelKind.RAYLEIGH_AWGN)[0] == pytest.approx(0.1464466, abs=1e-6)
        assert theoretical_ber([0.0, 10.0], ChannelKind.IDEAL).tolist() == [0.0, 0.0]
        awgn = theoretical_ber([0, 2, 4, 6, 8], ChannelKind.AWGN)
        assert np.all(np.diff(awgn) < 0)
