"""
Tests unitarios para la compansión ley μ.
Verifica valores de referencia, desigualdades de compresión, inversión exacta y renormalización.
"""

import pytest
import sys
import os

import numpy as np

# Agregar el directorio raíz del proyecto al path para importar módulos
project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(project_root)

from src.dsp.companding import (
    compress_magnitude,
    expand_magnitude,
    average_amplitude,
    mu_compress,
    mu_expand,
)
from src.errors import DegenerateInputError
from src.schemas.signals import TimeFrame
from src.schemas.system import CompanderParams
from src.services.metrics import papr_db


def random_frame(size=144, seed=0):
    rng = np.random.default_rng(seed)
    return TimeFrame(samples=rng.standard_normal(size) + 1j * rng.standard_normal(size))


class TestMagnitudeLaw:
    """Tests para las leyes de magnitud."""

    def test_reference_value(self):
        """Verificar μ=2, s=1, |p|=0.5 -> ln2/ln3 ≈ 0.630930."""
        value = compress_magnitude(np.array([0.5]), CompanderParams(mu=2, s=1))[0]
        assert abs(value - np.log(2) / np.log(3)) < 1e-12
        assert abs(value - 0.630930) < 1e-6

    def test_fixed_points(self):
        """Verificar que 0 -> 0 y s -> s."""
        params = CompanderParams(mu=5, s=0.7)
        np.testing.assert_allclose(compress_magnitude(np.array([0.0, 0.7]), params), [0.0, 0.7], atol=1e-15)

    @pytest.mark.parametrize("mu", [2, 3, 5])
    def test_compression_inequalities(self, mu):
        """Verificar |v| >= |p| por debajo de s y |v| <= |p| por encima."""
        params = CompanderParams(mu=mu, s=1.0)
        magnitude = np.random.default_rng(mu).uniform(0, 4, 100_000)
        compressed = compress_magnitude(magnitude, params)
        below = magnitude <= 1.0
        assert np.all(compressed[below] >= magnitude[below] - 1e-12)
        assert np.all(compressed[~below] <= magnitude[~below] + 1e-12)

    @pytest.mark.parametrize("mu", [2, 3, 5])
    def test_expand_inverts_compress(self, mu):
        """Verificar expand(compress(|p|)) = |p|."""
        params = CompanderParams(mu=mu, s=0.8)
        magnitude = np.random.default_rng(10 + mu).uniform(0, 5, 1000)
        np.testing.assert_allclose(expand_magnitude(compress_magnitude(magnitude, params), params), magnitude, rtol=1e-9)


class TestFrameCompanding:
    """Tests para la compansión de tramas completas."""

    def test_average_amplitude(self):
        """Verificar s = mean|p| y el rechazo de la trama nula."""
        assert average_amplitude(TimeFrame(samples=[0, 2j])) == 1.0
        with pytest.raises(DegenerateInputError):
            average_amplitude(TimeFrame(samples=[0, 0]))

    def test_zero_samples_stay_zero(self):
        """Verificar que las muestras nulas no cambian."""
        frame = TimeFrame(samples=[0, 0.5, 0])
        compressed = mu_compress(frame, CompanderParams(mu=2, s=1))
        assert compressed.samples[0] == 0 and compressed.samples[2] == 0

    @pytest.mark.parametrize("mu", [2, 3, 5])
    def test_round_trip_and_phase(self, mu):
        """Verificar inversión exacta y conservación de la fase."""
        frame = random_frame(seed=mu)
        params = CompanderParams(mu=mu, s=average_amplitude(frame))
        compressed = mu_compress(frame, params)
        np.testing.assert_allclose(np.angle(compressed.samples), np.angle(frame.samples), atol=1e-12)
        assert compressed.amplitude_ref == params.s
        np.testing.assert_allclose(mu_expand(compressed, params).samples, frame.samples, rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("mu", [2, 3, 5])
    def test_renormalized_power(self, mu):
        """Verificar que la renormalización iguala la potencia media y se deshace al expandir."""
        frame = random_frame(seed=20 + mu)
        params = CompanderParams(mu=mu, s=average_amplitude(frame))
        compressed = mu_compress(frame, params, renormalize=True)
        original_power = np.mean(np.abs(frame.samples) ** 2)
        companded_power = np.mean(np.abs(compressed.samples) ** 2)
        assert abs(companded_power - original_power) / original_power < 1e-12
        expanded = mu_expand(compressed, params)
        assert expanded.power_gain == 1.0
        np.testing.assert_allclose(expanded.samples, frame.samples, rtol=1e-9, atol=1e-12)

    def test_papr_does_not_increase(self):
        """Verificar PAPR(compress(p)) <= PAPR(p) trama a trama."""
        for seed in range(50):
            frame = random_frame(seed=seed)
            params = CompanderParams(mu=3, s=average_amplitude(frame))
            assert papr_db(mu_compress(frame, params)).value_db <= papr_db(frame).value_db + 1e-9

    def test_papr_decreases_with_mu(self):
        """Verificar que un μ mayor nunca aumenta el PAPR de la misma trama."""
        for seed in range(50):
            frame = random_frame(seed=100 + seed)
            s = average_amplitude(frame)
            paprs = [papr_db(mu_compress(frame, CompanderParams(mu=mu, s=s))).value_db for mu in (2, 3, 5)]
            assert paprs[0] + 1e-9 >= paprs[1] and paprs[1] + 1e-9 >= paprs[2]
