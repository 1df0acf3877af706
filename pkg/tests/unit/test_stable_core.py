"""
Tests unitarios para Stable Core
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import integrate, special

from src.exceptions import DomainError, NonIntegrableKernelError
from src.sampling.measure import MeasureSpace
from src.stable.stable_core import (
    StableParams,
    c_alpha,
    c_alpha_quadrature,
    f_alpha_norm,
    sine_integral,
    stable_cf,
    stable_oracle_sample,
)


class TestCAlpha:

    def test_value_at_one(self):
        """Test que C_1 = 2/π"""
        assert c_alpha(1.0) == pytest.approx(2.0 / math.pi, abs=1e-12)

    @pytest.mark.parametrize("alpha,expected", [(0.5, 0.7978845608), (1.5, 0.3989422804)])
    def test_reference_values(self, alpha, expected):
        """Test de valores de referencia"""
        assert c_alpha(alpha) == pytest.approx(expected, rel=1e-9)

    def test_closed_form_identity(self):
        """Test que C_α Γ(2-α) cos(πα/2) = 1 - α fuera de un entorno de 1"""
        for alpha in np.linspace(0.05, 1.95, 41):
            if 0.99 < alpha < 1.01:
                continue
            lhs = c_alpha(alpha) * special.gamma(2.0 - alpha) * math.cos(math.pi * alpha / 2.0)
            assert abs(lhs - (1.0 - alpha)) <= 1e-10

    def test_continuity_at_one(self):
        """Test de continuidad en α = 1"""
        for alpha in (1.0 - 1e-6, 1.0 + 1e-6, 1.0 - 9e-4, 1.0 + 9e-4):
            assert abs(c_alpha(alpha) - 2.0 / math.pi) <= 1e-4 + 2.0 * abs(alpha - 1.0)

    def test_taylor_matches_closed_form_at_switch(self):
        """Test que la expansión coincide con la forma cerrada en el mismo α junto al cambio"""
        for alpha in (1.0 - 0.999e-3, 1.0 + 0.999e-3):
            closed = (1.0 - alpha) / (special.gamma(2.0 - alpha) * math.cos(math.pi * alpha / 2.0))
            assert c_alpha(alpha) == pytest.approx(closed, rel=1e-8)
        outside = 1.0 + 1.001e-3
        closed = (1.0 - outside) / (special.gamma(2.0 - outside) * math.cos(math.pi * outside / 2.0))
        assert c_alpha(outside) == closed

    @pytest.mark.parametrize("alpha", [0.0, 2.0, -0.5, 2.5])
    def test_domain_error(self, alpha):
        """Test de α fuera de (0, 2)"""
        with pytest.raises(DomainError):
            c_alpha(alpha)

    @pytest.mark.parametrize("alpha", [0.3, 0.7, 1.2, 1.5, 1.8])
    def test_quadrature_agrees(self, alpha):
        """Test que la integral del seno da el mismo C_α"""
        assert abs(1.0 / c_alpha(alpha) - sine_integral(alpha)) <= 1e-8
        assert c_alpha_quadrature(alpha) == pytest.approx(c_alpha(alpha), rel=1e-8)

    def test_sine_integral_half(self):
        """Test que ∫ x^(-1/2) sin x dx = √(π/2)"""
        assert sine_integral(0.5) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-10)

    def test_sine_integral_is_silent(self, recwarn):
        """Test que la cuadratura del seno no propaga IntegrationWarning"""
        for alpha in (0.1, 0.5, 1.0, 1.5, 1.9, 1.99):
            assert math.isfinite(sine_integral(alpha))
        assert not [w for w in recwarn if issubclass(w.category, integrate.IntegrationWarning)]


class TestStableCf:

    def test_zero_theta(self):
        assert stable_cf(StableParams(alpha=1.5), 0.0) == 1.0

    @pytest.mark.parametrize("alpha,theta,expected", [(1.5, 1.0, math.exp(-1.0)), (2.0, 2.0, math.exp(-4.0))])
    def test_direct_formula(self, alpha, theta, expected):
        """Test de exp(-σ^α |θ|^α)"""
        assert stable_cf(StableParams(alpha=alpha, sigma=1.0), theta) == pytest.approx(expected, rel=1e-12)

    def test_vectorised(self):
        values = stable_cf(StableParams(alpha=1.5, sigma=2.0), np.array([-1.0, 0.0, 1.0]))
        assert values[0] == values[2]
        assert values[1] == 1.0

    def test_params_validation(self):
        """Test de parámetros inválidos"""
        with pytest.raises(ValidationError):
            StableParams(alpha=2.5)
        with pytest.raises(ValidationError):
            StableParams(alpha=1.5, sigma=-1.0)


class TestStableOracle:

    def test_empty(self):
        assert stable_oracle_sample(StableParams(alpha=1.5), 0, seed=1).size == 0

    def test_deterministic(self):
        """Test que la misma semilla da la misma muestra"""
        params = StableParams(alpha=1.3, sigma=0.7)
        first = stable_oracle_sample(params, 100, seed=9)
        second = stable_oracle_sample(params, 100, seed=9)
        assert np.array_equal(first, second)
        assert not np.array_equal(first, stable_oracle_sample(params, 100, seed=10))

    def test_gaussian_limit_variance(self):
        """Test que S_2(1, 0, 0) tiene varianza 2"""
        sample = stable_oracle_sample(StableParams(alpha=2.0), 200_000, seed=4)
        assert np.var(sample) == pytest.approx(2.0, abs=0.05)

    def test_empirical_cf_matches(self):
        """Test que la función característica empírica coincide con stable_cf"""
        n = 20_000
        params = StableParams(alpha=1.5, sigma=1.0)
        sample = stable_oracle_sample(params, n, seed=21)
        for theta in (0.5, 1.0, 2.0):
            empirical = float(np.mean(np.cos(theta * sample)))
            assert abs(empirical - stable_cf(params, theta)) <= 4.0 / math.sqrt(n)

    def test_scale(self):
        """Test que σ escala la muestra"""
        unit = stable_oracle_sample(StableParams(alpha=1.7, sigma=1.0), 50, seed=2)
        scaled = stable_oracle_sample(StableParams(alpha=1.7, sigma=3.0), 50, seed=2)
        assert np.allclose(scaled, 3.0 * unit)


class TestFAlphaNorm:

    def test_indicator_norm(self):
        """Test que ||1_[0,t]||_α = t^(1/α) en [0, T]"""
        measure = MeasureSpace.finite(2.0)
        t = 1.5
        norm = f_alpha_norm(lambda x: 1.0 if 0.0 <= x <= t else 0.0, 1.5, measure, points=[0.0, t])
        assert norm == pytest.approx(t ** (1.0 / 1.5), rel=1e-8)

    def test_zero_kernel(self):
        assert f_alpha_norm(lambda x: 0.0, 1.2, MeasureSpace.finite(1.0)) == 0.0

    def test_alpha_one(self):
        """Test de la norma L1 con α = 1"""
        norm = f_alpha_norm(lambda x: 1.0 if x <= 1.0 else 0.0, 1.0, MeasureSpace.finite(3.0), points=[1.0])
        assert norm == pytest.approx(1.0, rel=1e-8)

    def test_overflow_guard(self):
        """Test que una integral enorme se trata como no integrable"""
        with pytest.raises(NonIntegrableKernelError):
            f_alpha_norm(lambda x: 1e160, 1.9, MeasureSpace.finite(1.0))

    def test_domain_error(self):
        with pytest.raises(DomainError):
            f_alpha_norm(lambda x: 1.0, 2.0, MeasureSpace.finite(1.0))
