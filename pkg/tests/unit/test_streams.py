"""
Tests unitarios para Streams
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from src.exceptions import DegenerateDrawError, DomainError
from src.sampling.measure import HALF_LINE_DYADIC, TWO_SIDED_ZETA, MeasureSpace
from src.sampling.streams import (
    SeriesDraw,
    draw_series,
    path_seed,
    poisson_arrivals,
    rademacher,
    sample_points,
    stream_rng,
)


class TestPoissonArrivals:

    def test_empty(self):
        assert poisson_arrivals(0, seed=1).size == 0

    def test_stub_exponentials(self, mocker):
        """Test con exponenciales iguales a 1: Γ = (1, 2, ..., n)"""
        mocker.patch("src.sampling.streams.exponential_variates", side_effect=lambda rng, n: np.ones(n))
        assert np.array_equal(poisson_arrivals(5, seed=0), np.arange(1.0, 6.0))

    def test_increasing_and_positive(self):
        gammas = poisson_arrivals(1000, seed=5)
        assert gammas[0] > 0.0
        assert np.all(np.diff(gammas) > 0.0)

    def test_law_of_large_numbers(self):
        """Test que Γ_n / n se concentra en 1"""
        n = 200
        ratios = [poisson_arrivals(n, seed=s)[-1] / n for s in range(1000)]
        assert abs(np.mean(ratios) - 1.0) <= 4.0 / math.sqrt(1000 * n)

    def test_negative_n(self):
        with pytest.raises(DomainError):
            poisson_arrivals(-1, seed=0)


class TestRademacher:

    def test_empty(self):
        assert rademacher(0, seed=0).size == 0

    def test_deterministic(self):
        assert np.array_equal(rademacher(50, seed=3), rademacher(50, seed=3))

    def test_balanced(self):
        """Test que la media de 10^5 signos es pequeña"""
        n = 100_000
        signs = rademacher(n, seed=8)
        assert set(np.unique(signs)) == {-1, 1}
        assert abs(float(np.mean(signs))) <= 4.0 / math.sqrt(n)


class TestSeeds:

    def test_negative_seed(self):
        with pytest.raises(DomainError):
            stream_rng(-1, 1)

    def test_path_seed(self):
        """Test que las semillas de trayectoria son deterministas y distintas"""
        assert path_seed(7, 3) == path_seed(7, 3, 0)
        seeds = {path_seed(7, k, a) for k in range(20) for a in range(3)}
        assert len(seeds) == 60
        assert all(s >= 0 for s in seeds)

    def test_streams_are_independent_of_each_other(self):
        """Test que cada secuencia usa su propio generador"""
        a = stream_rng(11, 1).random(5)
        b = stream_rng(11, 2).random(5)
        assert not np.array_equal(a, b)


class TestDrawSeries:

    def test_bit_identical(self):
        first = draw_series(TWO_SIDED_ZETA, 100, seed=12)
        second = draw_series(TWO_SIDED_ZETA, 100, seed=12)
        assert first.to_dict() == second.to_dict()

    def test_single_term(self):
        draw = draw_series(MeasureSpace.finite(1.0), 1, seed=0)
        assert draw.n_terms == 1
        assert draw.gammas[0] > 0.0
        assert draw.points.size == draw.signs.size == 1

    def test_zero_terms(self):
        with pytest.raises(DomainError):
            draw_series(HALF_LINE_DYADIC, 0, seed=0)

    def test_prefix(self):
        """Test que los N primeros términos de un sorteo de 2N coinciden con el sorteo de N"""
        short = draw_series(HALF_LINE_DYADIC, 64, seed=4)
        long = draw_series(HALF_LINE_DYADIC, 128, seed=4)
        assert np.array_equal(long.gammas[:64], short.gammas)
        assert np.array_equal(long.points[:64], short.points)
        assert np.array_equal(long.signs[:64], short.signs)

    def test_arrays_are_read_only(self):
        draw = draw_series(MeasureSpace.finite(1.0), 3, seed=0)
        with pytest.raises(ValueError):
            draw.gammas[0] = 1.0

    def test_points_follow_block_weights(self):
        """Test chi-cuadrado de los puntos frente a los pesos de bloque"""
        n = 100_000
        points = sample_points(HALF_LINE_DYADIC, n, seed=17)
        blocks = HALF_LINE_DYADIC.block_index(points)
        observed = [np.sum(blocks == j) for j in range(1, 10)] + [np.sum(blocks >= 10)]
        expected = [n * 2.0 ** -j for j in range(1, 10)] + [n * 2.0 ** -9]
        assert stats.chisquare(observed, expected).pvalue > 0.001


class TestSeriesDraw:

    def test_non_increasing_gammas(self):
        """Test que tiempos de llegada no crecientes son un sorteo degenerado"""
        with pytest.raises(DegenerateDrawError) as excinfo:
            SeriesDraw(gammas=[1.0, 1.0], points=[0.1, 0.2], signs=[1, 1])
        assert excinfo.value.term_index == 1

    def test_bad_signs(self):
        with pytest.raises(ValidationError):
            SeriesDraw(gammas=[1.0], points=[0.1], signs=[0])

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            SeriesDraw(gammas=[1.0, 2.0], points=[0.1], signs=[1, -1])

    def test_to_dict_fields(self, stub_draw):
        assert stub_draw.to_dict() == {"gammas": [1.0, 2.0], "points": [0.3, 0.7], "signs": [1, -1], "seed": 0}
