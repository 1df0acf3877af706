"""
Streams - Secuencias aleatorias de la serie: llegadas de Poisson Γ_i, signos γ_i y puntos V_i.

Every sequence comes from its own numpy ``SeedSequence`` keyed by
``(seed, stream_id)``, so the three sequences of a draw are independent and
changing how one of them is consumed never shifts the others. Seed
derivation only uses numpy's integer hashing, which is identical on every
platform.
"""

import logging
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.exceptions import DegenerateDrawError, DomainError
from src.sampling.measure import MeasureSpace

logger = logging.getLogger(__name__)

GAMMA_STREAM = 1
POINT_STREAM = 2
SIGN_STREAM = 3


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one (seed, stream) pair"""
    if seed < 0:
        raise DomainError("Seeds must be non-negative integers")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(stream)])))


def path_seed(seed: int, path_index: int, attempt: int = 0) -> int:
    """
    Seed of Monte Carlo path ``path_index``. ``attempt`` > 0 gives the
    replacement seeds used when a draw turns out degenerate.
    """
    words = np.random.SeedSequence([int(seed), int(path_index), int(attempt)]).generate_state(2, dtype=np.uint32)
    return (int(words[0]) << 32) | int(words[1])


def exponential_variates(rng: np.random.Generator, n: int) -> np.ndarray:
    """Unit-mean exponentials by inversion, one uniform per variate"""
    return -np.log1p(-rng.random(n))


def poisson_arrivals(n: int, seed: int) -> np.ndarray:
    """Arrival times Γ_1 < Γ_2 < ... of a unit-rate Poisson process"""
    if n < 0:
        raise DomainError("n must be non-negative")
    return np.cumsum(exponential_variates(stream_rng(seed, GAMMA_STREAM), n))


def rademacher(n: int, seed: int) -> np.ndarray:
    """Fair i.i.d. signs in {-1, +1}"""
    if n < 0:
        raise DomainError("n must be non-negative")
    uniforms = stream_rng(seed, SIGN_STREAM).random(n)
    return np.where(uniforms < 0.5, -1, 1).astype(np.int8)


def sample_points(measure: MeasureSpace, n: int, seed: int) -> np.ndarray:
    """i.i.d. points V_i with law ĥ"""
    if n < 0:
        raise DomainError("n must be non-negative")
    uniforms = stream_rng(seed, POINT_STREAM).random(n)
    if not measure.is_finite:
        # u = 0 has no preimage on two-sided families; probability 2^-53 per point
        uniforms[uniforms == 0.0] = np.finfo(np.float64).eps / 2.0
    return measure.inverse_cdf(uniforms)


def _frozen(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True).reshape(-1)
    array.setflags(write=False)
    return array


class SeriesDraw(BaseModel):
    """One realisation of (Γ_i, V_i, γ_i), i = 1..N"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gammas: np.ndarray
    points: np.ndarray
    signs: np.ndarray
    seed: int = Field(default=0, ge=0)

    @field_validator("gammas", "points", mode="before")
    @classmethod
    def _as_float_array(cls, value):
        return _frozen(value, np.float64)

    @field_validator("signs", mode="before")
    @classmethod
    def _as_sign_array(cls, value):
        return _frozen(value, np.int8)

    @model_validator(mode="after")
    def _check_sequences(self):
        n = self.gammas.size
        if self.points.size != n or self.signs.size != n:
            raise ValueError("gammas, points and signs must have equal length")
        if not np.all(np.abs(self.signs) == 1):
            raise ValueError("signs must be -1 or +1")
        if n and (self.gammas[0] <= 0.0 or np.any(np.diff(self.gammas) <= 0.0)):
            index = int(np.argmax(np.diff(np.concatenate(([0.0], self.gammas))) <= 0.0))
            raise DegenerateDrawError("Arrival times must be positive and strictly increasing", term_index=index)
        return self

    @property
    def n_terms(self) -> int:
        return int(self.gammas.size)

    def to_dict(self) -> Dict[str, Any]:
        """Diagnostic dump with the documented field names"""
        return {
            "gammas": self.gammas.tolist(),
            "points": self.points.tolist(),
            "signs": [int(s) for s in self.signs],
            "seed": self.seed,
        }


def draw_series(measure: MeasureSpace, n: int, seed: int) -> SeriesDraw:
    """Draw the three independent sequences of the series, truncated to n terms"""
    if n < 1:
        raise DomainError("A series draw needs at least one term")
    draw = SeriesDraw(
        gammas=poisson_arrivals(n, seed),
        points=sample_points(measure, n, seed),
        signs=rademacher(n, seed),
        seed=seed,
    )
    logger.debug(f"Series draw: {n} terms on {measure.label}, seed {seed}")
    return draw

