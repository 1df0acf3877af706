"""
Characteristic - Función característica conjunta exacta (cuadratura) y empírica.

The joint characteristic function of (Y(t_1), ..., Y(t_m)) is

    φ(θ) = exp(-2 ∫_E ∫_0^∞ sin²(Σ_j c_j(x) / (2 y^{1/α_j})) dy m(dx)),
    c_j(x) = θ_j b(t_j) C_{α_j}^{1/α_j} f(t_j, t_j, x),  α_j = α(t_j).

The y-integral is mapped by y = s^{-a}, a = min_j α_j, to
∫_0^∞ sin²(Φ(s) / 2) a s^{-a-1} ds with Φ(s) = Σ_j c_j s^{a/α_j}.
"""

import logging
import math
from typing import Any, Dict, List, NamedTuple, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import integrate

from src.engine.process_spec import ProcessSpec
from src.exceptions import AccuracyError, DomainError
from src.stable.quadrature import integrate_pieces
from src.stable.stable_core import c_alpha

logger = logging.getLogger(__name__)

# Past this many oscillations the mixed-index y-integral is cut and its tail averaged
MAX_OSCILLATION_RANGE = 1e4


class CfQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    times: List[float] = Field(min_length=1)
    thetas: List[float] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.times) != len(self.thetas):
            raise ValueError("times and thetas must have equal length")
        return self

    @property
    def m(self) -> int:
        return len(self.times)

    def negated(self) -> "CfQuery":
        return CfQuery(times=self.times, thetas=[-th for th in self.thetas])


class CfResult(NamedTuple):
    value: float
    error_bound: float

    def to_dict(self) -> Dict[str, Any]:
        return {"cf_value": self.value, "cf_error_bound": self.error_bound}


class EmpiricalCf(NamedTuple):
    real: float
    imag: float
    n: int


def _sine_power_integral(a: float, tol: float) -> Tuple[float, float]:
    """∫_0^∞ sin²(s/2) a s^{-a-1} ds with its error"""
    # (sin(s/2)/s)² is smooth at 0, leaving the algebraic factor s^{1-a}
    head, head_err = integrate.quad(
        lambda s: a * (0.5 * np.sinc(s / (2.0 * math.pi))) ** 2, 0.0, 2.0 * math.pi,
        weight="alg", wvar=(1.0 - a, 0.0), epsabs=tol * 1e-3, epsrel=tol * 1e-3,
    )
    end = 2.0 * math.pi
    cos_tail, cos_err = integrate.quad(lambda s: s ** (-a - 1.0), end, np.inf, weight="cos", wvar=1.0, epsabs=tol * 1e-3)
    tail = 0.5 * end ** (-a) - 0.5 * a * cos_tail
    return head + tail, head_err + 0.5 * a * cos_err


def _mixed_inner(c: np.ndarray, powers: np.ndarray, a: float, tol: float) -> Tuple[float, float]:
    """∫_0^∞ sin²(Φ(s)/2) a s^{-a-1} ds for Φ(s) = Σ c_j s^{p_j}, p_j ≤ 1"""
    if not np.any(c):
        return 0.0, 0.0
    slope = abs(float(c[powers == 1.0].sum()))
    cs, ps = c.tolist(), powers.tolist()

    def integrand(s):
        phase = sum(cj * s ** pj for cj, pj in zip(cs, ps))
        return math.sin(0.5 * phase) ** 2 * a * s ** (-a - 1.0)

    if slope > 0.0:
        end = min(max(1.0, (2.0 * a / (slope * tol)) ** (1.0 / (a + 1.0))), MAX_OSCILLATION_RANGE / slope)
        tail_err = 2.0 * a * end ** (-a - 1.0) / slope
    else:
        end = min(tol ** (-1.0 / a), MAX_OSCILLATION_RANGE)
        tail_err = 0.5 * end ** (-a)
    periods = int(end * float(np.abs(c).sum()) / (2.0 * math.pi)) + 1
    points = np.linspace(0.0, end, min(periods, 2000) + 1)[1:-1]
    head = integrate_pieces(integrand, 0.0, end, points, tol=tol)
    return head.value + 0.5 * end ** (-a), head.abserr + tail_err


def _coefficients(spec: ProcessSpec, query: CfQuery):
    alphas = np.array([float(spec.alpha.value(t)) for t in query.times])
    weights = np.array(
        [th * float(spec.b.value(t)) * c_alpha(a) ** (1.0 / a) for t, th, a in zip(query.times, query.thetas, alphas)]
    )
    return alphas, weights


def _kernel_column(spec: ProcessSpec, times: List[float], x: float) -> np.ndarray:
    t = np.asarray(times)
    return np.asarray(spec.kernel.values(t, t, x, spec.alpha), dtype=np.float64)


def fdd_cf(spec: ProcessSpec, query: CfQuery, tol: float = 1e-6) -> CfResult:
    """
    Exact joint characteristic function by nested adaptive quadrature.

    When every α(t_j) coincides the y-integral factorises as |Σ_j c_j(x)|^a
    times one universal constant, computed once with a Fourier-weight tail.
    Otherwise each x gets its own oscillatory y-quadrature with an averaged
    tail whose error enters the reported bound.
    """
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    alphas, weights = _coefficients(spec, query)
    if not np.any(weights):
        return CfResult(1.0, 0.0)

    a = float(alphas.min())
    powers = a / alphas
    times = list(query.times)

    if np.all(alphas == a):
        universal, universal_err = _sine_power_integral(a, tol)

        def outer(x):
            return abs(float(weights @ _kernel_column(spec, times, x))) ** a

        inner_relative = [universal_err / universal]
    else:
        universal = 1.0
        inner_relative = [0.0]

        def outer(x):
            value, err = _mixed_inner(weights * _kernel_column(spec, times, x), powers, a, tol * 0.1)
            if value > 0.0:
                inner_relative.append(err / value)
            return value

    lower, upper = spec.measure.support
    points = sorted({p for t in times for p in spec.kernel.singular_points(t)})
    result = integrate_pieces(outer, lower, upper, points, tol=tol * 0.1)
    integral = universal * result.value

    error = universal * result.abserr + abs(integral) * max(inner_relative)
    value = math.exp(-2.0 * integral)
    bound = 2.0 * value * error

    if not math.isfinite(value) or (result.warned and bound > tol):
        raise AccuracyError("Joint characteristic function quadrature did not converge", value, bound)
    logger.debug(f"fdd_cf m={query.m}: {value:.10g} +/- {bound:.3g}")
    return CfResult(min(value, 1.0), bound)


def empirical_cf(samples, query: CfQuery) -> EmpiricalCf:
    """(1/n) Σ_paths exp(i Σ_j θ_j Y_path(t_j)), split in real and imaginary parts"""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim == 1:
        samples = samples.reshape(-1, 1)
    if samples.shape[1] != query.m:
        raise DomainError(f"Samples have {samples.shape[1]} columns, the query has {query.m} times")
    phase = samples @ np.asarray(query.thetas, dtype=np.float64)
    return EmpiricalCf(real=float(np.mean(np.cos(phase))), imag=float(np.mean(np.sin(phase))), n=samples.shape[0])
