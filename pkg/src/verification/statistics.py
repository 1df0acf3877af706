"""
Statistics - Tests de Kolmogorov-Smirnov entre la serie y el oráculo estable.
"""

import logging
import math
from typing import Any, Dict, NamedTuple, Sequence

import numpy as np
from pydantic import BaseModel
from scipy import stats

from src.engine.process_spec import ProcessSpec
from src.engine.series_engine import DEGENERACY_LIMIT, sample_marginal
from src.exceptions import DomainError
from src.stable.stable_core import StableParams, f_alpha_norm, stable_oracle_sample

logger = logging.getLogger(__name__)

KS_BAND_FACTOR = 1.63
KS_TRUNCATION_ALLOWANCE = 0.01


class KsResult(NamedTuple):
    statistic: float
    p_value: float


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> KsResult:
    """Two-sample Kolmogorov-Smirnov statistic with its asymptotic p-value"""
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.size == 0 or b.size == 0:
        raise DomainError("Both samples must be non-empty")
    result = stats.ks_2samp(a, b, method="asymp")
    return KsResult(float(result.statistic), float(result.pvalue))


def ks_band(n: int, factor: float = KS_BAND_FACTOR, allowance: float = KS_TRUNCATION_ALLOWANCE) -> float:
    """Kolmogorov 99% band plus the truncation allowance"""
    return factor / math.sqrt(n) + allowance


def marginal_scale(spec: ProcessSpec, t: float, tol: float = 1e-8) -> float:
    """σ of Y(t) at constant α: |b(t)| ||f(t, t, .)||_α on (E, m)"""
    alpha = float(spec.alpha.value(t))
    norm = f_alpha_norm(
        lambda x: spec.kernel.values(t, t, x, spec.alpha),
        alpha,
        spec.measure,
        tol=tol,
        points=spec.kernel.singular_points(t),
    )
    return abs(float(spec.b.value(t))) * norm


class StableCheckReport(BaseModel):
    t: float
    alpha: float
    sigma: float
    n_paths: int
    ks_D: float
    ks_p: float
    band: float
    redraws: int
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


def stable_ks_check(
    spec: ProcessSpec,
    t: float,
    n_paths: int,
    seed: int,
    workers: int = 1,
    degeneracy_limit: float = DEGENERACY_LIMIT,
    band_factor: float = KS_BAND_FACTOR,
    allowance: float = KS_TRUNCATION_ALLOWANCE,
) -> StableCheckReport:
    """
    Series marginal at t against the independent stable sampler with the
    scale given by the kernel norm. Only meaningful for constant α.
    """
    low, high = spec.alpha.value_range()
    if low != high:
        raise DomainError("The stable-law check needs a constant alpha")
    sigma = marginal_scale(spec, t)
    marginal = sample_marginal(spec, t, n_paths, seed, workers=workers, degeneracy_limit=degeneracy_limit)
    oracle = stable_oracle_sample(StableParams(alpha=low, sigma=sigma), n_paths, seed)
    ks = ks_two_sample(marginal.values, oracle)
    band = ks_band(n_paths, band_factor, allowance)
    report = StableCheckReport(
        t=float(t),
        alpha=low,
        sigma=sigma,
        n_paths=n_paths,
        ks_D=ks.statistic,
        ks_p=ks.p_value,
        band=band,
        redraws=marginal.redraws,
        passed=ks.statistic < band,
    )
    logger.info(f"Stable check at t={t:g}: D={ks.statistic:.4f} (band {band:.4f}), sigma={sigma:.6g}")
    return report
