"""
Series Engine - Suma truncada de la serie de LePage para el campo X(t, u) y sus diagonales Y(t) = X(t, t).

    X(t, u) = b(u) C_{α(u)}^{1/α(u)} Σ_i γ_i Γ_i^{-1/α(u)} r(V_i)^{1/α(u)} f(t, u, V_i)

Finite spaces use r ≡ T, so the finite and sigma-finite series share one code
path. Sums run over i = 1..N in order with ``math.fsum``, which makes every
value independent of how grid points or paths are spread over threads.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, NamedTuple, Sequence

import numpy as np

from src.engine.process_spec import PathResult, ProcessSpec
from src.exceptions import DegenerateDrawError, DomainError, SingularEvaluationError
from src.kernels.kernel_spec import eval_kernel
from src.sampling.streams import SeriesDraw, draw_series, path_seed
from src.stable.stable_core import c_alpha

logger = logging.getLogger(__name__)

DEGENERACY_LIMIT = 0.001


class JointSample(NamedTuple):
    values: np.ndarray  # n_paths x m
    redraws: int


class MarginalSample(NamedTuple):
    values: np.ndarray
    redraws: int


def _ratios(spec: ProcessSpec, draw: SeriesDraw) -> np.ndarray:
    measure = spec.measure
    if measure.is_finite:
        return np.full(draw.n_terms, measure.total_mass)
    return measure.r_of(draw.points)


def _series_terms(spec: ProcessSpec, draw: SeriesDraw, ratios: np.ndarray, t: float, u: float, alpha_u: float):
    kernel = eval_kernel(spec.kernel, t, u, draw.points, spec.alpha)
    inv = 1.0 / alpha_u
    with np.errstate(over="ignore", invalid="ignore"):
        return draw.signs * np.power(draw.gammas, -inv) * np.power(ratios, inv) * kernel


def _field_value(spec: ProcessSpec, draw: SeriesDraw, ratios: np.ndarray, t: float, u: float) -> float:
    b_u = float(spec.b.value(u))
    if b_u == 0.0:
        return 0.0
    alpha_u = float(spec.alpha.value(u))
    terms = _series_terms(spec, draw, ratios, t, u, alpha_u)
    bad = ~np.isfinite(terms)
    if np.any(bad):
        index = int(np.flatnonzero(bad)[0])
        raise DegenerateDrawError(f"Series term {index} is not finite at t={t:g}", term_index=index)
    value = b_u * c_alpha(alpha_u) ** (1.0 / alpha_u) * math.fsum(terms)
    if not math.isfinite(value):
        raise DegenerateDrawError(f"Series sum overflowed at t={t:g}", term_index=draw.n_terms - 1)
    return value


def field_value(spec: ProcessSpec, draw: SeriesDraw, t: float, u: float) -> float:
    """X(t, u) truncated to the terms of ``draw``"""
    return _field_value(spec, draw, _ratios(spec, draw), float(t), float(u))


def tail_estimate(spec: ProcessSpec, draw: SeriesDraw, t: float) -> float:
    """
    Heuristic size of the omitted terms Σ_{i>N} at the diagonal point (t, t).

    The remainder is a signed sum whose variance is bounded by
    sup|r^{1/α} f|² Σ_{i>N} Γ_i^{-2/α} ≈ sup² ∫_{Γ_N}^∞ y^{-2/α} dy; the sup is taken
    over the points already drawn. Diagnostic only, not a guarantee.
    """
    t = float(t)
    b_u = abs(float(spec.b.value(t)))
    if b_u == 0.0 or draw.n_terms == 0:
        return 0.0
    alpha_u = float(spec.alpha.value(t))
    inv = 1.0 / alpha_u
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        weighted = np.abs(np.power(_ratios(spec, draw), inv) * spec.kernel.values(t, t, draw.points, spec.alpha))
    weighted = weighted[np.isfinite(weighted)]
    sup = float(weighted.max()) if weighted.size else 0.0
    gamma_n = float(draw.gammas[-1])
    remainder = math.sqrt(gamma_n ** (1.0 - 2.0 * inv) / (2.0 * inv - 1.0))
    return b_u * c_alpha(alpha_u) ** inv * sup * remainder


def _check_grid(spec: ProcessSpec, grid: np.ndarray) -> None:
    if grid.size > 1 and np.any(np.diff(grid) <= 0.0):
        raise DomainError("Time grids must be strictly increasing")
    lower, upper = spec.kernel.time_domain
    if grid.size and (grid[0] < lower or grid[-1] > upper):
        raise DomainError(f"Grid [{grid[0]:g}, {grid[-1]:g}] leaves the time domain [{lower:g}, {upper:g}]")


def _ordered_map(func: Callable, items: Sequence, workers: int) -> List:
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def diagonal_path(spec: ProcessSpec, grid: Iterable[float], workers: int = 1) -> PathResult:
    """
    Y(t) = X(t, t) along ``grid`` from one draw seeded by ``spec.seed``.

    A singular kernel hit aborts the whole path: a path is one realisation and
    is never patched.
    """
    grid = np.asarray(list(grid), dtype=np.float64)
    if grid.size == 0:
        return PathResult(grid=[], values=[], n_terms=spec.n_terms, seed=spec.seed, tail_bound=[])
    _check_grid(spec, grid)

    draw = draw_series(spec.measure, spec.n_terms, spec.seed)
    ratios = _ratios(spec, draw)

    def point(t):
        try:
            return _field_value(spec, draw, ratios, t, t), tail_estimate(spec, draw, t)
        except SingularEvaluationError as e:
            raise DegenerateDrawError(
                f"Path with seed {spec.seed} hits a kernel singularity at t={t:g}", term_index=e.index
            ) from e

    results = _ordered_map(point, [float(t) for t in grid], workers)
    logger.info(f"Path synthesized: {grid.size} points, {spec.n_terms} terms, seed {spec.seed}")
    return PathResult(
        grid=grid,
        values=[v for v, _ in results],
        n_terms=spec.n_terms,
        seed=spec.seed,
        tail_bound=[b for _, b in results],
    )


def sample_joint(
    spec: ProcessSpec,
    times: Sequence[float],
    n_paths: int,
    seed: int,
    workers: int = 1,
    degeneracy_limit: float = DEGENERACY_LIMIT,
) -> JointSample:
    """
    (Y(t_1), ..., Y(t_m)) on ``n_paths`` independent draws; path k uses
    ``path_seed(seed, k, attempt)``. Degenerate draws are re-drawn with the
    next attempt number and counted.
    """
    if n_paths < 1:
        raise DomainError("n_paths must be at least 1")
    times = [float(t) for t in times]
    if not times:
        raise DomainError("At least one time is needed")
    lower, upper = spec.kernel.time_domain
    if min(times) < lower or max(times) > upper:
        raise DomainError(f"Times leave the time domain [{lower:g}, {upper:g}]")
    allowed = int(degeneracy_limit * n_paths)

    def one_path(k):
        attempt = 0
        while True:
            draw = draw_series(spec.measure, spec.n_terms, path_seed(seed, k, attempt))
            ratios = _ratios(spec, draw)
            try:
                return [_field_value(spec, draw, ratios, t, t) for t in times], attempt
            except (SingularEvaluationError, DegenerateDrawError) as e:
                attempt += 1
                logger.warning(f"Degenerate draw on path {k} (attempt {attempt}): {e}")
                if attempt > allowed:
                    raise DegenerateDrawError(
                        f"Path {k} stayed degenerate after {attempt} draws", term_index=getattr(e, "term_index", None)
                    ) from e

    results = _ordered_map(one_path, list(range(n_paths)), workers)
    redraws = sum(attempts for _, attempts in results)
    if redraws > allowed:
        raise DegenerateDrawError(f"{redraws} degenerate draws in {n_paths} paths exceed the limit of {allowed}")
    values = np.array([row for row, _ in results], dtype=np.float64).reshape(n_paths, len(times))
    logger.info(f"Joint sample: {n_paths} paths x {len(times)} times, {redraws} re-draws")
    return JointSample(values=values, redraws=redraws)


def sample_marginal(
    spec: ProcessSpec,
    t: float,
    n_paths: int,
    seed: int,
    workers: int = 1,
    degeneracy_limit: float = DEGENERACY_LIMIT,
) -> MarginalSample:
    """n_paths independent copies of Y(t)"""
    joint = sample_joint(spec, [t], n_paths, seed, workers=workers, degeneracy_limit=degeneracy_limit)
    return MarginalSample(values=joint.values[:, 0].copy(), redraws=joint.redraws)


def truncation_gaps(
    spec: ProcessSpec, t: float, levels: Sequence[int], seeds: Iterable[int]
) -> np.ndarray:
    """
    |Y_N(t) - Y_{2N}(t)| for every N in ``levels`` and every seed, one row per
    level. Both sums come from the same 2N-term draw.
    """
    seeds = list(seeds)
    gaps = np.empty((len(levels), len(seeds)))
    for row, n in enumerate(levels):
        for col, s in enumerate(seeds):
            full = draw_series(spec.measure, 2 * n, s)
            head = SeriesDraw(gammas=full.gammas[:n], points=full.points[:n], signs=full.signs[:n], seed=s)
            gaps[row, col] = abs(field_value(spec, full, t, t) - field_value(spec, head, t, t))
    return gaps

