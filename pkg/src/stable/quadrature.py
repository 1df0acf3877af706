"""
Quadrature helpers on top of scipy.integrate.quad.
"""

import logging
import math
import warnings
from typing import Callable, Iterable, NamedTuple

from scipy import integrate

logger = logging.getLogger(__name__)


class QuadResult(NamedTuple):
    value: float
    abserr: float
    warned: bool


def integrate_pieces(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    points: Iterable[float] = (),
    tol: float = 1e-8,
    limit: int = 200,
) -> QuadResult:
    """
    Adaptive quadrature of ``func`` over [lower, upper], split at ``points``.

    Infinite ends are allowed; pieces with an infinite end go through the
    QAGI transformation. The integrand is never evaluated at a split point,
    so integrable singularities belong in ``points``.
    """
    edges = sorted({lower, upper, *(p for p in points if lower < p < upper and math.isfinite(p))})
    value, abserr, warned = 0.0, 0.0, False
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            piece, err = integrate.quad(func, a, b, epsabs=tol * 1e-6, epsrel=tol, limit=limit)
            value += piece
            abserr += err
        if caught:
            warned = True
            logger.debug(f"Quadrature warning on [{lower}, {upper}]: {caught[-1].message}")
    return QuadResult(value, abserr, warned)
