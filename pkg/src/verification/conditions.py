"""
Conditions - Auditoría numérica de las condiciones de integrabilidad de los núcleos.

For w, t in B(u, ε) each condition asks for

    sup_t ∫_E sup_w |g(t, w, x)|^{α(w)} m(dx) < ∞

with g = f, f'_u, f log|f| or f log r. Both suprema are sampled on finite
grids, so a "finite" verdict is a necessary check only.
"""

import logging
import math
from typing import Any, Callable, Dict, List

import numpy as np
from pydantic import BaseModel, Field

from src.engine.process_spec import ProcessSpec
from src.exceptions import DomainError
from src.stable.quadrature import integrate_pieces

logger = logging.getLogger(__name__)

AUDIT_GRID_SIZE = 33
DIVERGENCE_RATIO = 1.5
DOMAIN_DOUBLINGS = 2
SIGMA_FINITE_CONDITIONS = ("Cs2", "Cs3", "Cs4", "Cs5")
FINITE_CONDITIONS = ("C2", "C3", "C4")

FINITE = "finite"
DIVERGING = "diverging"


class ConditionReport(BaseModel):
    center: float
    epsilon: float
    condition_estimates: Dict[str, float]
    verdicts: Dict[str, str]
    required: List[str] = Field(default_factory=list)

    @property
    def required_ok(self) -> bool:
        return all(self.verdicts[name] == FINITE for name in self.required)

    def to_dict(self) -> Dict[str, Any]:
        return {**self.model_dump(), "required_ok": self.required_ok}


def _f_log_f(f: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(f == 0.0, 0.0, f * np.log(np.abs(f)))


class _Audit:
    """Integrands and truncated-domain integrals for one (spec, u, ε)"""

    def __init__(self, spec: ProcessSpec, u: float, epsilon: float, quad_tol: float, grid_size: int):
        self.spec = spec
        self.quad_tol = quad_tol
        lower, upper = spec.kernel.time_domain
        low, high = max(u - epsilon, lower), min(u + epsilon, upper)
        self.t_grid = np.linspace(low, high, grid_size)
        self.w_grid = np.linspace(low, high, grid_size)
        self.alpha_w = np.asarray(spec.alpha.value(self.w_grid), dtype=np.float64)
        self.measure = spec.measure
        self.support = self.measure.support

    def _log_r(self, x: float) -> float:
        if self.measure.is_finite:
            return math.log(self.measure.total_mass)
        return float(np.log(self.measure.r_of(x)))

    def integrand(self, condition: str, t: float) -> Callable[[float], float]:
        kernel, alpha, w, aw = self.spec.kernel, self.spec.alpha, self.w_grid, self.alpha_w

        def g(x):
            if condition == "Cs3":
                values = kernel.du(t, w, x, alpha)
            else:
                values = kernel.values(t, w, x, alpha)
                if condition == "Cs4":
                    values = _f_log_f(values)
                elif condition == "Cs5":
                    values = values * self._log_r(x)
            with np.errstate(over="ignore", invalid="ignore"):
                powered = np.power(np.abs(values), aw)
            return float(np.max(powered))

        return g

    def _points(self, t: float, lower: float, upper: float) -> List[float]:
        points = list(self.spec.kernel.singular_points(t))
        if not self.measure.is_finite:
            # block edges, where r jumps
            points += [float(k) for k in range(math.ceil(max(lower, -1e4)), math.floor(min(upper, 1e4)) + 1)]
        return points

    def _piece(self, func, lower: float, upper: float, t: float) -> float:
        if upper <= lower:
            return 0.0
        return integrate_pieces(func, lower, upper, self._points(t, lower, upper), tol=self.quad_tol).value

    def integral(self, condition: str, t: float) -> List[float]:
        """Integral over the support cut to [-L, L] for L = L0, 2 L0, 4 L0 (one value when bounded)"""
        func = self.integrand(condition, t)
        lower, upper = self.support
        if math.isfinite(lower) and math.isfinite(upper):
            return [self._piece(func, lower, upper, t)]
        base = max(8.0, 4.0 * float(np.max(np.abs(self.t_grid))) + 4.0)
        left, right = max(lower, -base), min(upper, base)
        values = [self._piece(func, left, right, t)]
        for _ in range(DOMAIN_DOUBLINGS):
            new_left, new_right = max(lower, 2.0 * left), min(upper, 2.0 * right)
            grown = values[-1] + self._piece(func, new_left, left, t) + self._piece(func, right, new_right, t)
            values.append(grown)
            left, right = new_left, new_right
        return values


def _verdict(sequence: List[float]) -> str:
    if not all(math.isfinite(v) for v in sequence):
        return DIVERGING
    ratios = [b / a for a, b in zip(sequence, sequence[1:]) if a > 0.0]
    if len(ratios) >= DOMAIN_DOUBLINGS and all(q > DIVERGENCE_RATIO for q in ratios):
        return DIVERGING
    return FINITE


def condition_audit(
    spec: ProcessSpec,
    u: float,
    epsilon: float,
    quad_tol: float = 1e-6,
    grid_size: int = AUDIT_GRID_SIZE,
) -> ConditionReport:
    """
    Estimates of (Cs2)-(Cs5) against m. Finite spaces also get (C2)-(C4),
    the same integrals against ĥ = m / T, and those are the required ones.
    """
    if epsilon <= 0.0:
        raise DomainError("epsilon must be positive")
    lower, upper = spec.kernel.time_domain
    if not lower <= u <= upper:
        raise DomainError(f"u={u:g} is outside the time domain [{lower:g}, {upper:g}]")

    audit = _Audit(spec, u, epsilon, quad_tol, grid_size)
    estimates, verdicts = {}, {}
    for name in SIGMA_FINITE_CONDITIONS:
        per_t = [audit.integral(name, t) for t in audit.t_grid]
        worst = max(range(len(per_t)), key=lambda k: per_t[k][-1] if math.isfinite(per_t[k][-1]) else math.inf)
        estimates[name] = max(per_t[worst][-1], 0.0) if math.isfinite(per_t[worst][-1]) else math.inf
        verdicts[name] = _verdict(per_t[worst])
        logger.debug(f"{name} at u={u:g}: {estimates[name]:.6g} ({verdicts[name]})")

    if spec.measure.is_finite:
        mass = spec.measure.total_mass
        for finite_name, sigma_name in zip(FINITE_CONDITIONS, SIGMA_FINITE_CONDITIONS):
            estimates[finite_name] = estimates[sigma_name] / mass
            verdicts[finite_name] = verdicts[sigma_name]
        required = list(FINITE_CONDITIONS)
    else:
        required = list(SIGMA_FINITE_CONDITIONS)

    report = ConditionReport(
        center=float(u), epsilon=float(epsilon), condition_estimates=estimates, verdicts=verdicts, required=required
    )
    logger.info(f"Condition audit at u={u:g}: {verdicts}")
    return report
