"""
Measure Space - Espacios de muestreo (E, m) con la probabilidad ĥ y la razón r(x) = m/ĥ.

Finite spaces are [0, T] with Lebesgue m and uniform ĥ. Sigma-finite spaces are
Lebesgue measure on a half line or on the real line, sampled through a block
family: block j is an interval of length one on each side it covers, carrying
constant ĥ-density. Blocks are never materialised; every quantity is computed
from the block index on demand.
"""

import logging
import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import special

from src.exceptions import DomainError

logger = logging.getLogger(__name__)

_ZETA_WEIGHT = 3.0 / math.pi ** 2
_ZETA_RATIO = math.pi ** 2 / 3.0
_MAX_BLOCK_CORRECTIONS = 64


class MeasureKind(str, Enum):
    FINITE = "finite"
    SIGMA_FINITE = "sigma_finite"


class BlockPreset(str, Enum):
    HALF_LINE_DYADIC = "half_line_dyadic"
    TWO_SIDED_ZETA = "two_sided_zeta"
    TWO_SIDED_DYADIC = "two_sided_dyadic"


class _BlockFamily(ABC):
    """
    One side of a block family. ``weight(j)`` is the ĥ-density on block j and
    ``tail(j)`` the one-sided ĥ-mass of the blocks with index > j.
    """

    two_sided: bool = False

    @property
    def side_mass(self) -> float:
        return 0.5 if self.two_sided else 1.0

    @abstractmethod
    def weight(self, j: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def ratio(self, j: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _tail(self, j: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _guess(self, q: np.ndarray) -> np.ndarray: ...

    def tail(self, j: np.ndarray) -> np.ndarray:
        j = np.asarray(j, dtype=np.float64)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(j <= 0, self.side_mass, self._tail(np.maximum(j, 1.0)))

    def locate(self, q: np.ndarray, right_closed: bool) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Block index j with tail(j) < q <= tail(j-1) (right_closed) or
        tail(j) <= q < tail(j-1), returned with tail(j-1) and tail(j).
        q must lie in (0, side_mass]. Only entries whose guess was off are
        evaluated again.
        """
        q = np.asarray(q, dtype=np.float64)
        flat_q = q.reshape(-1)
        j = np.maximum(np.floor(self._guess(flat_q)), 1.0)
        upper = self.tail(j - 1.0)
        lower = self.tail(j)
        pending = np.arange(flat_q.size)
        for _ in range(_MAX_BLOCK_CORRECTIONS):
            qp, jp, up, lo = flat_q[pending], j[pending], upper[pending], lower[pending]
            if right_closed:
                step_back = (qp > up) & (jp > 1.0)
                step_forward = lo >= qp
            else:
                step_back = (qp >= up) & (jp > 1.0)
                step_forward = lo > qp
            moved = step_back | step_forward
            if not moved.any():
                return j.reshape(q.shape), upper.reshape(q.shape), lower.reshape(q.shape)
            pending = pending[moved]
            j[pending] = (jp - step_back + step_forward)[moved]
            upper[pending] = self.tail(j[pending] - 1.0)
            lower[pending] = self.tail(j[pending])
        raise DomainError("Block search did not settle; probability outside (0, 1)?")


class _HalfLineDyadic(_BlockFamily):
    two_sided = False

    def weight(self, j):
        return np.ldexp(1.0, -np.asarray(j, dtype=np.int64))

    def ratio(self, j):
        return np.ldexp(1.0, np.asarray(j, dtype=np.int64))

    def _tail(self, j):
        return np.exp2(-j)

    def _guess(self, q):
        return -np.log2(q) + 1.0


class _TwoSidedDyadic(_BlockFamily):
    two_sided = True

    def weight(self, j):
        return np.ldexp(1.0, -np.asarray(j, dtype=np.int64) - 1)

    def ratio(self, j):
        return np.ldexp(1.0, np.asarray(j, dtype=np.int64) + 1)

    def _tail(self, j):
        return np.exp2(-j - 1.0)

    def _guess(self, q):
        return -np.log2(2.0 * q) + 1.0


class _TwoSidedZeta(_BlockFamily):
    two_sided = True

    def weight(self, j):
        j = np.asarray(j, dtype=np.float64)
        return _ZETA_WEIGHT / (j * j)

    def ratio(self, j):
        j = np.asarray(j, dtype=np.float64)
        return _ZETA_RATIO * j * j

    def _tail(self, j):
        # sum_{k>j} k^-2 is the trigamma function at j + 1, i.e. Hurwitz zeta(2, j + 1)
        return _ZETA_WEIGHT * special.zeta(2.0, j + 1.0)

    def _guess(self, q):
        # trigamma(x) ~ 1 / (x - 1/2) - 1 / (12 x^3), inverted to second order
        y = q / _ZETA_WEIGHT
        return 1.0 / y + 0.5 - y / 12.0


_FAMILIES = {
    BlockPreset.HALF_LINE_DYADIC: _HalfLineDyadic(),
    BlockPreset.TWO_SIDED_ZETA: _TwoSidedZeta(),
    BlockPreset.TWO_SIDED_DYADIC: _TwoSidedDyadic(),
}


class MeasureSpace(BaseModel):
    """Sampling space (E, m) with probability measure ĥ = m / r"""

    model_config = ConfigDict(frozen=True)

    kind: MeasureKind
    T: Optional[float] = Field(default=None, gt=0.0, description="Length of [0, T] for finite spaces")
    preset: Optional[BlockPreset] = Field(default=None, description="Block family for sigma-finite spaces")

    @model_validator(mode="after")
    def _check_variant(self):
        if self.kind is MeasureKind.FINITE and (self.T is None or self.preset is not None):
            raise ValueError("Finite measure spaces need T and no preset")
        if self.kind is MeasureKind.SIGMA_FINITE and (self.preset is None or self.T is not None):
            raise ValueError("Sigma-finite measure spaces need a preset and no T")
        return self

    @classmethod
    def finite(cls, T: float) -> "MeasureSpace":
        return cls(kind=MeasureKind.FINITE, T=T)

    @classmethod
    def sigma_finite(cls, preset: BlockPreset) -> "MeasureSpace":
        return cls(kind=MeasureKind.SIGMA_FINITE, preset=BlockPreset(preset))

    @property
    def is_finite(self) -> bool:
        return self.kind is MeasureKind.FINITE

    @property
    def _family(self) -> _BlockFamily:
        return _FAMILIES[self.preset]

    @property
    def label(self) -> str:
        return f"finite[0,{self.T:g}]" if self.is_finite else self.preset.value

    @property
    def support(self) -> Tuple[float, float]:
        if self.is_finite:
            return 0.0, float(self.T)
        if self._family.two_sided:
            return -math.inf, math.inf
        return 0.0, math.inf

    @property
    def total_mass(self) -> float:
        """m(E)"""
        return float(self.T) if self.is_finite else math.inf

    def in_support(self, x) -> np.ndarray:
        lower, upper = self.support
        x = np.asarray(x, dtype=np.float64)
        return (x >= lower) & (x <= upper) if self.is_finite else (x >= lower) & (x < upper)

    def block_index(self, x) -> np.ndarray:
        """Index j of the block holding x (1 for every point of a finite space)"""
        x = np.asarray(x, dtype=np.float64)
        if self.is_finite:
            return np.ones_like(x)
        return np.where(x >= 0.0, np.floor(x) + 1.0, np.ceil(-x))

    def block_mass(self, j) -> np.ndarray:
        """ĥ-mass of block j (both sides for two-sided families)"""
        if self.is_finite:
            return np.where(np.asarray(j) == 1, 1.0, 0.0)
        family = self._family
        return family.weight(j) * (2.0 if family.two_sided else 1.0)

    def tail_mass(self, j) -> np.ndarray:
        """ĥ-mass of all blocks with index > j"""
        if self.is_finite:
            return np.where(np.asarray(j) >= 1, 0.0, 1.0)
        family = self._family
        return family.tail(j) * (2.0 if family.two_sided else 1.0)

    def density(self, x) -> np.ndarray:
        """ĥ-density with respect to Lebesgue measure"""
        x = np.asarray(x, dtype=np.float64)
        inside = self.in_support(x)
        if self.is_finite:
            return np.where(inside, 1.0 / self.T, 0.0)
        j = np.where(inside, self.block_index(x), 1.0)
        return np.where(inside, self._family.weight(j), 0.0)

    def r_of(self, x) -> np.ndarray:
        """Density ratio r(x) = dm/dĥ on the support"""
        x = np.asarray(x, dtype=np.float64)
        if not np.all(self.in_support(x)):
            raise DomainError(f"Point outside the support {self.support} of {self.label}")
        if self.is_finite:
            return np.full_like(x, float(self.T))
        return self._family.ratio(self.block_index(x))

    def cdf(self, x) -> np.ndarray:
        """ĥ((-inf, x])"""
        x = np.asarray(x, dtype=np.float64)
        if self.is_finite:
            return np.clip(x / self.T, 0.0, 1.0)
        family = self._family
        j = self.block_index(x)
        with np.errstate(invalid="ignore"):
            right = (family.side_mass - family.tail(j - 1.0)) + family.weight(j) * (x - j + 1.0)
            if not family.two_sided:
                return np.where(x < 0.0, 0.0, right)
            left = family.tail(j) + family.weight(j) * (x + j)
            return np.where(x >= 0.0, 0.5 + right, left)

    def inverse_cdf(self, u) -> np.ndarray:
        """x with ĥ((-inf, x]) = u, for u in [0, 1)"""
        u = np.asarray(u, dtype=np.float64)
        if np.any((u < 0.0) | (u >= 1.0)) or np.any(np.isnan(u)):
            raise DomainError("inverse_cdf needs u in [0, 1)")
        if self.is_finite:
            return u * self.T
        family = self._family
        if not family.two_sided:
            return self._right_side(family, 1.0 - u)
        if np.any(u == 0.0):
            raise DomainError("u = 0 has no finite preimage on a two-sided block family")
        x = np.empty_like(u)
        right = u >= 0.5
        x[right] = self._right_side(family, 1.0 - u[right])
        x[~right] = self._left_side(family, u[~right])
        return x

    @staticmethod
    def _right_side(family: _BlockFamily, q: np.ndarray) -> np.ndarray:
        # q is the mass to the right of x
        j, above, _ = family.locate(q, right_closed=True)
        x = j - 1.0 + (above - q) / family.weight(j)
        return np.clip(x, j - 1.0, np.nextafter(j, 0.0))

    @staticmethod
    def _left_side(family: _BlockFamily, u: np.ndarray) -> np.ndarray:
        j, _, below = family.locate(u, right_closed=False)
        x = -j + (u - below) / family.weight(j)
        return np.clip(x, -j, np.nextafter(-j + 1.0, -j))


HALF_LINE_DYADIC = MeasureSpace.sigma_finite(BlockPreset.HALF_LINE_DYADIC)
TWO_SIDED_ZETA = MeasureSpace.sigma_finite(BlockPreset.TWO_SIDED_ZETA)
TWO_SIDED_DYADIC = MeasureSpace.sigma_finite(BlockPreset.TWO_SIDED_DYADIC)


def inverse_cdf(measure: MeasureSpace, u):
    return measure.inverse_cdf(u)


def r_of(measure: MeasureSpace, x):
    return measure.r_of(x)
