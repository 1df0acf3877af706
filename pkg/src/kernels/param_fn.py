"""
Param Fn - Funciones de parámetro α(u), b(u), h(u) con derivada exacta.
"""

import math
from typing import Annotated, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class _ParamFnBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    def value(self, u):
        raise NotImplementedError

    def derivative(self, u):
        raise NotImplementedError

    def value_range(self) -> Tuple[float, float]:
        raise NotImplementedError

    def __call__(self, u):
        return self.value(u)


class ConstantFn(_ParamFnBase):
    kind: Literal["constant"] = "constant"
    value_: float = Field(alias="value")

    def value(self, u):
        return np.full_like(np.asarray(u, dtype=np.float64), self.value_)[()]

    def derivative(self, u):
        return np.zeros_like(np.asarray(u, dtype=np.float64))[()]

    def value_range(self):
        return self.value_, self.value_


class LinearFn(_ParamFnBase):
    """Linear ramp from ``start`` at t0 to ``end`` at t1, held constant outside [t0, t1]"""

    kind: Literal["linear"] = "linear"
    start: float
    end: float
    t0: float = 0.0
    t1: float = 1.0

    @model_validator(mode="after")
    def _check_window(self):
        if not self.t1 > self.t0:
            raise ValueError("Linear parameter functions need t1 > t0")
        return self

    @property
    def slope(self) -> float:
        return (self.end - self.start) / (self.t1 - self.t0)

    def value(self, u):
        s = np.clip((np.asarray(u, dtype=np.float64) - self.t0) / (self.t1 - self.t0), 0.0, 1.0)
        return (self.start + (self.end - self.start) * s)[()]

    def derivative(self, u):
        u = np.asarray(u, dtype=np.float64)
        return np.where((u >= self.t0) & (u <= self.t1), self.slope, 0.0)[()]

    def value_range(self):
        return min(self.start, self.end), max(self.start, self.end)


class SineFn(_ParamFnBase):
    """Sine oscillating between ``minimum`` and ``maximum``"""

    kind: Literal["sine"] = "sine"
    minimum: float
    maximum: float
    period: float = Field(default=1.0, gt=0.0)
    phase: float = 0.0

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.maximum < self.minimum:
            raise ValueError("Sine parameter functions need maximum >= minimum")
        return self

    def _angle(self, u):
        return 2.0 * math.pi * np.asarray(u, dtype=np.float64) / self.period + self.phase

    def value(self, u):
        mid = 0.5 * (self.minimum + self.maximum)
        amp = 0.5 * (self.maximum - self.minimum)
        return (mid + amp * np.sin(self._angle(u)))[()]

    def derivative(self, u):
        amp = 0.5 * (self.maximum - self.minimum)
        return (amp * 2.0 * math.pi / self.period * np.cos(self._angle(u)))[()]

    def value_range(self):
        return self.minimum, self.maximum


ParamFn = Annotated[Union[ConstantFn, LinearFn, SineFn], Field(discriminator="kind")]


def constant(value: float) -> ConstantFn:
    return ConstantFn(value=value)


def eval_param(fn: ParamFn, u):
    return fn.value(u)


def eval_param_deriv(fn: ParamFn, u):
    return fn.derivative(u)
