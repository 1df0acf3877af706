"""
Job Config - Modelos de los ficheros de trabajo (YAML o JSON).
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

JobCommand = Literal["synth", "verify-stable", "verify-cf", "scaling", "audit"]


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ProcessBlock(_Block):
    kernel: str
    T: Optional[float] = None
    lam: Optional[float] = Field(default=None, alias="lambda")
    alpha: Dict[str, Any]
    b: Dict[str, Any] = Field(default_factory=lambda: {"kind": "constant", "value": 1.0})
    h: Optional[Dict[str, Any]] = None
    measure: Optional[str] = None


class GridBlock(_Block):
    start: float
    end: float
    points: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_order(self):
        if self.points > 1 and not self.end > self.start:
            raise ValueError("grid end must exceed grid start")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.end, self.points)


class McBlock(_Block):
    n_paths: int = Field(default=20_000, ge=1)
    n_terms: Optional[int] = Field(default=None, ge=1)


class OutputBlock(_Block):
    dir: Optional[str] = None
    svg: bool = True
    param_curves: bool = False
    zoom: Optional[Tuple[float, float]] = None
    draw_dump: bool = False


class VerifyBlock(_Block):
    t: Optional[float] = None
    times: List[float] = Field(default_factory=list)
    thetas: List[Union[float, List[float]]] = Field(default_factory=list)
    tol: Optional[float] = Field(default=None, gt=0.0)
    allowance: float = Field(default=1e-4, ge=0.0)

    def theta_vectors(self) -> List[List[float]]:
        return [list(th) if isinstance(th, list) else [float(th)] for th in self.thetas]


class ScalingBlock(_Block):
    centers: List[float] = Field(min_length=1)
    h: Optional[float] = None
    radii: List[float] = Field(min_length=1)
    t_probe: float = Field(default=1.0, gt=0.0)
    exponent_tolerance: Optional[float] = Field(default=None, gt=0.0)


class AuditBlock(_Block):
    points: List[float] = Field(min_length=1)
    epsilon: float = Field(default=0.05, gt=0.0)
    quad_tol: Optional[float] = Field(default=None, gt=0.0)
    grid_size: Optional[int] = Field(default=None, ge=2)


class JobConfig(_Block):
    command: JobCommand
    name: Optional[str] = None
    process: ProcessBlock
    grid: Optional[GridBlock] = None
    mc: McBlock = Field(default_factory=McBlock)
    seed: int = Field(default=0, ge=0)
    outputs: OutputBlock = Field(default_factory=OutputBlock)
    verify: Optional[VerifyBlock] = None
    scaling: Optional[ScalingBlock] = None
    audit: Optional[AuditBlock] = None

    @field_validator("name")
    @classmethod
    def _safe_name(cls, value):
        if value is not None and any(ch in value for ch in "/\\"):
            raise ValueError("job names cannot contain path separators")
        return value

    @model_validator(mode="after")
    def _check_blocks(self):
        needed = {
            "synth": ("grid", self.grid),
            "verify-stable": ("verify", self.verify),
            "verify-cf": ("verify", self.verify),
            "scaling": ("scaling", self.scaling),
            "audit": ("audit", self.audit),
        }
        block, value = needed[self.command]
        if value is None:
            raise ValueError(f"'{self.command}' jobs need a '{block}' block")
        return self
