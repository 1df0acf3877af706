"""
Base Job - Interfaz común de los trabajos: entrada validada y salida JSON con status.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.engine.series_engine import DEGENERACY_LIMIT
from src.exceptions import (
    AccuracyError,
    AdmissibilityError,
    DegenerateDrawError,
    DomainError,
    NonIntegrableKernelError,
    SingularEvaluationError,
)
from src.jobs.job_config import JobConfig
from src.jobs.spec_factory import SpecFactory
from src.jobs.writers import to_json

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-6


class JobInput(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: JobConfig
    out_dir: Path = Field(description="Directory receiving the job files")
    workers: int = Field(default=1, ge=1, description="Worker threads")


def error_kind(error: Exception) -> str:
    """Classify an exception for the status report and the exit code"""
    if isinstance(error, (AccuracyError, NonIntegrableKernelError)):
        return "accuracy"
    if isinstance(error, (DegenerateDrawError, SingularEvaluationError)):
        return "degenerate"
    if isinstance(error, (ValidationError, AdmissibilityError, DomainError, ValueError)):
        return "validation"
    if isinstance(error, OSError):
        return "io"
    return "internal"


def error_payload(error: Exception, job: str) -> Dict[str, Any]:
    payload = {"status": "error", "job": job, "error_kind": error_kind(error), "message": str(error)}
    if isinstance(error, AdmissibilityError):
        payload["violations"] = error.violations
    if isinstance(error, AccuracyError):
        payload["cf_value"] = error.estimate
        payload["cf_error_bound"] = error.error_bound
    if isinstance(error, DegenerateDrawError):
        payload["term_index"] = error.term_index
    return payload


class MstabJob:
    name: str = "MstabJob"
    command: str = ""
    description: str = ""
    args_schema: Type[BaseModel] = JobInput

    def __init__(self, settings: Optional[Dict[str, Any]] = None, spec_factory: Optional[SpecFactory] = None):
        self.settings = settings or {}
        self.numerics = self.settings.get("numerics", {})
        self.spec_factory = spec_factory or SpecFactory(self.settings)

    @property
    def quad_tol(self) -> float:
        return float(self.numerics.get("quad_tol", QUAD_TOL))

    @property
    def degeneracy_limit(self) -> float:
        return float(self.numerics.get("degeneracy_limit", DEGENERACY_LIMIT))

    def stem(self, config: JobConfig) -> str:
        return config.name or self.command.replace("-", "_")

    def run(self, config: JobConfig, out_dir: Path, workers: int = 1) -> str:
        """Run the job and always answer with a JSON document"""
        try:
            args = self.args_schema(config=config, out_dir=Path(out_dir), workers=workers)
            result = self._run(args)
            return to_json(result)

        except Exception as e:
            logger.error(f"{self.name}: {e}")
            return to_json(error_payload(e, self.command))

    def _run(self, args: JobInput) -> Dict[str, Any]:
        raise NotImplementedError
