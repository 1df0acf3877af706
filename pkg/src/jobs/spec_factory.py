"""
Spec Factory - Crear procesos desde los bloques de configuración
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import TypeAdapter

from src.engine.process_spec import DEFAULT_N_TERMS, ProcessSpec, process_violations
from src.exceptions import AdmissibilityError
from src.jobs.job_config import JobConfig, ProcessBlock
from src.kernels.kernel_spec import KERNEL_NAMES, KernelSpec
from src.kernels.param_fn import ParamFn
from src.sampling.measure import HALF_LINE_DYADIC, TWO_SIDED_DYADIC, TWO_SIDED_ZETA, MeasureSpace

logger = logging.getLogger(__name__)

PARAM_FN_KINDS = ("constant", "linear", "sine")
MEASURE_PRESETS = {
    "half_line_dyadic": HALF_LINE_DYADIC,
    "two_sided_zeta": TWO_SIDED_ZETA,
    "two_sided_dyadic": TWO_SIDED_DYADIC,
}

_PARAM_ADAPTER = TypeAdapter(ParamFn)
_KERNEL_ADAPTER = TypeAdapter(KernelSpec)


class SpecFactory:
    def __init__(self, settings: Optional[Dict[str, Any]] = None):
        numerics = (settings or {}).get("numerics", {})
        self.default_n_terms = int(numerics.get("default_n_terms", DEFAULT_N_TERMS))

    def load_job_config(self, config_file: Union[str, Path]) -> JobConfig:
        """Load one job file; JSON files go through the same YAML loader"""
        config_file = Path(config_file)
        if not config_file.exists():
            raise FileNotFoundError(f"Job config file not found: {config_file}")

        with open(config_file, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)

        if not isinstance(config, dict):
            raise ValueError(f"Invalid job configuration file: {config_file}")

        return JobConfig.model_validate(config)

    def create_param_fn(self, block: Dict[str, Any], role: str) -> ParamFn:
        kind = block.get("kind")
        if kind not in PARAM_FN_KINDS:
            raise ValueError(f"ParamFn '{kind}' not found for {role}. Available: {list(PARAM_FN_KINDS)}")
        return _PARAM_ADAPTER.validate_python(block)

    def create_kernel(self, block: ProcessBlock) -> KernelSpec:
        if block.kernel not in KERNEL_NAMES:
            raise ValueError(f"Kernel '{block.kernel}' not found. Available: {list(KERNEL_NAMES)}")

        fields: Dict[str, Any] = {"kind": block.kernel}
        if block.kernel == "levy_compact":
            fields["T"] = block.T
        elif block.kernel == "reverse_ou":
            fields["lambda"] = block.lam
        elif block.kernel == "linear_mmm":
            if block.h is None:
                raise ValueError("Kernel 'linear_mmm' needs an 'h' block")
            fields["h"] = self.create_param_fn(block.h, "h")
        return _KERNEL_ADAPTER.validate_python(fields)

    def create_measure(self, name: Optional[str]) -> Optional[MeasureSpace]:
        if name is None:
            return None
        if name not in MEASURE_PRESETS:
            raise ValueError(f"Measure '{name}' not found. Available: {list(MEASURE_PRESETS)}")
        return MEASURE_PRESETS[name]

    def create_process(self, block: ProcessBlock, n_terms: Optional[int] = None, seed: int = 0) -> ProcessSpec:
        """Build a ProcessSpec; inadmissible parameter ranges raise before any computation"""
        kernel = self.create_kernel(block)
        alpha = self.create_param_fn(block.alpha, "alpha")
        b = self.create_param_fn(block.b, "b")

        violations = process_violations(kernel, alpha, b)
        if violations:
            raise AdmissibilityError(violations)

        spec = ProcessSpec(
            kernel=kernel,
            alpha=alpha,
            b=b,
            measure_override=self.create_measure(block.measure),
            n_terms=n_terms or self.default_n_terms,
            seed=seed,
        )
        logger.debug(f"Process created: {block.kernel} on {spec.measure.label}, {spec.n_terms} terms")
        return spec
