"""
Scaling Job - Diagnóstico de localizabilidad en varios centros
"""

from typing import Any, Dict

from src.jobs.base_job import JobInput, MstabJob
from src.verification.scaling import scaling_diagnostic


class ScalingJob(MstabJob):
    name: str = "ScalingDiagnostic"
    command: str = "scaling"
    description: str = "Rescaled increments against the local form"

    def _run(self, args: JobInput) -> Dict[str, Any]:
        config = args.config
        block = config.scaling
        spec = self.spec_factory.create_process(config.process, config.mc.n_terms, config.seed)

        reports, passed = [], True
        for u in block.centers:
            h = block.h if block.h is not None else spec.kernel.local_exponent(u, spec.alpha)
            report = scaling_diagnostic(
                spec,
                u,
                h,
                block.radii,
                block.t_probe,
                config.mc.n_paths,
                seed=config.seed,
                workers=args.workers,
                degeneracy_limit=self.degeneracy_limit,
            )
            if block.exponent_tolerance is not None:
                fitted = report.fitted_exponent
                passed = passed and fitted is not None and abs(fitted - h) <= block.exponent_tolerance
            reports.append(report.to_dict())

        return {
            "status": "success" if passed else "failed",
            "job": self.command,
            "name": self.stem(config),
            "reports": reports,
        }
