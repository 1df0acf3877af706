"""
Audit Job - Auditoría de condiciones en varios puntos
"""

from typing import Any, Dict

from src.jobs.base_job import JobInput, MstabJob
from src.verification.conditions import AUDIT_GRID_SIZE, condition_audit


class AuditJob(MstabJob):
    name: str = "ConditionAuditor"
    command: str = "audit"
    description: str = "Numeric audit of the kernel integrability conditions"

    def _run(self, args: JobInput) -> Dict[str, Any]:
        config = args.config
        block = config.audit
        spec = self.spec_factory.create_process(config.process, config.mc.n_terms, config.seed)
        grid_size = block.grid_size or int(self.numerics.get("audit_grid_size", AUDIT_GRID_SIZE))
        quad_tol = block.quad_tol or self.quad_tol

        reports = [
            condition_audit(spec, u, block.epsilon, quad_tol=quad_tol, grid_size=grid_size).to_dict()
            for u in block.points
        ]
        passed = all(report["required_ok"] for report in reports)
        return {
            "status": "success" if passed else "failed",
            "job": self.command,
            "name": self.stem(config),
            "reports": reports,
        }
