"""
Verify Jobs - Verificación de la ley estable y de la función característica conjunta
"""

import logging
import math
from typing import Any, Dict

from src.engine.series_engine import sample_joint
from src.exceptions import DomainError
from src.jobs.base_job import JobInput, MstabJob
from src.verification.characteristic import CfQuery, empirical_cf, fdd_cf
from src.verification.statistics import KS_BAND_FACTOR, KS_TRUNCATION_ALLOWANCE, stable_ks_check

logger = logging.getLogger(__name__)


class VerifyStableJob(MstabJob):
    name: str = "StableLawVerifier"
    command: str = "verify-stable"
    description: str = "KS test of series marginals against the stable oracle"

    def _run(self, args: JobInput) -> Dict[str, Any]:
        config = args.config
        spec = self.spec_factory.create_process(config.process, config.mc.n_terms, config.seed)
        times = [config.verify.t] if config.verify.t is not None else config.verify.times
        if not times:
            raise DomainError("verify-stable needs 't' or 'times' in the verify block")

        checks = [
            stable_ks_check(
                spec,
                t,
                config.mc.n_paths,
                config.seed,
                workers=args.workers,
                degeneracy_limit=self.degeneracy_limit,
                band_factor=float(self.numerics.get("ks_band_factor", KS_BAND_FACTOR)),
                allowance=float(self.numerics.get("ks_truncation_allowance", KS_TRUNCATION_ALLOWANCE)),
            ).to_dict()
            for t in times
        ]
        passed = all(check["passed"] for check in checks)
        return {
            "status": "success" if passed else "failed",
            "job": self.command,
            "name": self.stem(config),
            "checks": checks,
            "ks_D": max(check["ks_D"] for check in checks),
            "ks_p": min(check["ks_p"] for check in checks),
        }


class VerifyCfJob(MstabJob):
    name: str = "CharacteristicFunctionVerifier"
    command: str = "verify-cf"
    description: str = "Empirical against quadrature joint characteristic function"

    def _run(self, args: JobInput) -> Dict[str, Any]:
        config = args.config
        block = config.verify
        spec = self.spec_factory.create_process(config.process, config.mc.n_terms, config.seed)
        times = block.times or ([block.t] if block.t is not None else [])
        thetas = block.theta_vectors()
        if not times or not thetas:
            raise DomainError("verify-cf needs times and thetas in the verify block")

        n_paths = config.mc.n_paths
        joint = sample_joint(
            spec, times, n_paths, config.seed, workers=args.workers, degeneracy_limit=self.degeneracy_limit
        )
        tol = block.tol or self.quad_tol
        band = float(self.numerics.get("cf_band_factor", 3.0)) / math.sqrt(n_paths) + block.allowance

        results = []
        for theta in thetas:
            query = CfQuery(times=times, thetas=theta)
            exact = fdd_cf(spec, query, tol=tol)
            empirical = empirical_cf(joint.values, query)
            difference = abs(empirical.real - exact.value)
            results.append({
                "thetas": theta,
                **exact.to_dict(),
                "empirical": empirical.real,
                "empirical_imag": empirical.imag,
                "difference": difference,
                "passed": difference <= band + exact.error_bound,
            })
            logger.info(f"θ={theta}: quadrature {exact.value:.6f}, empirical {empirical.real:.6f}")

        passed = all(r["passed"] for r in results)
        return {
            "status": "success" if passed else "failed",
            "job": self.command,
            "name": self.stem(config),
            "times": times,
            "n_paths": n_paths,
            "redraws": joint.redraws,
            "band": band,
            "max_difference": max(r["difference"] for r in results),
            "results": results,
        }
