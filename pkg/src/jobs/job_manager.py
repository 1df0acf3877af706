"""
Job Manager - Carga y ejecuta trabajos desde configuración YAML
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from src.jobs.base_job import error_payload
from src.jobs.job_factory import JobFactory
from src.jobs.writers import write_json

EXIT_CODES = {"validation": 2, "accuracy": 4}
FAILED_EXIT_CODE = 3
DEFAULT_ERROR_EXIT_CODE = 1


class JobManager:
    def __init__(self, config_path: str = "config"):
        self.config_path = Path(config_path)
        self.settings = self._load_settings()
        self.job_factory = JobFactory(config_path, self.settings)
        self.spec_factory = self.job_factory.spec_factory

    def _load_settings(self) -> Dict[str, Any]:
        """Load general settings"""
        with open(self.config_path / "settings.yml", "r", encoding="utf-8") as f:
            return yaml.safe_load(f)

    @property
    def environment(self) -> Dict[str, Any]:
        return self.settings.get("environment", {})

    def default_workers(self) -> int:
        return int(os.getenv("MSTAB_WORKERS") or self.environment.get("max_concurrent_tasks", 1))

    @staticmethod
    def exit_code(result: Dict[str, Any]) -> int:
        status = result.get("status")
        if status == "success":
            return 0
        if status == "failed":
            return FAILED_EXIT_CODE
        return EXIT_CODES.get(result.get("error_kind"), DEFAULT_ERROR_EXIT_CODE)

    def execute_job(
        self,
        command: str,
        config_file: Path,
        seed: Optional[int] = None,
        out: Optional[Path] = None,
        workers: Optional[int] = None,
    ) -> Dict[str, Any]:
        """Execute one job file; every outcome comes back as a status document"""
        logging.info(f"🚀 Executing job: {command} ({config_file})")
        try:
            config = self.spec_factory.load_job_config(config_file)
            if config.command != command:
                raise ValueError(f"Config {config_file} is a '{config.command}' job, not '{command}'")
            if seed is not None:
                config = config.model_copy(update={"seed": int(seed)})
        except Exception as e:
            result = error_payload(e, command)
            logging.error(f"❌ Job {command} rejected: {result['message']}")
            self._save_error(Path(out or self.environment.get("output_dir", "outputs")), Path(config_file).stem, result)
            return result

        out_dir = Path(out or config.outputs.dir or self.environment.get("output_dir", "outputs"))
        stem = config.name or Path(config_file).stem
        config = config.model_copy(update={"name": stem})
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logging.error(f"❌ Output directory {out_dir} is not usable: {e}")
            return error_payload(e, command)

        job = self.job_factory.create_job(command)
        result = json.loads(job.run(config, out_dir, workers or self.default_workers()))

        if result["status"] == "error":
            logging.error(f"❌ Job {command} failed: {result['message']}")
            self._save_error(out_dir, stem, result)
        elif command != "synth":
            report_file = out_dir / f"{stem}_report.json"
            try:
                write_json(report_file, result)
                result["report"] = str(report_file)
            except OSError as e:
                logging.error(f"❌ Could not write {report_file}: {e}")
                result = error_payload(e, command)
        logging.info(f"✅ Job {command} finished with status {result['status']}")
        return result

    def reproduce(self, suite_dir: Path, out: Optional[Path] = None, workers: Optional[int] = None) -> List[Dict[str, Any]]:
        """Run every synth config of a directory in name order"""
        suite_dir = Path(suite_dir)
        if not suite_dir.is_dir():
            raise FileNotFoundError(f"Suite directory not found: {suite_dir}")
        files = sorted(p for p in suite_dir.iterdir() if p.suffix in (".yml", ".yaml", ".json"))
        return [self.execute_job("synth", f, out=out, workers=workers) for f in files]

    def _save_error(self, out_dir: Path, stem: str, result: Dict[str, Any]) -> None:
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            error_file = write_json(out_dir / f"error_report_{stem}.json", result)
            logging.info(f"💾 Error report saved to {error_file}")
        except OSError as e:
            logging.error(f"Could not save error report: {e}")
