"""
Job Factory - Crear trabajos desde el registro YAML
"""

import importlib
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from src.jobs.base_job import MstabJob
from src.jobs.spec_factory import SpecFactory


class JobFactory:
    def __init__(self, config_path: str = "config", settings: Optional[Dict[str, Any]] = None):
        self.config_path = Path(config_path)
        self.settings = settings or {}
        self.jobs_config = self._load_jobs_config()
        self.spec_factory = SpecFactory(self.settings)

    def _load_jobs_config(self) -> Dict[str, Any]:
        """Load the job registry from YAML"""
        config_file = self.config_path / "jobs.yml"
        if not config_file.exists():
            raise FileNotFoundError(f"Jobs config file not found: {config_file}")

        with open(config_file, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)

        if not config or "jobs" not in config:
            raise ValueError("Invalid jobs configuration file")

        return config

    def available_jobs(self) -> List[str]:
        return list(self.jobs_config["jobs"].keys())

    def describe(self, job_name: str) -> Dict[str, Any]:
        return self.jobs_config["jobs"][job_name]

    def create_job(self, job_name: str) -> MstabJob:
        """Create a job instance from its registered class path"""
        if job_name not in self.jobs_config["jobs"]:
            raise ValueError(f"Job '{job_name}' not found. Available: {self.available_jobs()}")

        class_path = self.jobs_config["jobs"][job_name]["class_path"]
        module_name, class_name = class_path.rsplit(".", 1)
        job_class = getattr(importlib.import_module(module_name), class_name)
        logging.debug(f"Job created: {job_name} -> {class_path}")
        return job_class(self.settings, self.spec_factory)
