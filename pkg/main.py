"""
mstab - Síntesis y verificación de procesos multiestables
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional

import typer
import yaml
from dotenv import load_dotenv

from src.jobs.job_manager import JobManager

CONFIG_PATH = "config"

app = typer.Typer(
    name="mstab",
    help="Series synthesis and verification of multistable and multifractional processes",
    add_completion=False,
)

logger = logging.getLogger("mstab")


def load_settings():
    with open(Path(CONFIG_PATH) / "settings.yml", "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def setup_directories(settings):
    """Create necessary directories"""
    environment = settings.get("environment", {})
    for directory in (environment.get("output_dir", "outputs"), environment.get("log_dir", "logs")):
        Path(directory).mkdir(parents=True, exist_ok=True)


def setup_logging(settings):
    environment = settings.get("environment", {})
    level = os.getenv("LOG_LEVEL") or environment.get("log_level", "INFO")
    log_file = Path(environment.get("log_dir", "logs")) / "mstab.log"
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(sys.stdout),
            logging.FileHandler(log_file, encoding="utf-8"),
        ],
    )


@app.callback()
def bootstrap():
    """Load .env, create the working directories and configure logging"""
    load_dotenv()
    settings = load_settings()
    setup_directories(settings)
    setup_logging(settings)


def _execute(command: str, config: Path, seed: Optional[int], out: Optional[Path], workers: Optional[int]):
    manager = JobManager(CONFIG_PATH)
    result = manager.execute_job(command, config, seed=seed, out=out, workers=workers)
    code = JobManager.exit_code(result)
    if code == 0:
        logger.info(f"✅ {command} done")
    else:
        logger.error(f"❌ {command} ended with status '{result['status']}' (exit {code})")
    raise typer.Exit(code=code)


ConfigOption = typer.Option(..., "--config", "-c", help="Job file (YAML or JSON)")
SeedOption = typer.Option(None, "--seed", help="Override the seed of the job file")
OutOption = typer.Option(None, "--out", help="Output directory")
WorkersOption = typer.Option(None, "--workers", min=1, help="Worker threads")


@app.command()
def synth(config: Path = ConfigOption, seed: Optional[int] = SeedOption, out: Optional[Path] = OutOption,
          workers: Optional[int] = WorkersOption):
    """Synthesize a path and write CSV (and SVG)"""
    _execute("synth", config, seed, out, workers)


@app.command("verify-stable")
def verify_stable(config: Path = ConfigOption, seed: Optional[int] = SeedOption, out: Optional[Path] = OutOption,
                  workers: Optional[int] = WorkersOption):
    """KS test of series marginals against the stable oracle"""
    _execute("verify-stable", config, seed, out, workers)


@app.command("verify-cf")
def verify_cf(config: Path = ConfigOption, seed: Optional[int] = SeedOption, out: Optional[Path] = OutOption,
              workers: Optional[int] = WorkersOption):
    """Empirical against quadrature joint characteristic function"""
    _execute("verify-cf", config, seed, out, workers)


@app.command()
def scaling(config: Path = ConfigOption, seed: Optional[int] = SeedOption, out: Optional[Path] = OutOption,
            workers: Optional[int] = WorkersOption):
    """Localisability scaling diagnostic"""
    _execute("scaling", config, seed, out, workers)


@app.command()
def audit(config: Path = ConfigOption, seed: Optional[int] = SeedOption, out: Optional[Path] = OutOption,
          workers: Optional[int] = WorkersOption):
    """Numeric audit of the kernel conditions"""
    _execute("audit", config, seed, out, workers)


@app.command()
def reproduce(suite: Path = typer.Option(Path("config/jobs/gallery"), "--suite", help="Directory of synth jobs"),
              out: Optional[Path] = OutOption, workers: Optional[int] = WorkersOption):
    """Run every synth job of a suite (the path gallery by default)"""
    manager = JobManager(CONFIG_PATH)
    try:
        results = manager.reproduce(suite, out=out, workers=workers)
    except FileNotFoundError as e:
        logger.error(f"❌ {e}")
        raise typer.Exit(code=1)
    codes = [JobManager.exit_code(r) for r in results]
    logger.info(f"📁 {sum(c == 0 for c in codes)}/{len(codes)} paths written")
    raise typer.Exit(code=max(codes, default=0))


@app.command("list-jobs")
def list_jobs():
    """List the registered jobs"""
    manager = JobManager(CONFIG_PATH)
    for name in manager.job_factory.available_jobs():
        typer.echo(f"{name:15s} {manager.job_factory.describe(name)['description']}")


if __name__ == "__main__":
    app()
