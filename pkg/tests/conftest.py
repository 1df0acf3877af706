"""
Configuración de pytest y fixtures compartidas
"""

import shutil
from pathlib import Path

import pytest
import yaml

from src.engine.process_spec import ProcessSpec
from src.kernels.kernel_spec import LevyCompact, LinearMMM, ReverseOU
from src.kernels.param_fn import ConstantFn, LinearFn, SineFn
from src.sampling.streams import SeriesDraw

REPO_ROOT = Path(__file__).resolve().parents[1]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run Monte Carlo acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# Setup test environment
@pytest.fixture(scope="session", autouse=True)
def setup_test_env():
    """Setup test environment"""
    test_dirs = [REPO_ROOT / "test_outputs"]
    for directory in test_dirs:
        directory.mkdir(exist_ok=True)

    yield

    # Cleanup after tests
    for directory in test_dirs:
        if directory.exists():
            shutil.rmtree(directory)


@pytest.fixture
def repo_root():
    return REPO_ROOT


@pytest.fixture
def alpha_ramp():
    """α lineal de 1.02 a 1.98 sobre [0, 1]"""
    return LinearFn(start=1.02, end=1.98)


@pytest.fixture
def alpha_sine():
    return SineFn(minimum=1.02, maximum=1.98)


@pytest.fixture
def levy_spec():
    """Lévy multiestable en [0, 1] con α constante 1.5"""
    return ProcessSpec(kernel=LevyCompact(T=1.0), alpha=ConstantFn(value=1.5), n_terms=200, seed=3)


@pytest.fixture
def levy_ramp_spec(alpha_ramp):
    return ProcessSpec(kernel=LevyCompact(T=1.0), alpha=alpha_ramp, n_terms=200, seed=42)


@pytest.fixture
def lmmm_spec():
    """Movimiento multifraccional con H 0.2 -> 0.8 y α 1.41 -> 1.98"""
    return ProcessSpec(
        kernel=LinearMMM(h=LinearFn(start=0.2, end=0.8)),
        alpha=LinearFn(start=1.41, end=1.98),
        n_terms=200,
        seed=42,
    )


@pytest.fixture
def reverse_ou_spec(alpha_sine):
    return ProcessSpec(kernel=ReverseOU(lam=1.0), alpha=alpha_sine, n_terms=200, seed=42)


@pytest.fixture
def stub_draw():
    """Γ = (1, 2), γ = (+1, -1), V = (0.3, 0.7)"""
    return SeriesDraw(gammas=[1.0, 2.0], points=[0.3, 0.7], signs=[1, -1], seed=0)


@pytest.fixture
def write_job(tmp_path):
    """Escribe un fichero de trabajo YAML y devuelve su ruta"""

    def _write(config, name="job.yml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(config, sort_keys=False), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def synth_config():
    return {
        "command": "synth",
        "name": "small_levy",
        "seed": 42,
        "process": {
            "kernel": "levy_compact",
            "T": 1.0,
            "alpha": {"kind": "linear", "start": 1.02, "end": 1.98},
        },
        "grid": {"start": 0.0, "end": 1.0, "points": 50},
        "mc": {"n_terms": 300},
        "outputs": {"svg": True, "param_curves": True},
    }
