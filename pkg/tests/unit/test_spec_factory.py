"""
Tests unitarios para Spec Factory y Job Config
"""

import json

import pytest
from pydantic import ValidationError

from src.exceptions import AdmissibilityError
from src.jobs.job_config import JobConfig, ProcessBlock
from src.jobs.spec_factory import SpecFactory
from src.kernels.kernel_spec import LinearMMM, ReverseOU
from src.kernels.param_fn import LinearFn, SineFn
from src.sampling.measure import TWO_SIDED_DYADIC


class TestSpecFactory:

    @pytest.fixture
    def factory(self):
        return SpecFactory({"numerics": {"default_n_terms": 321}})

    def test_default_terms_from_settings(self, factory):
        """Test que el número de términos por defecto viene de settings"""
        block = ProcessBlock(kernel="levy_compact", T=1.0, alpha={"kind": "constant", "value": 1.5})
        spec = factory.create_process(block, seed=4)
        assert spec.n_terms == 321
        assert spec.seed == 4

    def test_unknown_kernel(self, factory):
        """Test de núcleo inexistente"""
        block = ProcessBlock(kernel="brownian", alpha={"kind": "constant", "value": 1.5})
        with pytest.raises(ValueError) as excinfo:
            factory.create_kernel(block)
        assert "Kernel 'brownian' not found" in str(excinfo.value)
        assert "levy_compact" in str(excinfo.value)

    def test_unknown_param_fn(self, factory):
        with pytest.raises(ValueError) as excinfo:
            factory.create_param_fn({"kind": "cubic"}, "alpha")
        assert "ParamFn 'cubic' not found for alpha" in str(excinfo.value)

    def test_lmmm_needs_h(self, factory):
        block = ProcessBlock(kernel="linear_mmm", alpha={"kind": "constant", "value": 1.5})
        with pytest.raises(ValueError):
            factory.create_kernel(block)

    def test_lmmm(self, factory):
        block = ProcessBlock(
            kernel="linear_mmm",
            alpha={"kind": "linear", "start": 1.41, "end": 1.98},
            h={"kind": "linear", "start": 0.2, "end": 0.8},
        )
        spec = factory.create_process(block, n_terms=10)
        assert isinstance(spec.kernel, LinearMMM)
        assert isinstance(spec.kernel.h, LinearFn)

    def test_reverse_ou_lambda_alias(self, factory):
        block = ProcessBlock.model_validate(
            {"kernel": "reverse_ou", "lambda": 2.0, "alpha": {"kind": "sine", "minimum": 1.02, "maximum": 1.98}}
        )
        spec = factory.create_process(block)
        assert isinstance(spec.kernel, ReverseOU)
        assert spec.kernel.lam == 2.0
        assert isinstance(spec.alpha, SineFn)

    def test_measure_override(self, factory):
        block = ProcessBlock(kernel="log_fractional", alpha={"kind": "constant", "value": 1.5}, measure="two_sided_dyadic")
        assert factory.create_process(block).measure == TWO_SIDED_DYADIC
        with pytest.raises(ValueError):
            factory.create_measure("gaussian")

    def test_inadmissible_range(self, factory):
        """Test que un α inadmisible da AdmissibilityError con las violaciones"""
        block = ProcessBlock(kernel="levy_compact", T=1.0, alpha={"kind": "linear", "start": 0.8, "end": 1.5})
        with pytest.raises(AdmissibilityError) as excinfo:
            factory.create_process(block)
        assert len(excinfo.value.violations) == 1

    def test_load_yaml(self, factory, write_job, synth_config):
        config = factory.load_job_config(write_job(synth_config))
        assert config.command == "synth"
        assert config.grid.points == 50

    def test_load_json(self, factory, tmp_path, synth_config):
        """Test que los ficheros JSON se leen con el mismo cargador"""
        path = tmp_path / "job.json"
        path.write_text(json.dumps(synth_config), encoding="utf-8")
        assert factory.load_job_config(path).name == "small_levy"

    def test_missing_file(self, factory, tmp_path):
        with pytest.raises(FileNotFoundError):
            factory.load_job_config(tmp_path / "missing.yml")

    def test_not_a_mapping(self, factory, tmp_path):
        path = tmp_path / "list.yml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ValueError):
            factory.load_job_config(path)


class TestJobConfig:

    def test_command_needs_block(self, synth_config):
        """Test que cada comando exige su bloque"""
        del synth_config["grid"]
        with pytest.raises(ValidationError):
            JobConfig.model_validate(synth_config)

    def test_extra_field(self, synth_config):
        synth_config["colour"] = "blue"
        with pytest.raises(ValidationError):
            JobConfig.model_validate(synth_config)

    def test_name_without_separators(self, synth_config):
        synth_config["name"] = "../escape"
        with pytest.raises(ValidationError):
            JobConfig.model_validate(synth_config)

    def test_unknown_command(self, synth_config):
        synth_config["command"] = "plot"
        with pytest.raises(ValidationError):
            JobConfig.model_validate(synth_config)

    def test_theta_vectors(self):
        config = JobConfig.model_validate({
            "command": "verify-cf",
            "process": {"kernel": "levy_compact", "T": 1.0, "alpha": {"kind": "constant", "value": 1.5}},
            "verify": {"times": [0.5, 1.0], "thetas": [1.0, [0.5, 0.5]]},
        })
        assert config.verify.theta_vectors() == [[1.0], [0.5, 0.5]]

    def test_grid_values(self, synth_config):
        grid = JobConfig.model_validate(synth_config).grid.values()
        assert grid.size == 50
        assert grid[0] == 0.0 and grid[-1] == 1.0

    def test_shipped_configs_parse(self, repo_root):
        """Test que los trabajos incluidos en config/jobs son válidos"""
        factory = SpecFactory()
        files = sorted((repo_root / "config" / "jobs").rglob("*.yml")) + sorted(
            (repo_root / "config" / "jobs").rglob("*.json")
        )
        assert len(files) >= 10
        for path in files:
            config = factory.load_job_config(path)
            factory.create_process(config.process, config.mc.n_terms, config.seed)

    def test_gallery_suite(self, repo_root):
        factory = SpecFactory()
        files = sorted((repo_root / "config" / "jobs" / "gallery").glob("*.yml"))
        assert len(files) == 5
        for path in files:
            config = factory.load_job_config(path)
            assert config.command == "synth"
            assert config.grid.points == 2000
            assert config.mc.n_terms == 10_000
            assert config.seed == 42
