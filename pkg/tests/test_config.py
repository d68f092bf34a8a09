"""Tests for the configuration layer, experiment configs and the suite engine"""

import json

import pytest

from src.core.config import DEFAULTS, Config, config_overrides, default_config
from src.core.errors import ConfigError, PreconditionError
from src.core.rng import make_rng
from src.suites import ExperimentConfig, SuiteEngine, get_suite, suite_names


class TestConfig:
    def test_defaults_and_dot_access(self):
        config = Config()
        assert config.threshold("reilly") == DEFAULTS["thresholds"]["reilly"]
        assert config.get("resolution.series_terms") == 4000
        assert config.get("missing.key", 7) == 7
        config.update({"thresholds": {"green": 1e-3}})
        assert config.threshold("green") == 1e-3
        assert config.threshold("reilly") == DEFAULTS["thresholds"]["reilly"]
        # DEFAULTS stays untouched
        assert DEFAULTS["thresholds"]["green"] == 1e-6

    def test_require_missing_key(self):
        with pytest.raises(ConfigError):
            Config(use_defaults=False).require("thresholds.reilly")

    def test_yaml_file_merges_over_defaults(self, tmp_path):
        path = tmp_path / "spinlab.yaml"
        path.write_text("thresholds:\n  reilly: 0.001\nresolution:\n  theta_nodes: 8\n")
        config = Config(config_path=str(path))
        assert config.threshold("reilly") == 1e-3
        assert config.resolution("theta_nodes") == 8
        assert config.resolution("fourier_modes") == DEFAULTS["resolution"]["fourier_modes"]

    def test_json_file_and_dict_override(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"random_fields": {"count": 3, "degree": 2}}))
        config = Config(config_path=str(path), config_dict={"random_fields": {"degree": 4}})
        assert config.get("random_fields.count") == 3
        assert config.get("random_fields.degree") == 4

    def test_bad_files(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            Config(config_path=str(tmp_path / "absent.yaml"))
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            Config(config_path=str(path))

    def test_overrides_are_scoped(self):
        before = default_config().threshold("reilly")
        with config_overrides({"thresholds": {"reilly": 0.5}}) as config:
            assert config.threshold("reilly") == 0.5
        assert default_config().threshold("reilly") == before

    def test_overrides_restored_on_error(self):
        before = default_config().to_dict()
        with pytest.raises(RuntimeError):
            with config_overrides({"thresholds": {"green": 1.0}}):
                raise RuntimeError("boom")
        assert default_config().to_dict() == before


class TestRng:
    def test_streams(self):
        a = make_rng(3).standard_normal(4)
        assert (a == make_rng(3).standard_normal(4)).all()
        assert not (a == make_rng(3, stream=1).standard_normal(4)).all()
        with pytest.raises(ValueError):
            make_rng(-1)


class TestExperimentConfig:
    def test_defaults(self):
        config = ExperimentConfig("clifford")
        assert (config.n, config.kind, config.radius, config.format) == (2, "euclidean-ball", 1.0, "json")
        assert config.resolution() == {}

    @pytest.mark.parametrize(
        "changes",
        [{"n": 1}, {"n": 9}, {"radius": 0.0}, {"alpha": 1.0}, {"modes": 1}, {"tol": 0.0},
         {"seed": -1}, {"format": "xml"}, {"kind": "torus"}],
    )
    def test_invalid_values(self, changes):
        with pytest.raises(ConfigError):
            ExperimentConfig("clifford", **changes)

    def test_modes_and_tol(self):
        config = ExperimentConfig("reilly", modes=32, tol=1e-3)
        values = config.config_values()
        assert values["resolution"] == {"fourier_modes": 32, "theta_nodes": 32}
        assert values["thresholds"]["reilly"] == 1e-3
        assert values["thresholds"]["killing"] == 1e-3
        assert "convergence_ratio" not in values["thresholds"]

    def test_from_sources_flags_override_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(
            "experiment:\n  suite: spectrum\n  n: 3\n  radius: 2.0\n"
            "thresholds:\n  eigen: 1.0e-6\n"
        )
        config = ExperimentConfig.from_sources(None, str(path), {"radius": 0.5, "seed": None})
        assert config.suite == "spectrum"
        assert config.n == 3
        assert config.radius == 0.5
        assert config.overrides == {"thresholds": {"eigen": 1e-6}}

    def test_from_sources_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"experiment": {"dump-spectrum": "spectrum.txt"}}))
        config = ExperimentConfig.from_sources("spectrum", str(path), {})
        assert config.dump_spectrum == "spectrum.txt"

    def test_from_sources_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_sources(None, None, {})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_sources("clifford", str(tmp_path / "absent.yaml"), {})
        path = tmp_path / "typo.yaml"
        path.write_text("experiment:\n  radus: 2.0\n")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_sources("clifford", str(path), {})

    def test_with_suite(self):
        config = ExperimentConfig("clifford", n=3, seed=4)
        other = config.with_suite("spectrum", kind="hyperbolic-ball")
        assert (other.suite, other.n, other.seed, other.kind) == ("spectrum", 3, 4, "hyperbolic-ball")
        assert config.suite == "clifford"


class TestRegistry:
    def test_known_suites(self):
        for name in ("clifford", "operators", "spectrum", "reilly", "hyperbolic-reilly", "gauss",
                     "energy-momentum", "rigidity", "hyperbolic-rigidity", "hmr", "psi-pm",
                     "determinism", "all"):
            assert name in suite_names()
            assert get_suite(name).name == name

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            get_suite("nope")

    def test_suite_validation(self):
        with pytest.raises(ConfigError):
            get_suite("rigidity").validate(ExperimentConfig("rigidity", n=3))
        with pytest.raises(ConfigError):
            get_suite("reilly").validate(ExperimentConfig("reilly", kind="hyperbolic-ball"))
        assert get_suite("clifford").validate(ExperimentConfig("clifford", n=7))


class TestSuiteEngine:
    def test_clifford_suite(self):
        report = SuiteEngine().run(ExperimentConfig("clifford", n=4))
        assert report.passed
        assert report.params["generator"] == "spinlab-rng-v1"
        assert report.wall_time_ms > 0

    def test_invalid_suite_config_raises(self):
        with pytest.raises(ConfigError):
            SuiteEngine().run(ExperimentConfig("rigidity", n=3))

    def test_numerical_failure_becomes_check(self, monkeypatch):
        def fail(config, report):
            raise PreconditionError("forced")

        monkeypatch.setattr(get_suite("clifford"), "execute", fail)
        report = SuiteEngine(record_wall_time=False).run(ExperimentConfig("clifford", n=2))
        assert not report.passed
        assert report.checks[-1].name == "error.PreconditionError"
        assert report.wall_time_ms == 0.0

    def test_overrides_apply_during_run_only(self):
        config = ExperimentConfig("clifford", n=2, overrides={"thresholds": {"reilly": 0.25}})
        SuiteEngine().run(config)
        assert default_config().threshold("reilly") == DEFAULTS["thresholds"]["reilly"]
