"""
Run configuration, grid runner, report and command line tests.
"""

from pathlib import Path

import pytest
import yaml

from fbiharm.cli import (
    REPORT_FORMAT,
    RunConfig,
    Tolerances,
    comparable,
    dump_document,
    emit_report,
    load_config,
    load_report,
    parse_config,
    run_check,
)
from fbiharm.cli.main import main
from fbiharm.config import get_engine_config
from fbiharm.errors import ConfigError
from fbiharm.scenarios import CATALOGUE, build_scenario

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


def cylinder_config(**overrides) -> RunConfig:
    settings = {"scenario": "cylinder", "f": "exp(x2/1)", "checks": ["fbh2", "bhs"], "sampling": {"count": 5}}
    settings.update(overrides)
    return RunConfig(**settings)


# ============================================================
# Config documents
# ============================================================


class TestParseConfig:
    def test_defaults(self):
        config = parse_config("scenario: cylinder\n")
        assert config.checks == []
        assert config.jet_order == 4
        assert config.sampling.count == 50
        assert config.sampling.seed == 42
        assert config.tolerances.zero == 1e-7
        assert config.tolerances.nonzero_floor == 1e-3
        assert config.workers == 1

    def test_unknown_check(self):
        with pytest.raises(ConfigError) as info:
            parse_config("scenario: cylinder\nchecks: [fbh2, fbh9]\n")
        assert info.value.key == "checks"
        assert info.value.location == "line 2"
        assert "fbh9" in str(info.value)

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config("scenario: cylinder\nbogus: 1\n")
        assert info.value.key == "bogus"
        assert info.value.location == "line 2"

    def test_nested_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config("scenario: cylinder\nsampling:\n  count: 0\n")
        assert info.value.key == "sampling.count"
        assert info.value.location == "line 3"

    @pytest.mark.parametrize(
        "text",
        [
            "scenario: [cylinder\n",
            "- cylinder\n",
            "scenario: moebius\n",
            "scenario: custom\n",
            "scenario: cylinder\ncustom: {source: {dim: 2}}\n",
            "scenario: inversion\nf: {C1: 1.0, C2: 1.0}\n",
            "scenario: cylinder\nf: 'exp(x2'\n",
            "scenario: cylinder\nexpect: {bhs: sometimes}\n",
        ],
    )
    def test_rejected_documents(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_family_constants(self):
        config = parse_config("scenario: cylinder\nparams: {m: 2}\nf: {C1: 0.5, C2: 2.0}\n")
        assert config.scenario_params() == {"m": 2, "C1": 0.5, "C2": 2.0}

    def test_with_checks_deduplicates(self):
        config = cylinder_config().with_checks("bhs", "cross_validate")
        assert config.checks == ["fbh2", "bhs", "cross_validate"]

    @pytest.mark.parametrize("name", ["cylinder.yaml", "inversion.yaml", "small_hypersphere.yaml", "custom_paraboloid.yaml"])
    def test_shipped_configs_load(self, name):
        config = load_config(CONFIG_DIR / name)
        assert config.checks


# ============================================================
# Grid runner
# ============================================================


class TestRunCheck:
    def test_cylinder_weight(self):
        report = run_check(cylinder_config())
        fbh2, bhs = report.checks["fbh2"], report.checks["bhs"]
        assert fbh2.passed and fbh2.max_residual <= 1e-8
        assert fbh2.points == 5
        assert bhs.expectation == "nonzero"
        assert bhs.floor == 1e-3
        assert bhs.passed
        assert bhs.details["max_abs_r1"] == pytest.approx(1.0 / 3.0, rel=1e-10)
        assert report.passed

    def test_inversion(self):
        config = RunConfig(scenario="inversion", checks=["tension", "bitension", "f_bitension"], sampling={"count": 4})
        report = run_check(config)
        assert report.passed
        assert report.checks["tension"].expectation == "nonzero"

    def test_family_constants_reach_the_weight(self):
        config = RunConfig(scenario="cylinder", f={"C1": 0.5, "C2": 2.0}, checks=["fbh2"], sampling={"count": 3})
        report = run_check(config)
        assert report.scenario["params"]["C2"] == 2.0
        assert report.checks["fbh2"].passed

    def test_failed_expectation(self):
        report = run_check(cylinder_config(checks=["tension"], expect={"tension": 2.0}))
        summary = report.checks["tension"]
        assert summary.expectation.startswith("value(2")
        assert summary.max_residual == pytest.approx(1.0, rel=1e-12)
        assert not summary.passed
        assert not report.passed

    def test_unweighted_cylinder_fails(self):
        report = run_check(cylinder_config(f="1", checks=["fbh2"]))
        assert not report.checks["fbh2"].passed

    def test_weight_override_reaches_conformal_checks(self):
        config = cylinder_config(params={"m": 2}, f="1", checks=["fbh2", "conformal_immersion"], sampling={"count": 3})
        report = run_check(config)
        fbh2, conformal = report.checks["fbh2"], report.checks["conformal_immersion"]
        assert not fbh2.passed
        assert not conformal.passed
        assert conformal.max_residual == pytest.approx(fbh2.max_residual, rel=1e-9)

    def test_einstein_tolerance_does_not_leak(self):
        before = Tolerances().einstein
        engine_before = get_engine_config().einstein_tolerance
        report = run_check(cylinder_config(checks=["spaceform"], tolerances={"einstein": 1e-3}, sampling={"count": 2}))
        assert report.checks["spaceform"].error is None
        assert Tolerances().einstein == before
        assert get_engine_config().einstein_tolerance == engine_before

    def test_errors_are_recorded(self):
        config = RunConfig(scenario="inversion", checks=["tension", "fbh2"], sampling={"count": 2})
        report = run_check(config)
        assert report.checks["tension"].error is None
        assert report.checks["fbh2"].error.startswith("DimensionError")
        assert not report.checks["fbh2"].passed
        assert not report.passed

    def test_descriptor_mismatch_is_recorded(self):
        config = RunConfig(scenario="inversion", checks=["spaceform"], sampling={"count": 1})
        assert run_check(config).checks["spaceform"].error is not None

    def test_checks_without_expectation_are_informational(self):
        text = (CONFIG_DIR / "custom_paraboloid.yaml").read_text(encoding="utf-8")
        config = parse_config(text.replace("count: 10", "count: 3"))
        report = run_check(config)
        mean = report.checks["mean_curvature"]
        assert mean.expectation == "none"
        assert mean.passed
        assert mean.max_residual > 0.0
        assert report.checks["bhs"].expectation == "nonzero"
        assert report.passed

    def test_no_checks(self):
        report = run_check(cylinder_config(checks=[]))
        assert report.checks == {}
        assert report.passed

    def test_deterministic_across_workers(self):
        single = run_check(cylinder_config(checks=["fbh2", "bhs", "mean_curvature"], workers=1))
        threaded = run_check(cylinder_config(checks=["fbh2", "bhs", "mean_curvature"], workers=3))
        again = run_check(cylinder_config(checks=["fbh2", "bhs", "mean_curvature"], workers=1))
        assert comparable(single.to_document()) == comparable(threaded.to_document())
        assert comparable(single.to_document()) == comparable(again.to_document())

    def test_cross_validation_check(self):
        config = RunConfig(
            scenario="cylinder", params={"m": 2}, checks=["cross_validate"], sampling={"count": 1}
        )
        summary = run_check(config).checks["cross_validate"]
        assert summary.error is None
        assert summary.passed
        assert set(summary.details) == {
            "deviation_christoffel",
            "deviation_ricci",
            "deviation_tension",
            "deviation_H-field",
        }

    @pytest.mark.parametrize("name", [n for n in CATALOGUE if n != "custom"])
    def test_builtin_expectations_hold(self, name):
        checks = [e.check for e in build_scenario(name).expected]
        report = run_check(RunConfig(scenario=name, checks=checks, sampling={"count": 3}))
        failed = {c: s.to_dict() for c, s in report.checks.items() if not s.passed}
        assert not failed


# ============================================================
# Reports
# ============================================================


class TestReport:
    def test_round_trip(self, tmp_path):
        report = run_check(cylinder_config())
        path = tmp_path / "report.yaml"
        emit_report(report, path)
        loaded = load_report(path)
        assert loaded["format"] == REPORT_FORMAT
        assert loaded["passed"] is True
        assert list(loaded)[:3] == ["format", "generated_at", "passed"]
        assert loaded["engine"]["sample_count"] == 5
        assert loaded["scenario"]["expected"]["fbh2"] == "zero"
        assert loaded["checks"]["fbh2"]["max_residual"] == report.checks["fbh2"].max_residual
        assert len(loaded["checks"]["fbh2"]["worst_point"]) == 3

    def test_floats_read_back_as_floats(self):
        text = dump_document({"a": 2.0, "b": 1e20, "c": float("inf"), "d": 0.1})
        assert "a: 2.0\n" in text
        assert "b: 1.0e+20\n" in text
        assert "c: .inf\n" in text
        loaded = yaml.safe_load(text)
        assert loaded == {"a": 2.0, "b": 1e20, "c": float("inf"), "d": 0.1}
        assert all(isinstance(v, float) for v in loaded.values())

    def test_volatile_keys_are_ignored(self):
        assert comparable({"generated_at": "now", "passed": True}) == {"passed": True}


# ============================================================
# Command line
# ============================================================


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestMain:
    def test_run_passes(self, tmp_path, capsys):
        config = _write(tmp_path, "scenario: cylinder\nf: 'exp(x2)'\nchecks: [fbh2]\nsampling: {count: 3}\n")
        out = tmp_path / "out.yaml"
        assert main(["run", "--config", str(config), "--out", str(out)]) == 0
        assert load_report(out)["passed"] is True
        assert "fbh2" in capsys.readouterr().out

    def test_run_fails(self, tmp_path):
        config = _write(tmp_path, "scenario: cylinder\nchecks: [bhs]\nexpect: {bhs: zero}\nsampling: {count: 2}\n")
        assert main(["run", "--config", str(config)]) == 1

    def test_flags_override_config(self, tmp_path):
        config = _write(tmp_path, "scenario: cylinder\nchecks: [fbh2]\nsampling: {count: 2, seed: 1}\n")
        out = tmp_path / "out.yaml"
        assert main(["run", "--config", str(config), "--out", str(out), "--seed", "9", "--jet-order", "5"]) == 0
        engine = load_report(out)["engine"]
        assert engine["seed"] == 9
        assert engine["jet_order"] == 5

    def test_invalid_flag_is_a_usage_error(self, tmp_path, capsys):
        config = _write(tmp_path, "scenario: cylinder\nchecks: [fbh2]\nsampling: {count: 2}\n")
        assert main(["run", "--config", str(config), "--jet-order", "0"]) == 2
        assert "jet_order" in capsys.readouterr().err

    def test_overrides_are_validated(self):
        with pytest.raises(ConfigError) as info:
            cylinder_config().with_overrides(jet_order=0)
        assert info.value.key == "jet_order"
        assert cylinder_config().with_overrides(jet_order=6).jet_order == 6

    def test_usage_errors(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "missing.yaml")]) == 2
        bad = _write(tmp_path, "scenario: cylinder\nbogus: 1\n")
        assert main(["run", "--config", str(bad)]) == 2
        assert "bogus" in capsys.readouterr().err

    def test_scenarios(self, capsys):
        assert main(["scenarios"]) == 0
        listed = yaml.safe_load(capsys.readouterr().out)["scenarios"]
        assert [s["name"] for s in listed] == list(CATALOGUE)

    def test_geom(self, capsys):
        assert main(["geom", "--scenario", "cylinder", "--param", "m=2", "--point", "3.0,0.0"]) == 0
        dump = yaml.safe_load(capsys.readouterr().out)
        assert dump["frame"]["mean_curvature"] == pytest.approx(-0.5)
        assert dump["source"]["scalar"] == 0.0
        assert len(dump["tension"]) == 3

    def test_geom_outside_domain(self):
        assert main(["geom", "--scenario", "cylinder", "--point", "3.0,0.0,0.0,1.0"]) == 2
