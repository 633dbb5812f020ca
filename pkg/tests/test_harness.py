import json

import numpy as np
import pytest

from nawarp.harness import checks as checks_mod
from nawarp.harness import cli
from nawarp.harness.config import ConfigError, load_config
from nawarp.harness.runner import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_PASS,
    report_body,
    run,
)

FAST_YAML = """\
scenarios:
  - name: quick-algebra
    module: algebra
    seed: 7
    m: 2
  - name: quick-coupling
    module: coupling
    seed: 8
    m: 2
    coupling: {kind: vector, Y: [0.3, -0.2, 0.7]}
"""


def _write(tmp_path, text, name="cfg.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_yaml_and_json_agree(tmp_path):
    ypath = _write(tmp_path, FAST_YAML)
    scenarios_y = load_config(ypath)
    jdata = {
        "scenarios": [
            {"name": "quick-algebra", "module": "algebra", "seed": 7, "m": 2},
            {
                "name": "quick-coupling",
                "module": "coupling",
                "seed": 8,
                "m": 2,
                "coupling": {"kind": "vector", "Y": [0.3, -0.2, 0.7]},
            },
        ]
    }
    jpath = _write(tmp_path, json.dumps(jdata), "cfg.json")
    scenarios_j = load_config(jpath)
    assert [s.name for s in scenarios_y] == [s.name for s in scenarios_j]
    assert scenarios_y[0] == scenarios_j[0]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("scenarios: []", "no scenarios"),
        ("scenarios:\n  - {name: a, module: algebra}\n", "seed"),
        ("scenarios:\n  - {name: a, module: algebra, seed: 1, bogus: 2}\n", "unknown keys"),
        ("scenarios:\n  - {name: a, module: nosuch, seed: 1}\n", "module"),
        (
            "scenarios:\n"
            "  - {name: a, module: algebra, seed: 1}\n"
            "  - {name: a, module: coupling, seed: 2}\n",
            "duplicate",
        ),
        ("unrelated: 1\nscenarios:\n  - {name: a, module: algebra, seed: 1}\n", "unknown top-level"),
    ],
)
def test_config_rejections(tmp_path, text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        load_config(_write(tmp_path, text))


def test_missing_file_and_bad_extension(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.yaml")
    path = _write(tmp_path, FAST_YAML, "cfg.toml")
    with pytest.raises(ConfigError):
        load_config(path)


def test_run_is_deterministic(tmp_path):
    scenarios = load_config(_write(tmp_path, FAST_YAML))
    body1 = report_body(run(scenarios))
    body2 = report_body(run(scenarios))
    assert body1 == body2
    assert body1["summary"]["failed"] == 0
    assert body1["summary"]["inconclusive"] == 0


def test_seed_override_changes_nothing_structural(tmp_path):
    scenarios = load_config(_write(tmp_path, FAST_YAML))
    report = run(scenarios, seed_override=12345)
    assert report.summary["failed"] == 0


def test_parallel_matches_serial(tmp_path):
    scenarios = load_config(_write(tmp_path, FAST_YAML))
    assert report_body(run(scenarios)) == report_body(run(scenarios, jobs=2))


def test_exception_becomes_failed_record(tmp_path):
    text = FAST_YAML.replace(
        "coupling: {kind: vector, Y: [0.3, -0.2, 0.7]}",
        "coupling: {kind: vector, Y: [0.0, 0.0, 0.0]}",
    )
    scenarios = load_config(_write(tmp_path, text))
    report = run(scenarios)
    failed = [r for r in report.records if r.verdict == "fail"]
    assert failed
    assert any("InadmissibleCouplingError" in r.note for r in failed)
    assert report.exit_code == EXIT_FAIL


def test_fail_fast_stops_scenario(tmp_path):
    text = FAST_YAML + "    tolerances: {\"coupling.eigenvalue-formula\": -1.0}\n"
    scenarios = load_config(_write(tmp_path, text))
    full = run(scenarios)
    short = run(scenarios, fail_fast=True)
    n_coupling_full = sum(1 for r in full.records if r.scenario == "quick-coupling")
    n_coupling_short = sum(1 for r in short.records if r.scenario == "quick-coupling")
    assert n_coupling_short < n_coupling_full


def test_cli_pass_and_reports(tmp_path, capsys):
    cfg = _write(tmp_path, FAST_YAML)
    out = tmp_path / "reports"
    code = cli.main(["run", str(cfg), "--out-dir", str(out)])
    assert code == EXIT_PASS
    body = json.loads((out / "report.json").read_text())
    assert body["summary"]["failed"] == 0
    assert "timing" in body
    text = (out / "report.txt").read_text()
    assert "passed" in text
    assert capsys.readouterr().out.strip()


def test_cli_failure_exit_code(tmp_path):
    text = FAST_YAML + "    tolerances: {\"coupling.projector-algebra\": -1.0}\n"
    cfg = _write(tmp_path, text)
    code = cli.main(["run", str(cfg), "--out-dir", str(tmp_path / "r")])
    assert code == EXIT_FAIL


def test_cli_config_error_exit_code(tmp_path, capsys):
    cfg = _write(tmp_path, "scenarios:\n  - {name: a, module: algebra}\n")
    code = cli.main(["run", str(cfg), "--out-dir", str(tmp_path / "r")])
    assert code == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_cli_rejects_unknown_format(tmp_path):
    cfg = _write(tmp_path, FAST_YAML)
    code = cli.main(["run", str(cfg), "--format", "pdf"])
    assert code == EXIT_CONFIG


def test_inconclusive_exit_code(tmp_path):
    def nan_check(sc, rng):
        return float("nan")

    cdef = checks_mod.CheckDef(
        "algebra.synthetic-nan", "algebra", "none", 1e-12, "synthetic", nan_check
    )
    checks_mod.REGISTRY[cdef.check_id] = cdef
    try:
        scenarios = load_config(
            _write(tmp_path, "scenarios:\n  - {name: a, module: algebra, seed: 1}\n")
        )
        report = run(scenarios)
        assert report.exit_code == EXIT_INCONCLUSIVE
        rec = next(r for r in report.records if r.check_id == cdef.check_id)
        assert rec.verdict == "inconclusive"
    finally:
        del checks_mod.REGISTRY[cdef.check_id]


def test_list_checks_and_explain(capsys):
    assert cli.main(["list-checks"]) == EXIT_PASS
    listing = capsys.readouterr().out
    assert "lie.reconstruction" in listing
    assert cli.main(["explain", "coupling.projector-algebra"]) == EXIT_PASS
    text = capsys.readouterr().out
    assert "tolerance" in text
    assert cli.main(["explain", "nosuch.check"]) == EXIT_CONFIG


def test_report_body_strips_timing(tmp_path):
    scenarios = load_config(_write(tmp_path, FAST_YAML))
    body = report_body(run(scenarios))
    for rec in body["records"]:
        assert "seconds" not in rec
        assert isinstance(rec["residual"], (float, type(None)))
