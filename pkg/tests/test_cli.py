"""
Tests de la CLI (typer)
"""
import json

import numpy as np
import pytest
from typer.testing import CliRunner

from app.cli import app

runner = CliRunner()

DEMO = ["simulate", "--beta=-1,-1,-1", "--t-end", "2"]


def _read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_classify_row_a(tmp_path):
    out = tmp_path / "class.json"
    result = runner.invoke(app, ["classify", "--params", "0,0,0,0,0,-1", "--json", str(out)])
    assert result.exit_code == 0, result.output
    body = _read_json(out)
    assert body["class"] == "A"
    assert body["coboundary"] is True


def test_classify_from_config_file(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"params": {"a": 1, "d": 1}}), encoding="utf-8")
    out = tmp_path / "class.json"
    result = runner.invoke(app, ["classify", "--config", str(config), "--json", str(out)])
    assert result.exit_code == 0, result.output
    assert _read_json(out)["coboundary"] is True


@pytest.mark.parametrize("params", ["1,2", "sym,0,0,0,0,0", "1,x,0,0,0,0"])
def test_classify_usage_errors(params):
    result = runner.invoke(app, ["classify", "--params", params])
    assert result.exit_code == 2


def test_chart_rejects_zero_deformation():
    result = runner.invoke(app, ["chart", "--id", "sl2-nonstandard", "--phi", "0"])
    assert result.exit_code == 2


def test_chart_unknown_structure():
    assert runner.invoke(app, ["chart", "--id", "nope"]).exit_code == 2
    assert runner.invoke(app, ["chart"]).exit_code == 2


def test_chart_renders_structure(tmp_path):
    out = tmp_path / "chart.json"
    result = runner.invoke(app, ["chart", "--id", "sl2-standard", "--eta", "1", "--json", str(out)])
    assert result.exit_code == 0, result.output
    body = _read_json(out)
    assert body["family"] == "D"
    assert body["brackets"]["{J3,J+}"] == "Jp"


def test_chart_check(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["chart", "--id", "heisenberg-q", "--phi", "0.5", "--check", "--json", str(out)])
    assert result.exit_code == 0, result.output
    assert _read_json(out)["all_passed"] is True


def test_simulate_writes_outputs(tmp_path):
    csv_path, meta_path, plot_path = tmp_path / "run.csv", tmp_path / "run.json", tmp_path / "run.plt"
    result = runner.invoke(
        app, DEMO + ["--csv", str(csv_path), "--json", str(meta_path), "--gnuplot", str(plot_path)]
    )
    assert result.exit_code == 0, result.output

    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,X,Y,Z,H,C,relH,relC"
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1)
    assert data.shape[1] == 8
    assert data[0, 0] == 0.0
    assert np.all(data[:, 6] < 1e-8)
    assert np.all(data[:, 7] < 1e-8)

    meta = _read_json(meta_path)
    assert meta["status"] == "completed"
    assert meta["columns"][-1] == "relC"
    assert "run.csv" in plot_path.read_text(encoding="utf-8")


def test_simulate_is_deterministic(tmp_path):
    outputs = []
    for name in ("first", "second"):
        csv_path, meta_path = tmp_path / f"{name}.csv", tmp_path / f"{name}.json"
        result = runner.invoke(app, DEMO + ["--csv", str(csv_path), "--json", str(meta_path)])
        assert result.exit_code == 0, result.output
        outputs.append((csv_path.read_bytes(), meta_path.read_bytes()))
    assert outputs[0] == outputs[1]


def test_simulate_acceptance_run_reports_domain_exit(tmp_path):
    meta_path = tmp_path / "lv.json"
    result = runner.invoke(app, ["simulate", "--json", str(meta_path)])
    assert result.exit_code == 0, result.output
    assert _read_json(meta_path)["status"] == "domain_exit"


def test_simulate_usage_errors(tmp_path):
    assert runner.invoke(app, ["simulate", "--x0=-1,1,1"]).exit_code == 2
    assert runner.invoke(app, ["simulate", "--x0", "1,1"]).exit_code == 2
    assert runner.invoke(app, ["simulate", "--variant", "nope"]).exit_code == 2
    assert runner.invoke(app, ["simulate", "--gnuplot", str(tmp_path / "x.plt")]).exit_code == 2


def test_simulate_max_steps_fails():
    result = runner.invoke(app, DEMO + ["--max-steps", "3"])
    assert result.exit_code == 1


def test_simulate_sweep(tmp_path):
    sweep = tmp_path / "sweep.json"
    configs = [
        {"name": f"run{i}", "alpha": [1, 1, 1], "beta": [-1, -1, -1], "x0": [1, 1 + i, 2], "t_end": 1}
        for i in range(3)
    ]
    sweep.write_text(json.dumps({"configs": configs}), encoding="utf-8")
    out_dir, meta_path = tmp_path / "csv", tmp_path / "sweep_meta.json"
    result = runner.invoke(
        app, ["simulate", "--sweep", str(sweep), "--csv", str(out_dir), "--json", str(meta_path)]
    )
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in out_dir.iterdir()) == ["000_run0.csv", "001_run1.csv", "002_run2.csv"]
    assert [m["name"] for m in _read_json(meta_path)] == ["run0", "run1", "run2"]


def test_qcheck():
    assert runner.invoke(app, ["qcheck", "--max-length", "3"]).exit_code == 0
    assert runner.invoke(app, ["qcheck", "--max-length", "2", "--corrupt", "coproduct"]).exit_code == 1
    assert runner.invoke(app, ["qcheck", "--corrupt", "nope"]).exit_code == 2


def test_verify_only_hopf(tmp_path):
    out = tmp_path / "verify.json"
    result = runner.invoke(app, ["verify", "--only", "hopf", "--json", str(out)])
    assert result.exit_code == 0, result.output
    report = _read_json(out)
    assert {entry["group"] for entry in report["entries"]} == {"hopf"}
    assert report["input"]["only"] == ["hopf"]


def test_verify_corrupt_jacobi_exits_one(tmp_path):
    out = tmp_path / "verify.json"
    result = runner.invoke(app, ["verify", "--only", "pl_bracket", "--corrupt", "jacobi", "--json", str(out)])
    assert result.exit_code == 1
    statuses = {entry["name"]: entry["status"] for entry in _read_json(out)["entries"]}
    assert statuses == {"pl_bracket/jacobi": "FAIL", "pl_bracket/casimir": "PASS"}


def test_verify_usage_error():
    assert runner.invoke(app, ["verify", "--only", "nope"]).exit_code == 2
