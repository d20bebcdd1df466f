"""End-to-end checks of the command-line interface."""

import csv
import json
import os
import subprocess

import pytest

CLI = os.environ.get("MMPR_CLI")

pytestmark = pytest.mark.skipif(
    not (CLI and os.path.exists(CLI)), reason="mmpr CLI binary not available")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@pytest.fixture()
def config_path(tmp_path):
    cfg = {
        "ou": {"alpha": -1.0, "beta": -1.0, "gamma": 0.1, "zeta": -1.0,
               "sigma": 0.5},
        "eps_grid": [1e-4, 1e-3, 1e-2],
        "T": 10.0,
        "N": 10,
        "K": 2,
        "lifting": "initial_condition",
        "initial_micro": [100.0, 100.0, 0.0, 0.0, 0.0],
        "seed": 42,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path


def test_sweep_and_fit_slopes(tmp_path, config_path):
    sweep_csv = tmp_path / "sweep.csv"
    out = run_cli("sweep", "--config", str(config_path), "--out",
                  str(sweep_csv))
    assert out.returncode == 0, out.stderr
    with open(sweep_csv) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3 * 2 * 3
    assert rows[0]["quantity"] == "mean"

    slopes_csv = tmp_path / "slopes.csv"
    out = run_cli("fit-slopes", "--in", str(sweep_csv), "--floor", "1e-13",
                  "--out", str(slopes_csv))
    assert out.returncode == 0, out.stderr
    with open(slopes_csv) as fh:
        fits = list(csv.DictReader(fh))
    macro_k1 = [f for f in fits
                if f["quantity"] == "mean" and f["level"] == "macro"
                and f["k"] == "1"]
    assert len(macro_k1) == 1
    assert abs(float(macro_k1[0]["slope"]) - 1.0) < 0.3


def test_check_assumptions(tmp_path, config_path):
    report_csv = tmp_path / "report.csv"
    out = run_cli("check-assumptions", "--config", str(config_path), "--out",
                  str(report_csv))
    assert out.returncode == 0, out.stderr
    text = report_csv.read_text()
    assert text.startswith("eps,min_real_eig_a_sigma,lambda_sigma_eps")
    assert "# lambda_sigma=-2.2" in text


def test_assumption_violation_exit_code(tmp_path):
    bad = {"ou": {"zeta": 1.0}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    out = run_cli("sweep", "--config", str(path), "--out",
                  str(tmp_path / "never.csv"))
    assert out.returncode == 2
    assert not (tmp_path / "never.csv").exists()


def test_unknown_config_key_exit_code(tmp_path):
    path = tmp_path / "typo.json"
    path.write_text('{"epz_grid": [0.1]}')
    out = run_cli("sweep", "--config", str(path), "--out",
                  str(tmp_path / "never.csv"))
    assert out.returncode == 4


def test_run_trace(tmp_path, config_path):
    trace_csv = tmp_path / "trace.csv"
    out = run_cli("run", "--config", str(config_path), "--eps", "0.01",
                  "--out", str(trace_csv))
    assert out.returncode == 0, out.stderr
    with open(trace_csv) as fh:
        rows = list(csv.DictReader(fh))
    # (K+1) x (N+1) records per quantity.
    assert len(rows) == 2 * 3 * 11
    assert {r["quantity"] for r in rows} == {"mean", "variance"}


def test_mc_validate(tmp_path, config_path):
    cfg = json.loads(config_path.read_text())
    cfg["T"] = 1.0
    cfg["initial_micro"] = [1.0, 1.0, 0.4, 0.1, 0.5]
    path = tmp_path / "mc_config.json"
    path.write_text(json.dumps(cfg))
    mc_csv = tmp_path / "mc.csv"
    out = run_cli("mc-validate", "--config", str(path), "--eps", "0.1",
                  "--paths", "5000", "--dt", "0.001", "--out", str(mc_csv))
    assert out.returncode == 0, out.stderr
    assert "# passed=true" in mc_csv.read_text()
