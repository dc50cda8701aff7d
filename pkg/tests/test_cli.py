import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from artifact.cli import run_cli

PROBLEMS = Path(__file__).resolve().parents[1] / "problems"


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_verify_exp_cubic_passes(capsys):
    assert run_cli(["verify", str(PROBLEMS / "exp_cubic.yaml")]) == 0
    r = report(capsys.readouterr().out)
    assert r["status"] == "PASS" and r["ic_exact"] == "true"
    assert float(r["residual.max_residual"]) <= 5e-3


@pytest.mark.parametrize("name", ["exp_cubic_wave", "trig_exp", "poly_span", "delay_exp"])
def test_verify_shipped_problems(name, capsys):
    assert run_cli(["verify", str(PROBLEMS / f"{name}.yaml")]) == 0
    assert report(capsys.readouterr().out)["status"] == "PASS"


def test_verify_failure_exit_one(tmp_path, capsys):
    # a residual tolerance no L1 run can meet
    text = (PROBLEMS / "exp_cubic.yaml").read_text().replace("tolerance: 5.0e-3", "tolerance: 1.0e-9")
    f = tmp_path / "tight.yaml"
    f.write_text(text)
    assert run_cli(["verify", str(f)]) == 1
    assert report(capsys.readouterr().out)["status"] == "FAIL"


def test_check_and_reduce(capsys):
    assert run_cli(["check", str(PROBLEMS / "poly_span.yaml")]) == 0
    r = report(capsys.readouterr().out)
    assert r["invariant"] == "true" and r["dimension"] == "3"
    assert run_cli(["reduce", str(PROBLEMS / "exp_cubic.yaml")]) == 0
    r = report(capsys.readouterr().out)
    assert r["fode.1"] == "D^a Φ1 = -Φ1"


def test_check_not_invariant(tmp_path, capsys):
    f = tmp_path / "v4.yaml"
    f.write_text('operator: {A1: "u", C: "u"}\nsubspace: {members: ["1", "x1", "x2", "x1*x2"]}\n')
    assert run_cli(["check", str(f)]) == 1
    r = report(capsys.readouterr().out)
    assert r["invariant"] == "false" and "witness" in r


def test_solve_writes_trajectory(tmp_path, capsys):
    traj = tmp_path / "traj.csv"
    assert run_cli(["solve", str(PROBLEMS / "exp_cubic.yaml"), "--traj", str(traj), "--h", "0.01"]) == 0
    assert report(capsys.readouterr().out)["samples"] == "101"
    data = np.loadtxt(traj, delimiter=",", skiprows=1)
    assert data.shape == (101, 3)
    assert data[0, 1:].tolist() == [0.5, 0.5]


@pytest.mark.parametrize("text,msg", [
    ("operator: {A1: u}\n", "missing field 'subspace'"),
    ("operator: {A1: u}\nsubspace: [x1]\nbogus: 1\n", "unknown field"),
    ("operator: {A1: q*u}\nsubspace: [x1]\n", "unbound operator symbols"),
    ("operator: {A1: u}\nsubspace: [x1]\nalpha: 3\n", "alpha must lie"),
    ("operator: {A1: u +}\nsubspace: [x1]\n", ""),
])
def test_bad_problem_exit_two(tmp_path, capsys, text, msg):
    f = tmp_path / "bad.yaml"
    f.write_text(text)
    assert run_cli(["check", str(f)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and msg in err


def test_missing_mu_for_wave(tmp_path, capsys):
    text = (PROBLEMS / "exp_cubic_wave.yaml").read_text().replace("  mu: [1/3, 1]\n", "")
    f = tmp_path / "w.yaml"
    f.write_text(text)
    assert run_cli(["verify", str(f)]) == 2
    assert "initial.mu" in capsys.readouterr().err


def test_missing_file(capsys):
    assert run_cli(["verify", "no/such/file.yaml"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_ml(capsys):
    assert run_cli(["ml", "1", "1", "1.0"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(math.e, rel=1e-15)
    assert run_cli(["ml", "2", "1", "-1", "--rho", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(math.cos(1), rel=1e-13)
    assert run_cli(["ml", "0.5", "1", "100"]) == 2
    assert "exceeds" in capsys.readouterr().err


def test_ml_out_file(tmp_path, capsys):
    out = tmp_path / "ml.txt"
    assert run_cli(["ml", "0.5", "1", "-2", "--out", str(out)]) == 0
    printed = capsys.readouterr().out.strip()
    assert report(out.read_text())["value"] == printed


def test_corpus_shipped(capsys):
    assert run_cli(["corpus", "tables_2_15", "--trials", "1"]) == 0
    assert "corpus.status=PASS" in capsys.readouterr().out


def test_reports_byte_identical(tmp_path, capsys):
    outs = []
    for k in range(2):
        for args in (["verify", str(PROBLEMS / "trig_exp.yaml")], ["corpus", "tables_17_27", "--trials", "1"]):
            p = tmp_path / f"{args[0]}{k}.txt"
            run_cli(args + ["--seed", "5", "--out", str(p)])
            outs.append(p.read_bytes())
    capsys.readouterr()
    assert outs[:2] == outs[2:]


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "artifact.cli", "ml", "1", "1", "0"], capture_output=True, text=True)
    assert r.returncode == 0 and float(r.stdout) == 1.0
