import csv
import io
import json
import subprocess
import sys

import pytest

from tvextremum import cli
from tvextremum.cli import EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, EXIT_ORACLE, fmt, instance_to_dict, load_instance


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def ex_a(instance_dir):
    return str(instance_dir / "example_a.json")


@pytest.fixture
def ex_b(instance_dir):
    return str(instance_dir / "example_b.json")


def test_fmt():
    assert fmt(0.0) == "0"
    assert fmt(1.0) == "1"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(float("inf")) == "inf"


def test_limits_example_a(ex_a):
    code, text = run("limits", "--instance", ex_a)
    assert code == EXIT_OK
    assert "R_max = 1\n" in text
    assert "D_max = 0.822222222222" in text


def test_r_minus_infeasible_exit(ex_b, capsys):
    code, _ = run("solve", "--problem", "r-minus", "--instance", ex_b, "--target", "0.1")
    assert code == EXIT_INFEASIBLE
    assert "smallest pay-off" in capsys.readouterr().err


def test_sweep_d_plus_example_a(ex_a):
    code, text = run("sweep", "--problem", "d-plus", "--instance", ex_a, "--from", "0", "--to", "2", "--points", "5")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["budget", "value", "saturated", "alpha"]
    assert len(rows) == 6
    assert [r[0] for r in rows[1:]] == ["0", "0.5", "1", "1.5", "2"]
    assert rows[-1][1] == rows[-2][1]
    assert [r[2] for r in rows[1:]] == ["false", "false", "false", "true", "true"]


def test_sweep_is_byte_stable(ex_b, tmp_path):
    args = ["sweep", "--problem", "r-minus", "--instance", ex_b, "--from", "0.2", "--to", "0.8", "--points", "13"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*args, "--output", str(first))[0] == EXIT_OK
    assert run(*args, "--output", str(second))[0] == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().count("\n") == 14


def test_sweep_nu_output(ex_a, tmp_path):
    nu = tmp_path / "nu.csv"
    code, _ = run("sweep", "--problem", "d-minus", "--instance", ex_a, "--from", "0", "--to", "1",
                  "--points", "3", "--nu-output", str(nu))
    assert code == EXIT_OK
    rows = list(csv.reader(nu.open()))
    assert rows[0] == ["budget"] + [f"nu_{i}" for i in range(1, 9)]
    assert len(rows) == 4
    assert sum(float(x) for x in rows[1][1:]) == pytest.approx(1.0, abs=1e-10)


def test_sweep_error_exit_codes(ex_b, ex_a):
    code, _ = run("sweep", "--problem", "r-minus", "--instance", ex_b, "--from", "0.0", "--to", "0.5", "--points", "3")
    assert code == EXIT_INFEASIBLE
    code, _ = run("sweep", "--problem", "d-plus", "--instance", ex_a, "--from", "0", "--to", "3", "--points", "4")
    assert code == EXIT_INVALID
    code, _ = run("sweep", "--problem", "d-plus", "--instance", ex_a, "--from", "0", "--to", "1", "--points", "0")
    assert code == EXIT_INVALID


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["solve", "--problem", "d-plus"],
        ["solve", "--problem", "d-up", "--instance", "x.json", "--radius", "0.1"],
        ["limits", "--instance", "/nonexistent/file.json"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_INVALID


def test_solve_flag_mismatch(ex_a):
    assert run("solve", "--problem", "d-plus", "--instance", ex_a, "--target", "0.9")[0] == EXIT_INVALID
    assert run("solve", "--problem", "r-plus", "--instance", ex_a, "--radius", "0.3")[0] == EXIT_INVALID
    assert run("solve", "--problem", "d-plus", "--instance", ex_a, "--radius", "2.5")[0] == EXIT_INVALID


def test_bad_instance_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ell": [1, 0], "mu": [0.6, 0.6]}')
    assert run("limits", "--instance", str(bad))[0] == EXIT_INVALID
    bad.write_text("not json")
    assert run("limits", "--instance", str(bad))[0] == EXIT_INVALID
    bad.write_text('{"ell": [1, 0]}')
    assert run("limits", "--instance", str(bad))[0] == EXIT_INVALID


@pytest.mark.parametrize("problem,flag,budget", [
    ("d-plus", "--radius", "0.3"),
    ("d-minus", "--radius", "0.4"),
    ("r-minus", "--target", "0.5"),
    ("r-plus", "--target", "0.9"),
    ("r-plus", "--target", "1.5"),
])
def test_solve_verify_agrees(ex_a, problem, flag, budget):
    code, text = run("solve", "--problem", problem, "--instance", ex_a, flag, budget, "--verify", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(text)
    assert d["oracle"]["discrepancy"] <= cli.VERIFY_TOL


def test_solve_verify_exit_4_on_disagreement(ex_a, monkeypatch):
    from tvextremum import oracle
    from tvextremum.oracle import LPResult

    real = oracle.oracle_value

    def skewed(*args, **kwargs):
        res = real(*args, **kwargs)
        return LPResult(res.optimum + 1e-6, res.x, res.status, res.pivots)

    monkeypatch.setattr(oracle, "oracle_value", skewed)
    assert run("solve", "--problem", "d-plus", "--instance", ex_a, "--radius", "0.3", "--verify")[0] == EXIT_ORACLE

    def nudged(*args, **kwargs):
        res = real(*args, **kwargs)
        return LPResult(res.optimum + 1e-9, res.x, res.status, res.pivots)

    monkeypatch.setattr(oracle, "oracle_value", nudged)
    assert run("solve", "--problem", "d-plus", "--instance", ex_a, "--radius", "0.3", "--verify")[0] == EXIT_OK


def test_solve_text_and_csv(ex_a):
    code, text = run("solve", "--problem", "d-plus", "--instance", ex_a, "--radius", "0.3")
    assert code == EXIT_OK
    assert "value:     0.912777777778" in text
    assert "indices=1,2" in text
    code, text = run("solve", "--problem", "d-plus", "--instance", ex_a, "--radius", "0.3", "--format", "csv")
    assert code == EXIT_OK
    blocks = text.split("\n\n")
    assert blocks[0].splitlines()[0] == "problem,budget,value,alpha,saturated,payoff"
    assert blocks[1].splitlines()[1].startswith("S^0,1 2,1,")
    assert len(blocks[2].splitlines()) == 9


def test_json_round_trip(ex_b, tmp_path):
    code, text = run("solve", "--problem", "r-minus", "--instance", ex_b, "--target", "0.5", "--format", "json")
    assert code == EXIT_OK
    out = tmp_path / "solution.json"
    out.write_text(text)
    again = load_instance(out)
    orig = load_instance(ex_b)
    assert again.ell.tolist() == orig.ell.tolist()
    assert again.mu.tolist() == orig.mu.tolist()
    assert again.name == orig.name
    assert instance_to_dict(again) == instance_to_dict(orig)


def test_partition_text(ex_a):
    code, text = run("partition", "--instance", ex_a)
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[:2] == ["direction: from-min", "r: 3"]
    assert lines[2].startswith("S^0") and lines[2].endswith("indices=1,2")
    assert lines[3].endswith("indices=8")
    assert lines[4].endswith("indices=6,7")
    assert lines[6].endswith("indices=3,4")


def test_partition_from_max(ex_b):
    code, text = run("partition", "--instance", ex_b, "--direction", "from-max")
    assert code == EXIT_OK
    assert "S^6   value=0.3" in text


def test_metrics_command(ex_a, ex_b, tmp_path):
    code, text = run("metrics", "--instance", ex_a, "--second", ex_b)
    assert code == EXIT_OK
    assert text.startswith("tv:                 0\n")
    assert text.count("holds") == 6
    other = tmp_path / "two.json"
    other.write_text('{"ell": [0, 1], "mu": [1, 0]}')
    assert run("metrics", "--instance", ex_a, "--second", str(other))[0] == EXIT_INVALID


def test_console_script_module(ex_a):
    res = subprocess.run([sys.executable, "-m", "tvextremum", "limits", "--instance", ex_a],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "R_max = 1" in res.stdout
