import csv
import io
import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from fgflip.cli import main, run


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "fgflip.cli", *argv], capture_output=True, text=True)


def js(*argv):
    report, _ = run([*argv, "--format", "json"])
    return json.loads(report.dumps())


def test_verify_pentagon_3():
    out = js("verify", "pentagon", "3")
    assert out["status"] == "pass" and out["schema"] == "fgflip/1"
    assert out["payload"]["trace"]["length"] > 0


def test_triangle_pairings_matrix():
    m = js("triangle", "2", "--pairings")["payload"]["pairing"]
    m = [[Fraction(x) for x in row] for row in m]
    assert len(m) == 6 and all(len(r) == 6 for r in m)
    assert all(m[i][j] == -m[j][i] for i in range(6) for j in range(6))


def test_qdilog_check_theta2():
    out = js("qdilog", "check", "--theta", "2")
    assert out["status"] == "pass"
    assert all(f["max_residual"] < 1e-6 for f in out["payload"]["families"])


@pytest.mark.parametrize("argv", [
    ["triangle", "1"], ["modular", "2", "--hbar", "0"], ["qdilog", "check"], ["bogus"],
    ["triangle", "2", "--nope"], ["verify", "serre", "2"],
])
def test_usage_errors_exit_2(argv):
    r = cli(*argv)
    assert r.returncode == 2, (argv, r.stdout, r.stderr)
    assert r.stderr


def test_exit_0_text_output():
    r = cli("modular", "2", "--hbar", "1/2")
    assert r.returncode == 0 and "tau" in r.stdout


def test_exit_1_on_failed_verification(perturb, capsys):
    with perturb():
        assert main(["triangle", "3", "--format", "json"]) == 1
    capsys.readouterr()
    assert main(["triangle", "3", "--format", "json"]) == 0


def test_json_is_byte_identical():
    a = cli("verify", "zmut", "3", "--format", "json", "--seed", "4")
    b = cli("verify", "zmut", "3", "--format", "json", "--seed", "4")
    assert a.returncode == 0 and a.stdout == b.stdout
    assert "wall_time" not in a.stdout
    assert "wall_time" in cli("snake", "2", "--format", "json", "--timing").stdout


def test_csv_output():
    r = cli("snake", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(r.stdout)))
    assert rows[0] == ["path", "value"]
    assert ["status", "pass"] in rows


def test_report_dir_with_figures(tmp_path):
    for argv in (["triangle", "3"], ["graph", "3", "--mutate", "1,1"], ["snake", "3"],
                 ["qdilog", "eval", "--theta", "1", "--z", "0.5"], ["modular", "3"]):
        d = tmp_path / argv[0]
        report, _ = run([*argv, "--report", str(d)])
        assert report.status == "pass", argv
        assert (d / "report.json").exists() and (d / "report.csv").exists()
        assert list(d.glob("*.png")), argv
        assert json.loads((d / "report.json").read_text())["schema"] == "fgflip/1"


def test_suite_quick_budget():
    t0 = time.perf_counter()
    out = js("suite", "quick")
    assert time.perf_counter() - t0 < 10
    assert out["status"] == "pass", out["payload"]["failures"]


def test_suite_flips_on_perturbation(perturb):
    with perturb():
        out = js("suite", "quick")
    assert out["status"] == "fail"
    assert any(not c["ok"] for c in out["payload"]["checks"])


@pytest.mark.slow
def test_suite_full_budget():
    t0 = time.perf_counter()
    out = js("suite", "full")
    assert time.perf_counter() - t0 < 300
    assert out["status"] == "pass", out["payload"]["failures"]
