import json
import subprocess
import sys

import pytest

from cqspace.cli import run


def test_dist_table(capsys):
    assert run(["dist", "-f", "n^2", "-g", "n"]) == 0
    out = capsys.readouterr().out
    assert "value: 0.1109" in out and f"error_bound: {2.0**-80!r}" in out


def test_dist_identical(capsys):
    assert run(["dist", "-f", "n", "-g", "n", "--format", "json"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["command"] == "dist" and env["params"]["N"] == 80
    assert env["result"]["value"] == 0.0 and env["result"]["zero_by_dominance"]


def test_expansive(capsys):
    assert run(["expansive", "-f", "n", "-g", "n+1", "--alpha", "2", "--delta", "0.5"]) == 0
    assert "found at k=-1" in capsys.readouterr().out


def test_orbit_csv(tmp_path):
    out = tmp_path / "orbit.csv"
    assert run(["orbit", "-f", "n^2", "-g", "n", "--alpha", "3", "--kmin", "-3", "--kmax", "0",
                "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,d_fg,d_gf,d_sym,theoretical_fg" and len(lines) == 5
    assert lines[1].startswith("-3,1.0,")


@pytest.mark.parametrize(
    "argv, key, expected",
    [
        (["stable", "-f", "n", "-g", "sqrt(n)"], "member", False),
        (["stable", "-f", "n", "-g", "sqrt(n)", "--delta", "0.2"], "member", True),
        (["unstable", "-f", "n^2", "-g", "n"], "member", True),
        (["separation", "-f", "n^2", "-g", "n", "--delta", "0.5"], "iterate", 3),
    ],
)
def test_json_results(capsys, argv, key, expected):
    assert run(argv + ["--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["result"][key] == expected


def test_hierarchy(capsys):
    assert run(["hierarchy", "-f", "n", "-g", "n*log(n+1)^2", "--delta", "0.05", "--format", "json"]) == 0
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["gap"]["verdict"] == "GAP_HOLDS" and res["separation"]["at_iterate"] == 0


def test_entropy_repeats_f(capsys):
    assert run(["entropy", "-f", "n", "-f", "2*n", "-f", "4*n", "-f", "8*n", "--nmax", "4",
                "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["n,r", "1,3", "2,4", "3,4", "4,4"]


def test_reproduce(capsys):
    assert run(["reproduce"]) == 0
    out = capsys.readouterr().out
    statuses = [line.split()[-1] for line in out.splitlines()[1:]]
    assert len(statuses) >= 30 and set(statuses) == {"PASS"}


def test_reproduce_short_horizon_fails(capsys):
    assert run(["reproduce", "--N", "4", "--format", "csv"]) == 1
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "label,expected,computed,tolerance,status"
    assert any(r.endswith("FAIL") for r in rows)


def test_usage_error(capsys):
    assert run(["dist", "-f", "n"]) == 2
    assert "usage:" in capsys.readouterr().err
    assert run(["bogus"]) == 2


def test_library_error(capsys):
    assert run(["dist", "-f", "n @ 2", "-g", "n"]) == 1
    assert "offset 2" in capsys.readouterr().err
    assert run(["expansive", "-f", "n", "-g", "n"]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cqspace", "dist", "-f", "2*n", "-g", "n"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "value: 0.3465" in proc.stdout
