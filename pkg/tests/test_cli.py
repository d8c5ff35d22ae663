import json
import subprocess
import sys
from pathlib import Path

import pytest

from meshtorsion.cli import main

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", GRAPHS / "theta.graph")
    assert code == 0
    assert out.strip() == "V=2 E=3 F=3 chi=2 genus=0 w=1"


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "--json", GRAPHS / "cluster.graph")
    data = json.loads(out)
    assert code == 0
    assert data == {"V": 8, "E": 12, "F": 6, "chi": 2, "genus": 0, "P": 7, "N": 1, "w": 3, "Q": 3}


def test_torsion_undefined(capsys):
    code, _, err = run(capsys, "torsion", GRAPHS / "theta.graph")
    assert code == 1
    assert "torsion undefined for |w|=1" in err


def test_torsion(capsys):
    code, out, _ = run(capsys, "torsion", GRAPHS / "prism_plus.graph")
    assert code == 0
    assert out.splitlines()[0] == "n=3 epsilon=+ tau=+-(1 - z)"
    code, out, _ = run(capsys, "torsion", "--json", GRAPHS / "prism_minus.graph")
    data = json.loads(out)
    assert (data["n"], data["epsilon"], data["inconclusive"]) == (3, -1, False)


def test_torsion_n_two(capsys):
    code, out, _ = run(capsys, "torsion", GRAPHS / "k4_plus.graph")
    assert code == 0 and "n=2" in out


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", GRAPHS / "prism_plus.graph", GRAPHS / "prism_minus.graph")
    assert (code, out.strip()) == (0, "DistinctByTuraev")
    code, out, _ = run(capsys, "compare", GRAPHS / "k4_plus.graph", GRAPHS / "k4_minus.graph")
    assert out.strip() == "Inconclusive"
    code, out, _ = run(capsys, "compare", "--json", GRAPHS / "theta.graph", GRAPHS / "prism_plus.graph")
    assert json.loads(out) == {"verdict": "DistinctByReidemeister"}


def test_labels(capsys):
    code, out, _ = run(capsys, "labels", GRAPHS / "cluster.graph", "--cut", "E56.N1-E56.N2")
    assert code == 0
    assert out.splitlines()[-1] == "closure: v^3 = u^3"
    code, out, _ = run(capsys, "labels", "--json", GRAPHS / "cluster.graph", "--cut", "E56.N2")
    data = json.loads(out)
    assert data["closure"]["relation"] == "v^3 = u^3"
    assert data["cut_edge"] == "E56.N1-E56.N2"


def test_labels_without_valid_cut(capsys):
    code, _, err = run(capsys, "labels", GRAPHS / "theta_torus.graph")
    assert code == 1 and "2-fold covering" in err


def test_labels_unknown_cut(capsys):
    code, _, err = run(capsys, "labels", GRAPHS / "theta.graph", "--cut", "zz")
    assert code == 1 and "no edge" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--random", "10", "--seed", "3", "--trials", "20", GRAPHS / "cluster.graph")
    assert code == 0
    assert "11 graph(s) checked" in out
    code, out, _ = run(capsys, "verify", "--json", "--random", "5", "--seed", "3", "--trials", "10")
    data = json.loads(out)
    assert data["ok"] and set(data["checks"]) == {
        "edge_identity",
        "vertex_identity",
        "exchange_no_change",
        "euler_numbers",
    }


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--json", "--random", "5", "--seed", "9", "--trials", "5")
    second = run(capsys, "verify", "--json", "--random", "5", "--seed", "9", "--trials", "5")
    assert first == second


def test_r1(capsys):
    code, out, _ = run(capsys, "r1", "2")
    assert (code, out.strip()) == (0, "0.000000000000")
    code, out, _ = run(capsys, "r1", "3", "--json", "--tol", "1e-6")
    assert abs(json.loads(out)["r1"] - 2.0298832128) < 1e-5
    code, _, err = run(capsys, "r1", "3", "--tol", "-1")
    assert code == 1 and "tolerance" in err


def test_parse_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex v1 + : a b c\nedge a d\n")
    code, _, err = run(capsys, "info", bad)
    assert code == 2 and "bad.graph:2:" in err
    two = tmp_path / "two.graph"
    two.write_text("vertex v1 + : a b\nvertex v2 + : c d\nedge a - c\nedge b - d\n")
    code, _, err = run(capsys, "info", two)
    assert code == 2 and "trivalent required" in err
    code, _, _ = run(capsys, "info", tmp_path / "missing.graph")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "meshtorsion", "info", str(GRAPHS / "theta.graph")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "V=2 E=3 F=3 chi=2 genus=0 w=1"
