from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from twisted_clifford import algebra, clifford
from twisted_clifford.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_documented_examples():
    assert call("classify", "--p", "0", "--q", "2")[:2] == (0, "M_1(H)\n")
    assert call("arf", "--p", "3", "--q", "0")[:2] == (0, "0\n")
    assert call("form", "arf", "--poly", "x1*x2+x1+x2")[:2] == (0, "-1\n")


def test_classify_json():
    code, out, _ = call("classify", "--p", "3", "--q", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["iso_class"] == str(clifford.classify(3, 1))
    assert clifford.IsoClass.parse(data["iso_class"]).real_dimension == data["real_dimension"] == 16


def test_arf_brute_cross_check():
    code, out, _ = call("arf", "--p", "5", "--q", "2", "--brute")
    assert code == 0
    assert out.splitlines()[0] == str(clifford.arf_closed(5, 2))
    assert out.splitlines()[1].startswith("PASS")


def test_form_commands():
    code, out, _ = call("form", "radical", "--poly", "x1*x2+x3")
    assert code == 0 and out == "dim 1\n0 0 1\n"
    code, out, _ = call("form", "radical", "--poly", "x1", "--dim", "3")
    assert out.startswith("dim 3")
    code, out, _ = call("form", "canonical", "--poly", "x1*x3+x2*x4")
    assert code == 0 and out.startswith("q0: x1*x2+x3*x4")
    code, _, err = call("form", "canonical", "--poly", "x1", "--dim", "3")
    assert code == 2 and "dim rad" in err


def test_clock_formats():
    code, out, _ = call("clock", "--max", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "p,q,N,arf,iso_class,real_dimension"
    code, out, _ = call("clock", "--max", "4", "--format", "json")
    assert json.loads(out)["entries"][2]["iso_class"] == "M_1(H)"
    assert call("clock", "--format", "md")[1] == clifford.clock_table(8, "md")


@pytest.mark.parametrize("suite", ["periodicity", "remark-z2z4", "clock", "binomial"])
def test_verify_suites(suite):
    code, out, _ = call("verify", suite)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_small_max_and_json():
    code, out, _ = call("verify", "models", "--max", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["checks"]) == 10
    code, out, _ = call("verify", "dickson", "--max", "3")
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = call("verify", "cocycles", "--max", "16")
    assert code == 0


def test_verify_failure_exit_code(monkeypatch):
    from twisted_clifford import suites
    monkeypatch.setitem(suites.SUITES, "clock", lambda max_n: [suites.Check("broken", False)])
    code, out, _ = call("verify", "clock")
    assert code == 1 and out.startswith("FAIL broken")


def test_demos():
    code, out, _ = call("demo", "quaternions")
    assert code == 0 and "PASS quaternions reproduce the Hamilton table" in out
    code, out, _ = call("demo", "octonions")
    assert code == 0 and "PASS octonions are not associative" in out
    assert "associator on basis" in out


def test_export(tmp_path):
    path = tmp_path / "cl.json"
    code, _, _ = call("export", "algebra", "--p", "1", "--q", "2", "--out", str(path))
    assert code == 0
    B = algebra.algebra_from_json(json.loads(path.read_text()))
    A = clifford.clifford_algebra((1, 2))
    assert all(A.basis_product(a, b) == B.basis_product(a, b) for a in range(8) for b in range(8))


@pytest.mark.parametrize("argv", [
    [], ["classify", "--p", "1"], ["classify", "--p", "-1", "--q", "0"], ["arf", "--p", "x", "--q", "1"],
    ["verify", "nosuch"], ["form", "arf", "--poly", "x1**2"], ["form", "arf", "--poly", "x3", "--dim", "2"],
    ["clock", "--max", "40"], ["clock", "--format", "xml"], ["--threads", "0", "clock"],
    ["arf", "--p", "30", "--q", "0", "--brute"], ["export", "algebra", "--p", "1", "--q", "1"],
    ["export", "algebra", "--p", "1", "--q", "1", "--out", "/nonexistent/dir/x.json"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


def test_output_is_stable_and_thread_independent():
    a = call("verify", "cocycles", "--max", "16", "--seed", "7")[1]
    b = call("--seed", "7", "--threads", "3", "verify", "cocycles", "--max", "16")[1]
    assert a == b
    c = call("arf", "--p", "9", "--q", "9", "--brute", "--threads", "1")[1]
    d = call("arf", "--p", "9", "--q", "9", "--brute", "--threads", "4")[1]
    assert c == d


def test_seed_changes_random_draws():
    a = call("verify", "cocycles", "--max", "8", "--seed", "1")
    b = call("verify", "cocycles", "--max", "8", "--seed", "2")
    assert a[0] == b[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twisted_clifford", "classify", "--p", "1", "--q", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "M_1(R)xM_1(R)\n"
