from __future__ import annotations

import io
import json

import pytest

from qdiv.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_compnsub():
    code, text = run("verify", "--alg", "compnsub", "--variant", "I", "--k", "6")
    assert code == 0 and text.strip() == "PASS 4096/4096"


def test_verify_failure_exit_code():
    code, text = run("verify", "--alg", "long", "--variant", "I", "--n", "3", "--m", "2")
    assert code == 1 and "first counterexample" in text


def test_report_example():
    code, text = run("report", "--alg", "long", "--variant", "III", "--n", "5", "--m", "3",
                     "--metric", "t_count", "--json")
    row = json.loads(text)[0]
    assert code == 0 and row["measured"] == row["formula"] == 121


def test_report_csv():
    code, text = run("report", "--alg", "compnsub", "--variant", "I", "--k", "4", "--csv")
    assert code == 0 and text.splitlines()[0] == "metric,measured,formula,kind,verdict"


def test_compare_long():
    code, text = run("compare", "--alg", "long", "--baseline", "OPF24", "--asymptotic", "--json")
    ratios = {r["variant"]: float(r["ratio"]) for r in json.loads(text)}
    assert code == 0 and ratios["I"] == 0.39 and ratios["III"] == 0.24


def test_simulate_division():
    code, text = run("simulate", "--alg", "long", "--variant", "I", "--n", "5", "--m", "3", "--N", "27", "--D", "5")
    assert code == 0 and text.strip() == "quotient=5 remainder=2 divisor=5"


def test_simulate_zero_divisor():
    code, text = run("simulate", "--alg", "restoring", "--variant", "I", "--n", "3", "--N", "5", "--D", "0")
    assert "contract=violated" in text


def test_build_qasm(tmp_path):
    path = tmp_path / "c.qasm"
    code, _ = run("build", "--alg", "compnsub", "--variant", "III", "--k", "3", "--lower", "naive7t", "-o", str(path))
    text = path.read_text()
    assert code == 0 and text.startswith("OPENQASM 2.0;") and "measure" in text


@pytest.mark.parametrize("argv", [
    ("verify", "--alg", "nosuch"),
    ("build", "--alg", "compnsub", "--variant", "I"),
    ("compare", "--alg", "long", "--baseline", "TMCVH19", "--asymptotic"),
    ("report", "--alg", "ripple", "--k", "3"),
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2
