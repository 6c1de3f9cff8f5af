"""One test per acceptance criterion; each records a PASS/FAIL line for the run summary."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from conftest import VERDICTS
from helpers import plain, shared_control_pair, shared_target_pair, u1_carry_mismatches
from qdiv.adders import build_qcla_u1
from qdiv.bits import flog2, omega
from qdiv.circuit import GateKind, Level, count_resources, toffoli
from qdiv.compnsub import Variant, build_compnsub
from qdiv.dividers import Algorithm, NrVariant, build_division
from qdiv.lowering import Strategy, lower, toffoli_7t
from qdiv.resources import (ASYMPTOTIC_N, BaselineId, formula_compnsub, formula_division, formula_strategy,
                            measure, ratio_report, validate_bounds)
from qdiv.sim import is_bijection
from qdiv.unitary import build_unitary, equivalent_up_to_global_phase
from qdiv.verify import verify_adder, verify_compnsub, verify_division

TOL = 1e-9
LOOKAHEAD = (Variant.IIa, Variant.IIb)


def record(number: int, failures: list[str], total: int, what: str) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {status}: {what} ({total - len(failures)}/{total} checks)"
    if failures:
        line += "; first failures: " + "; ".join(failures[:4])
    VERDICTS.append(line)
    print(line)
    assert not failures, line


def long_grid(n_values):
    for v in Variant:
        for n in n_values:
            for m in range(1, n + 1):
                yield v, n, m


def test_criterion_1_compnsub_correctness():
    failures, total = [], 0
    for v, k in itertools.product(Variant, range(2, 9)):
        res = verify_compnsub(v, k)
        total += 1
        if not res.ok:
            failures.append(f"{v.value} k={k}: {res}")
    record(1, failures, total, "compare-and-subtract exhaustive sweeps, k=2..8")


def test_criterion_2_division_correctness():
    failures, total = [], 0
    for v, n, m in long_grid(range(2, 7)):
        total += 1
        res = verify_division(Algorithm.LONG, v, n, m)
        if not res.ok:
            failures.append(f"long {v.value} n={n} m={m}: {res}")
    for algorithm, variants in ((Algorithm.RESTORING, list(Variant)), (Algorithm.NON_RESTORING, list(NrVariant))):
        for v, n in itertools.product(variants, range(2, 6)):
            res = verify_division(algorithm, v, n)
            total += 1
            if not res.ok:
                failures.append(f"{algorithm.value} {v.value} n={n}: {res}")
    record(2, failures, total, "division sweeps over all N and all D>=1")


def test_criterion_3_compnsub_formulas():
    failures, total = [], 0
    for v, k in itertools.product(Variant, range(2, 65)):
        rep = measure(build_compnsub(v, k), formula_strategy(v))
        for verdict in validate_bounds(rep, formula_compnsub(v, k)):
            total += 1
            if not verdict.ok:
                failures.append(f"{v.value} k={k} {verdict.metric}: {verdict.measured} vs "
                                f"{verdict.bound.kind.value} {verdict.bound.value}")
    record(3, failures, total, "compare-and-subtract counts vs closed forms, k=2..64")


def _division_cells():
    for v, n, m in long_grid(range(2, 33)):
        yield Algorithm.LONG, v, n, m
    for v, n in itertools.product(Variant, range(2, 33)):
        yield Algorithm.RESTORING, v, n, None
    for v, n in itertools.product(NrVariant, range(2, 33)):
        yield Algorithm.NON_RESTORING, v, n, None


def test_criterion_4_division_formulas():
    failures, total = [], 0
    for algorithm, v, n, m in _division_cells():
        c = build_division(algorithm, v, n, m)
        rep = measure(c, formula_strategy(v))
        for verdict in validate_bounds(rep, formula_division(algorithm, v, n, m)):
            total += 1
            if not verdict.ok:
                size = f"n={n}" + (f" m={m}" if m is not None else "")
                failures.append(f"{algorithm.value} {v.value} {size} {verdict.metric}: {verdict.measured} vs "
                                f"{verdict.bound.kind.value} {verdict.bound.value}")
    record(4, failures, total, "division counts vs closed forms, n=2..32")


# Ratio tables: cell (row, column) is cost(column) / cost(row).
LONG_COLS = ["OPF24", "I", "IIa", "IIb", "III"]
RES_COLS = ["TMCVH19", "I", "IIa", "IIb", "III"]
NRES_COLS = ["TMCVH19", "II", "III"]
RATIO_TABLES = {
    (Algorithm.LONG, "t_count"): (LONG_COLS, [
        [1, 0.39, 1.64, 1.67, 0.24], [2.56, 1, 4.17, 4.35, 0.61], [0.61, 0.24, 1, 1.01, 0.14],
        [0.60, 0.23, 0.99, 1, 0.14], [4.18, 1.64, 6.91, 7, 1]]),
    (Algorithm.LONG, "cnot_count_t_level"): (LONG_COLS, [
        [1, 0.35, 1.39, 1.41, 0.32], [2.86, 1, 4, 4, 0.90], [0.72, 0.25, 1, 1.02, 0.23],
        [0.71, 0.25, 0.98, 1, 0.22], [3.16, 1.11, 4.37, 4.47, 1]]),
    (Algorithm.RESTORING, "t_count"): (RES_COLS, [
        [1, 0.52, 2.17, 2.22, 0.31], [1.94, 1, 4.17, 4.35, 0.61], [0.46, 0.24, 1, 1.01, 0.14],
        [0.45, 0.23, 0.99, 1, 0.14], [3.18, 1.64, 6.91, 7, 1]]),
    (Algorithm.RESTORING, "cnot_count_t_level"): (RES_COLS, [
        [1, 0.57, 1.89, 1.92, 0.43], [1.76, 1, 3.33, 3.45, 0.76], [0.53, 0.30, 1, 1.02, 0.23],
        [0.52, 0.29, 0.98, 1, 0.22], [2.32, 1.32, 4.37, 4.47, 1]]),
    (Algorithm.NON_RESTORING, "t_count"): (NRES_COLS, [[1, 5, 0.29], [0.2, 1, 0.06], [3.5, 17.5, 1]]),
    (Algorithm.NON_RESTORING, "cnot_count_t_level"): (NRES_COLS, [[1, 3.85, 0.84], [0.26, 1, 0.22],
                                                                  [1.19, 4.63, 1]]),
}
BASELINE_IDS = {(Algorithm.LONG, "OPF24"): BaselineId.OPF24_Long,
                (Algorithm.RESTORING, "TMCVH19"): BaselineId.TMCVH19_Restoring,
                (Algorithm.NON_RESTORING, "TMCVH19"): BaselineId.TMCVH19_NonRestoring}


def _side(algorithm, name):
    if (algorithm, name) in BASELINE_IDS:
        return ("baseline", BASELINE_IDS[(algorithm, name)])
    return (algorithm, name)


def test_criterion_5_ratio_claims():
    failures, total = [], 0
    for (algorithm, metric), (names, rows) in RATIO_TABLES.items():
        for i, j in itertools.product(range(len(names)), repeat=2):
            if i == j:
                continue
            got = ratio_report(metric, _side(algorithm, names[j]), _side(algorithm, names[i]), asymptotic=True)
            total += 1
            if abs(got - rows[i][j]) > 0.01:
                failures.append(f"{algorithm.value} {metric} {names[j]}/{names[i]}: {got:.4f} vs {rows[i][j]}")
    opf = ("baseline", BaselineId.OPF24_Long)
    for metric, target in (("t_count", 76.08), ("cnot_count_t_level", 68.35)):
        got = 100 * (1 - ratio_report(metric, (Algorithm.LONG, Variant.III), opf, asymptotic=True))
        total += 1
        if abs(got - target) > 0.5:
            failures.append(f"{metric} reduction {got:.2f}% vs {target}%")
    record(5, failures, total, f"ratio tables and headline reductions at n={ASYMPTOTIC_N}, m=n/2")


def test_criterion_6_lowering_soundness():
    failures, total = [], 0
    ref = build_unitary(plain(3, [toffoli(0, 1, 2)]))
    total += 1
    if np.linalg.norm(ref - build_unitary(plain(3, toffoli_7t(0, 1, 2)))) > TOL:
        failures.append("seven-T Toffoli")
    for name, make in (("shared control", shared_control_pair), ("shared target", shared_target_pair)):
        c = make()
        low = lower(c, Strategy.PAIRED_12T)
        total += 1
        t = count_resources(low, Level.T).t_count
        if t != 12 or np.linalg.norm(build_unitary(c) - build_unitary(low)) > TOL:
            failures.append(f"{name} pair: t_count {t}")
    for v in (Variant.I, Variant.IIa, Variant.IIb):
        for k in range(2 if v in LOOKAHEAD else 1, 4):
            c = build_compnsub(v, k)
            u = build_unitary(c)
            for strategy in Strategy:
                total += 1
                if not equivalent_up_to_global_phase(u, build_unitary(lower(c, strategy)), TOL):
                    failures.append(f"{v.value} k={k} {strategy.value}")
    record(6, failures, total, "Clifford+T lowering matches Toffoli-level unitaries")


def test_criterion_7_adders():
    failures, total = [], 0
    for family, k in itertools.product(("ripple", "qcla", "gidney"), range(1, 7)):
        total += 1
        res = verify_adder(family, k)
        if not res.ok:
            failures.append(f"{family} k={k}: {res}")
    for k in range(2, 6):
        total += 1
        bad = u1_carry_mismatches(k)
        if bad:
            failures.append(f"carry network k={k}: {bad} mismatches")
    for k in range(2, 65):
        total += 1
        got = count_resources(build_qcla_u1(k)).toffoli_count
        want = 4 * k - 3 * omega(k) - 3 * flog2(k) - 1
        if got != want:
            failures.append(f"carry network k={k}: {got} Toffolis vs {want}")
    record(7, failures, total, "adder sweeps, carry outputs and carry-network Toffoli count")


def _reversibility_cases():
    for v in Variant:
        for k in range(2, 9):
            yield f"compnsub {v.value} k={k}", v.value, build_compnsub(v, k)
    for v, n, m in long_grid(range(2, 7)):
        yield f"long {v.value} n={n} m={m}", v.value, build_division(Algorithm.LONG, v, n, m)
    for v, n in itertools.product(Variant, range(2, 6)):
        yield f"restoring {v.value} n={n}", v.value, build_division(Algorithm.RESTORING, v, n)
    for v, n in itertools.product(NrVariant, range(2, 6)):
        yield f"nonrestoring {v.value} n={n}", v.value, build_division(Algorithm.NON_RESTORING, v, n)


def test_criterion_8_reversibility_audit():
    failures, total, bijections = [], 0, 0
    for label, variant, c in _reversibility_cases():
        measured = any(g.kind is GateKind.AND_UNCOMPUTE for g in c.gates)
        total += 1
        if variant == "III":
            if c.fully_reversible or not measured:
                failures.append(f"{label}: not flagged as measurement-based")
            continue
        if measured or not c.fully_reversible:
            failures.append(f"{label}: contains measurement")
        if c.qubit_count <= 16:
            total += 1
            bijections += 1
            if not is_bijection(c):
                failures.append(f"{label}: not a bijection")
    assert bijections > 0
    record(8, failures, total, "reversibility flags and bijection checks up to 16 qubits")


@pytest.mark.parametrize("variant", [Variant.I, Variant.IIa])
def test_paired_lowering_is_used_for_formulas(variant):
    assert formula_strategy(variant) is Strategy.PAIRED_12T
