from __future__ import annotations

import pytest

from qdiv.compnsub import Variant, build_compnsub
from qdiv.dividers import Algorithm, build_division
from qdiv.lowering import Strategy
from qdiv.resources import (BaselineId, BoundKind, MetricUnavailable, formula_baseline, formula_compnsub,
                            formula_division, formula_strategy, measure, measure_by_lowering, ratio_report,
                            validate_bounds)


def test_compnsub_examples():
    assert formula_compnsub(Variant.I, 5).toffoli_count == 14
    assert formula_compnsub(Variant.IIa, 8).toffoli_count == 11 * 8 - 6 * 1 - 6 * 3 - 4
    assert formula_compnsub(Variant.III, 1).t_count == 11
    assert formula_compnsub(Variant.I, 5).t_depth == 42
    assert formula_compnsub(Variant.IIb, 8)["cnot_toffoli"].value == 60
    assert formula_compnsub(Variant.III, 5).qubits_total == 15


def test_bound_kinds():
    b = formula_compnsub(Variant.I, 4)
    assert b["toffoli_count"].kind is BoundKind.EXACT
    assert b["t_count"].kind is BoundKind.UPPER
    assert b["t_count"].holds(b.t_count - 1) and not b["toffoli_count"].holds(b.toffoli_count - 1)


def test_division_examples():
    assert formula_division(Algorithm.LONG, Variant.I, 5, 3).t_count == 186
    assert formula_division(Algorithm.RESTORING, Variant.III, 4).t_count == 176
    assert formula_division(Algorithm.NON_RESTORING, "II", 8)["cnot_toffoli"].value == 276
    assert formula_division(Algorithm.NON_RESTORING, "III", 4).t_count == 92
    assert formula_division(Algorithm.RESTORING, Variant.I, 4)["cnot_toffoli"].value == 44


def test_baseline_examples():
    assert formula_baseline(BaselineId.TMCVH19_Restoring, 10).t_count == 3220
    assert formula_baseline(BaselineId.OPF24_Long, 10, 5).t_depth == 600
    with pytest.raises(MetricUnavailable):
        formula_baseline(BaselineId.YGW22_Long, 10, 5)["cnot"]


@pytest.mark.parametrize("metric,variant,want", [("t_count", Variant.III, 0.24), ("t_count", Variant.I, 0.39),
                                                  ("cnot", Variant.III, 0.32)])
def test_long_ratios(metric, variant, want):
    r = ratio_report(metric, (Algorithm.LONG, variant), ("baseline", BaselineId.OPF24_Long), asymptotic=True)
    assert abs(r - want) <= 0.01


def test_long_t_count_peaks_near_half():
    n = 100
    t = {m: formula_division(Algorithm.LONG, Variant.I, n, m).t_count for m in range(1, n + 1)}
    best = max(t, key=t.get)
    assert abs(best - n / 2) <= 1


@pytest.mark.parametrize("variant", list(Variant))
def test_restoring_t_count_grows(variant):
    vals = [formula_division(Algorithm.RESTORING, variant, n).t_count for n in range(2, 40)]
    assert vals == sorted(vals)


def test_formula_strategy():
    assert formula_strategy(Variant.I) is Strategy.PAIRED_12T
    assert formula_strategy("III") is Strategy.NAIVE_7T


def test_measure_matches_lowering():
    c = build_division(Algorithm.LONG, Variant.IIa, 5, 3)
    assert measure(c).as_dict() == measure_by_lowering(c).as_dict()


def test_report_example():
    c = build_division(Algorithm.LONG, Variant.III, 5, 3)
    verdicts = {v.metric: v for v in validate_bounds(measure(c, formula_strategy(Variant.III)),
                                                     formula_division(Algorithm.LONG, Variant.III, 5, 3))}
    assert verdicts["t_count"].measured == verdicts["t_count"].bound.value == 121


@pytest.mark.parametrize("variant", list(Variant))
def test_compnsub_counts_hold_small(variant):
    for k in range(2, 12):
        rep = measure(build_compnsub(variant, k), formula_strategy(variant))
        assert all(v.ok for v in validate_bounds(rep, formula_compnsub(variant, k)))
