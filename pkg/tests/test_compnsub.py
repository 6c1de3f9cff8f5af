from __future__ import annotations

import pytest

from qdiv.adders import InvalidWidth
from qdiv.circuit import GateKind, Level, count_resources
from qdiv.compnsub import CnsPlacement, PlacementMismatch, Variant, build_compnsub
from qdiv.lowering import Strategy, lower
from qdiv.sim import decode, encode, simulate
from qdiv.verify import verify_compnsub


def run(variant, k, a, b):
    c = build_compnsub(variant, k)
    out = simulate(c, encode(c, {"A": a, "B": b}))
    return decode(c, out, "B"), decode(c, out, "Z"), decode(c, out, "A")


@pytest.mark.parametrize("variant", list(Variant))
def test_subtracts_when_possible(variant):
    assert run(variant, 3, 3, 5) == (2, 0, 3)


@pytest.mark.parametrize("variant", list(Variant))
def test_keeps_minuend_when_smaller(variant):
    assert run(variant, 3, 5, 3) == (3, 1, 5)


@pytest.mark.parametrize("variant", list(Variant))
def test_zero_subtrahend(variant):
    for b in range(16):
        assert run(variant, 4, 0, b) == (b, 0, 0)


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("k", range(2, 6))
def test_exhaustive_small(variant, k):
    assert verify_compnsub(variant, k).ok


def test_single_bit_variants():
    assert verify_compnsub(Variant.I, 1).ok
    assert verify_compnsub(Variant.III, 1).ok


def test_variant_i_counts():
    r = count_resources(build_compnsub(Variant.I, 5))
    assert (r.toffoli_count, r.cnot_count_toffoli_level, r.qubits_total) == (14, 15, 11)


def test_variant_iii_t_count():
    low = lower(build_compnsub(Variant.III, 5), Strategy.NAIVE_7T)
    assert count_resources(low, Level.T).t_count == 55


def test_variant_iib_toffoli_depth():
    assert count_resources(build_compnsub(Variant.IIb, 8)).toffoli_depth <= 17


@pytest.mark.parametrize("variant", [Variant.I, Variant.IIa, Variant.IIb])
def test_reversible_variants_have_no_measurement(variant):
    c = build_compnsub(variant, 6)
    assert c.fully_reversible
    assert not any(g.kind is GateKind.AND_UNCOMPUTE for g in c.gates)


def test_iii_not_reversible():
    assert not build_compnsub(Variant.III, 4).fully_reversible


def test_lookahead_needs_two_bits():
    with pytest.raises(InvalidWidth):
        build_compnsub(Variant.IIa, 1)


def test_overlapping_placement():
    with pytest.raises(PlacementMismatch):
        build_compnsub(Variant.I, 2, CnsPlacement([0, 1], [1, 2], 3))


def test_custom_placement_roles():
    c = build_compnsub(Variant.I, 2, CnsPlacement([4, 5], [0, 1], 2), qubit_count=6)
    assert c.qubit_count == 6 and c.registers["B"] == [4, 5]
    out = simulate(c, encode(c, {"A": 1, "B": 3}))
    assert decode(c, out, "B") == 2
