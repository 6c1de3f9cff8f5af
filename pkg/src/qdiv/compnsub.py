"""Compare-and-conditionally-subtract circuits.

On basis input (a, b, 0) every variant leaves ``b - a`` in the minuend
register and clears the flag when ``b >= a``; otherwise the minuend keeps
``b`` and the flag is set.  The subtrahend is always restored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .adders import InvalidWidth, carry_network, lookahead_work_size, uncompute_network
from .circuit import (Block, Circuit, QubitRole, and_compute, and_uncompute, cnot, fanout, toffoli, x)


class Variant(Enum):
    I = "I"
    IIa = "IIa"
    IIb = "IIb"
    III = "III"


class PlacementMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CnsPlacement:
    minuend: Sequence[int]
    subtrahend: Sequence[int]
    high_bit: int
    work: Sequence[int] = field(default_factory=tuple)


def min_width(variant: Variant) -> int:
    return 2 if variant in (Variant.IIa, Variant.IIb) else 1


def work_size(variant: Variant, k: int) -> int:
    if variant is Variant.I:
        return 0
    if variant is Variant.III:
        return k - 1
    base = (k - 1) + lookahead_work_size(k)
    return base if variant is Variant.IIa else base + (k - 1)


def _check(variant: Variant, k: int, pl: CnsPlacement) -> None:
    if not isinstance(k, int) or k < min_width(variant):
        raise InvalidWidth(f"variant {variant.value} needs k >= {min_width(variant)}, got {k}")
    if len(pl.minuend) != k or len(pl.subtrahend) != k:
        raise PlacementMismatch("minuend and subtrahend must each have k qubits")
    if len(pl.work) != work_size(variant, k):
        raise PlacementMismatch(f"variant {variant.value} at k={k} needs {work_size(variant, k)} work qubits")
    every = list(pl.minuend) + list(pl.subtrahend) + [pl.high_bit] + list(pl.work)
    if len(set(every)) != len(every):
        raise PlacementMismatch("placement lists overlap")


def _emit_I(c: Circuit, b, a, z) -> None:
    k = len(a)
    c.extend(x(q) for q in b)
    if k == 1:
        c.extend([toffoli(b[0], a[0], z), toffoli(z, a[0], b[0], 0, 1)])
    else:
        c.extend(cnot(a[i], b[i]) for i in range(1, k))
        c.append(cnot(a[k - 1], z))
        c.extend(cnot(a[i], a[i + 1]) for i in range(k - 2, 0, -1))
        c.extend(toffoli(b[i], a[i], a[i + 1]) for i in range(k - 1))
        c.append(toffoli(b[k - 1], a[k - 1], z))
        c.append(toffoli(z, a[k - 1], b[k - 1], 0, 1))
        for i in range(k - 2, -1, -1):
            c.append(toffoli(b[i], a[i], a[i + 1]))
            c.append(toffoli(z, a[i], b[i], 0, 1))
        c.extend(cnot(a[i], a[i + 1]) for i in range(1, k - 1))
        c.extend(cnot(a[i], b[i]) for i in range(1, k))
    c.extend(x(q) for q in b)


def _emit_II(c: Circuit, b, a, hb, work, parallel: bool) -> None:
    k = len(a)
    zl = list(work[:k - 1]) + [hb]
    nw = lookahead_work_size(k)
    w = work[k - 1:k - 1 + nw]
    copies = list(work[k - 1 + nw:])
    top = zl[-1]
    c.extend(x(q) for q in b)
    c.extend(toffoli(a[i], b[i], zl[i]) for i in range(k))
    c.extend(cnot(a[i], b[i]) for i in range(k))
    c.extend(carry_network(b, zl, w))
    if parallel:
        c.append(fanout(top, copies))
    c.extend(cnot(zl[i - 1], a[i]) for i in range(1, k))
    if parallel:
        flags = copies + [top]
        c.extend(toffoli(flags[i], a[i], b[i], 0, 1) for i in range(k - 1, -1, -1))
    else:
        c.extend(toffoli(top, a[i], b[i], 0, 1) for i in range(k - 1, -1, -1))
    c.extend(cnot(zl[i - 1], a[i]) for i in range(1, k))
    if parallel:
        c.extend(cnot(copies[i], b[i]) for i in range(k - 1))
        c.append(cnot(top, b[k - 1]))
        c.extend(x(q) for q in b)
    else:
        c.append(fanout(top, b, polarity=0))
    c.extend(uncompute_network(b, zl, w))
    c.extend(cnot(a[i], b[i]) for i in range(k))
    c.extend(toffoli(a[i], b[i], zl[i]) for i in range(k - 1))
    if parallel:
        c.extend(cnot(copies[i], b[i]) for i in range(k - 1))
        c.append(cnot(top, b[k - 1]))
        c.append(fanout(top, copies))
    else:
        c.append(fanout(top, b))


def _emit_III(c: Circuit, b, a, hb, work) -> None:
    k = len(a)
    z = list(work) + [hb]
    c.extend(x(q) for q in b)
    c.append(and_compute(b[0], a[0], z[0]))
    for i in range(1, k):
        c.extend([cnot(z[i - 1], a[i]), cnot(z[i - 1], b[i]),
                  and_compute(b[i], a[i], z[i]), cnot(z[i - 1], z[i])])
    if k > 1:
        c.extend([cnot(z[k - 2], b[k - 1]), toffoli(hb, a[k - 1], b[k - 1], 0, 1),
                  cnot(z[k - 2], a[k - 1])])
        for i in range(k - 2, 0, -1):
            c.extend([cnot(z[i - 1], z[i]), and_uncompute(b[i], a[i], z[i]),
                      cnot(z[i - 1], b[i]), toffoli(hb, a[i], b[i], 0, 1), cnot(z[i - 1], a[i])])
        c.append(and_uncompute(b[0], a[0], z[0]))
    c.append(toffoli(hb, a[0], b[0], 0, 1))
    c.extend(x(q) for q in b)


def emit_compnsub(c: Circuit, variant: Variant, k: int, placement: CnsPlacement,
                  label: str | None = None) -> None:
    _check(variant, k, placement)
    b, a, hb, work = list(placement.minuend), list(placement.subtrahend), placement.high_bit, list(placement.work)
    start = len(c.gates)
    if variant is Variant.I:
        _emit_I(c, b, a, hb)
    elif variant is Variant.III:
        _emit_III(c, b, a, hb, work)
    else:
        _emit_II(c, b, a, hb, work, parallel=variant is Variant.IIb)
    if label:
        c.blocks.append(Block(label, start, len(c.gates)))


def build_compnsub(variant: Variant | str, k: int, placement: CnsPlacement | None = None,
                   qubit_count: int | None = None) -> Circuit:
    """Standalone circuit.  Without a placement the layout is B, A, Z, W."""
    variant = Variant(variant) if isinstance(variant, str) else variant
    if not isinstance(k, int) or k < min_width(variant):
        raise InvalidWidth(f"variant {variant.value} needs k >= {min_width(variant)}, got {k}")
    c = Circuit(name=f"compnsub_{variant.value}_{k}")
    if placement is None:
        b = c.add_register("B", k, QubitRole.INPUT)
        a = c.add_register("A", k, QubitRole.INPUT)
        z = c.add_register("Z", 1, QubitRole.GARBAGE)
        w = c.add_register("W", work_size(variant, k), QubitRole.ANCILLA)
        placement = CnsPlacement(b, a, z[0], w)
    else:
        used = list(placement.minuend) + list(placement.subtrahend) + [placement.high_bit] + list(placement.work)
        total = qubit_count if qubit_count is not None else max(used) + 1
        c.add_qubits(total, QubitRole.ANCILLA)
        for q in list(placement.minuend) + list(placement.subtrahend):
            c.roles[q] = QubitRole.INPUT
        c.roles[placement.high_bit] = QubitRole.GARBAGE
        c.registers.update({"B": list(placement.minuend), "A": list(placement.subtrahend),
                            "Z": [placement.high_bit], "W": list(placement.work)})
    emit_compnsub(c, variant, k, placement, label=f"compnsub{k}")
    return c
