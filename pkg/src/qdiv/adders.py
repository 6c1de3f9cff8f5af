"""Adder builders: ripple-carry, carry-lookahead (U1/U2 and the full adder)
and the ripple adder built from temporary AND gadgets.

The ``emit_*`` functions write gates onto caller-chosen qubits of an
existing circuit, so larger builders can place adders anywhere.  The
``build_*`` functions wrap them into standalone circuits with registers.
"""

from __future__ import annotations

from typing import Sequence

from .bits import flog2, omega
from .circuit import (Circuit, Gate, QubitRole, and_compute, and_uncompute, cnot, toffoli, x)


class InvalidWidth(ValueError):
    pass


def _need(k: int, lo: int) -> None:
    if not isinstance(k, int) or k < lo:
        raise InvalidWidth(f"width must be an integer >= {lo}, got {k!r}")


# ripple carry -----------------------------------------------------------------

def emit_ripple_add(c: Circuit, a: Sequence[int], b: Sequence[int], z: int) -> None:
    """b <- a + b mod 2^k, z ^= carry-out; a restored.  One Toffoli ladder up, one down."""
    k = len(a)
    if k == 1:
        c.extend([toffoli(b[0], a[0], z), cnot(a[0], b[0])])
        return
    c.extend(cnot(a[i], b[i]) for i in range(1, k))
    c.append(cnot(a[k - 1], z))
    c.extend(cnot(a[i], a[i + 1]) for i in range(k - 2, 0, -1))
    c.extend(toffoli(b[i], a[i], a[i + 1]) for i in range(k - 1))
    c.append(toffoli(b[k - 1], a[k - 1], z))
    for i in range(k - 1, 0, -1):
        c.append(cnot(a[i], b[i]))
        c.append(toffoli(b[i - 1], a[i - 1], a[i]))
    c.extend(cnot(a[i], a[i + 1]) for i in range(1, k - 1))
    c.extend(cnot(a[i], b[i]) for i in range(k))


def build_ripple_adder(k: int) -> Circuit:
    _need(k, 1)
    c = Circuit(name=f"ripple_adder_{k}")
    a = c.add_register("A", k, QubitRole.INPUT)
    b = c.add_register("B", k, QubitRole.INPUT)
    z = c.add_register("Z", 1, QubitRole.OUTPUT)
    emit_ripple_add(c, a, b, z[0])
    return c


# carry lookahead ----------------------------------------------------------------

def lookahead_work_size(k: int) -> int:
    """Ancillas holding the intermediate propagate products."""
    return k - omega(k) - flog2(k)


def carry_network(p: Sequence[int], g: Sequence[int], w: Sequence[int]) -> list[Gate]:
    """Toffolis turning generate bits into carries, in log depth.

    Lane ``i`` holds ``p[i]`` (propagate) and ``g[i]`` (generate); afterwards
    ``g[i]`` holds the carry out of bit ``i``.  ``p[0]`` is never read and
    ``g[-1]`` is never used as a control.  ``w`` must be zero and is restored.
    """
    n = len(g)
    top = flog2(n)
    if len(w) < lookahead_work_size(n):
        raise InvalidWidth(f"need {lookahead_work_size(n)} work qubits, got {len(w)}")
    # prop[t][m]: qubit holding the AND of p over block m of size 2^t
    prop: list[dict[int, int]] = [dict(enumerate(p))]
    slot = iter(w)
    for t in range(1, top):
        prop.append({m: next(slot) for m in range(1, n >> t)})

    def G(j: int) -> int:
        return g[j - 1]

    def p_round(t: int) -> list[Gate]:
        return [toffoli(prop[t - 1][2 * m], prop[t - 1][2 * m + 1], prop[t][m]) for m in range(1, n >> t)]

    def g_round(t: int) -> list[Gate]:
        h = 1 << (t - 1)
        return [toffoli(G(2 * h * m + h), prop[t - 1][2 * m + 1], G(2 * h * m + 2 * h))
                for m in range(n >> t)]

    def c_round(t: int) -> list[Gate]:
        h = 1 << (t - 1)
        return [toffoli(G(2 * h * m), prop[t - 1][2 * m], G(2 * h * m + h))
                for m in range(1, (n - h) // (2 * h) + 1)]

    gates: list[Gate] = []
    for t in range(1, top + 1):
        if t < top:
            gates += p_round(t)
        gates += g_round(t)
    c_top = flog2(2 * n / 3)
    for t in range(top - 1, c_top, -1):
        gates += p_round(t)
    for t in range(c_top, 0, -1):
        gates += c_round(t)
        if t < top:
            gates += p_round(t)
    return gates


def uncompute_network(p: Sequence[int], g: Sequence[int], w: Sequence[int]) -> list[Gate]:
    """Reverse of the carry network without the Toffolis that write the top lane."""
    top_lane = g[-1]
    return [gt for gt in reversed(carry_network(p, g, w)) if gt.targets[0] != top_lane]


def _lookahead_circuit(k: int, name: str) -> tuple[Circuit, list[int], list[int], list[int], list[int]]:
    c = Circuit(name=name)
    a = c.add_register("A", k, QubitRole.INPUT)
    b = c.add_register("B", k, QubitRole.INPUT)
    zs = c.add_register("Z", k, QubitRole.ANCILLA)
    c.roles[zs[-1]] = QubitRole.OUTPUT
    w = c.add_register("W", lookahead_work_size(k), QubitRole.ANCILLA)
    return c, a, b, zs, w


def build_qcla_u1(k: int) -> Circuit:
    """Carry computation on lanes (A_i, B_i = propagate, Z_i = generate)."""
    _need(k, 2)
    c, a, b, zs, w = _lookahead_circuit(k, f"qcla_u1_{k}")
    c.extend(carry_network(b, zs, w))
    return c


def build_qcla_u2(k: int) -> Circuit:
    """Carry uncomputation that leaves the top carry in Z_{k-1}."""
    _need(k, 2)
    c, a, b, zs, w = _lookahead_circuit(k, f"qcla_u2_{k}")
    c.extend(uncompute_network(b, zs, w))
    return c


def emit_qcla_add(c: Circuit, a: Sequence[int], b: Sequence[int], z: Sequence[int],
                  w: Sequence[int]) -> None:
    """b <- a + b mod 2^k and z[-1] ^= carry-out.

    ``z[:-1]`` and ``w`` are clean ancillas; ``z[-1]`` may hold any value.
    The low carries are uncomputed with a (k-1)-bit network, using the fact
    that a + ~s has the same low carries as a + b when s = a + b.
    """
    k = len(a)
    if k == 1:
        c.extend([toffoli(a[0], b[0], z[0]), cnot(a[0], b[0])])
        return
    c.extend(toffoli(a[i], b[i], z[i]) for i in range(k))
    c.extend(cnot(a[i], b[i]) for i in range(k))
    c.extend(carry_network(b, z, w))
    c.extend(cnot(z[i - 1], b[i]) for i in range(1, k))
    c.extend(x(b[i]) for i in range(k - 1))
    c.extend(cnot(a[i], b[i]) for i in range(1, k - 1))
    if k > 2:
        c.extend(reversed(carry_network(b[:k - 1], z[:k - 1], w)))
    c.extend(cnot(a[i], b[i]) for i in range(1, k - 1))
    c.extend(toffoli(a[i], b[i], z[i]) for i in range(k - 1))
    c.extend(x(b[i]) for i in range(k - 1))


def qcla_ancilla_count(k: int) -> int:
    return (k - 1) + lookahead_work_size(k)


def build_qcla_adder(k: int) -> Circuit:
    _need(k, 1)
    c = Circuit(name=f"qcla_adder_{k}")
    a = c.add_register("A", k, QubitRole.INPUT)
    b = c.add_register("B", k, QubitRole.INPUT)
    low = c.add_register("C", k - 1, QubitRole.ANCILLA)
    z = c.add_register("Z", 1, QubitRole.OUTPUT)
    w = c.add_register("W", lookahead_work_size(k), QubitRole.ANCILLA)
    emit_qcla_add(c, a, b, low + z, w)
    return c


# AND-gadget ripple ----------------------------------------------------------------

def emit_gidney_add(c: Circuit, a: Sequence[int], b: Sequence[int], t: Sequence[int],
                    carry: int | None = None) -> None:
    """b <- a + b mod 2^k using k-1 clean ancillas ``t``.

    With ``carry`` given (a clean qubit), the carry-out is also computed into
    it by one extra AND that is never uncomputed.
    """
    k = len(a)
    if k == 1:
        if carry is not None:
            c.append(and_compute(a[0], b[0], carry))
        c.append(cnot(a[0], b[0]))
        return
    c.append(and_compute(a[0], b[0], t[0]))
    for i in range(1, k - 1):
        c.extend([cnot(t[i - 1], a[i]), cnot(t[i - 1], b[i]),
                  and_compute(a[i], b[i], t[i]), cnot(t[i - 1], t[i])])
    top = k - 1
    if carry is not None:
        c.extend([cnot(t[top - 1], a[top]), cnot(t[top - 1], b[top]),
                  and_compute(a[top], b[top], carry), cnot(t[top - 1], carry),
                  cnot(t[top - 1], a[top])])
        c.append(cnot(a[top], b[top]))
    else:
        c.extend([cnot(t[top - 1], b[top]), cnot(a[top], b[top])])
    for i in range(k - 2, 0, -1):
        c.extend([cnot(t[i - 1], t[i]), and_uncompute(a[i], b[i], t[i]),
                  cnot(t[i - 1], a[i]), cnot(a[i], b[i])])
    c.extend([and_uncompute(a[0], b[0], t[0]), cnot(a[0], b[0])])


def build_gidney_adder(k: int, carry_out: bool = False) -> Circuit:
    _need(k, 1)
    c = Circuit(name=f"and_adder_{k}")
    a = c.add_register("A", k, QubitRole.INPUT)
    b = c.add_register("B", k, QubitRole.INPUT)
    t = c.add_register("T", k - 1, QubitRole.ANCILLA)
    z = c.add_register("Z", 1, QubitRole.OUTPUT) if carry_out else None
    emit_gidney_add(c, a, b, t, z[0] if z else None)
    return c
