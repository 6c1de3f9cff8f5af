"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np

from qdiv.adders import build_qcla_u1
from qdiv.circuit import Circuit, QubitRole, toffoli
from qdiv.sim import decode_batch, encode_batch, run_chunked


def plain(n: int, gates=()) -> Circuit:
    c = Circuit()
    c.add_qubits(n, QubitRole.INPUT)
    return c.extend(gates)


def shared_control_pair() -> Circuit:
    return plain(5, [toffoli(0, 1, 2), toffoli(0, 3, 4)])


def shared_target_pair() -> Circuit:
    return plain(5, [toffoli(0, 1, 4), toffoli(2, 3, 4)])


def u1_carry_mismatches(k: int) -> int:
    """Feed propagate/generate bits of a + ~b into U1 and compare with bitwise carries."""
    c = build_qcla_u1(k)
    idx = np.arange(1 << (2 * k), dtype=np.int64)
    a, b = idx & ((1 << k) - 1), idx >> k
    nb = ~b & ((1 << k) - 1)
    after = run_chunked(c, encode_batch(c, {"A": a, "B": a ^ nb, "Z": a & nb}))
    got = decode_batch(c, after, "Z")
    # carry c_{i+1} from the ripple recurrence
    want = np.zeros_like(a)
    carry = np.zeros_like(a)
    for i in range(k):
        ai, ni = (a >> i) & 1, (nb >> i) & 1
        carry = (ai & ni) | (carry & (ai ^ ni))
        want |= carry << i
    return int((got != want).sum())
