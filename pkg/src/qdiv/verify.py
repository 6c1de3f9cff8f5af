"""Exhaustive oracle sweeps over every basis input of a circuit family."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .adders import build_gidney_adder, build_qcla_adder, build_ripple_adder
from .circuit import Circuit
from .compnsub import Variant, build_compnsub
from .dividers import Algorithm, build_division
from .sim import ancillas_restored_batch, decode_batch, encode_batch, run_chunked


@dataclass(frozen=True)
class SweepResult:
    passed: int
    total: int
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def __str__(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.passed}/{self.total}"
        if self.counterexample:
            head += " first counterexample: " + ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
        return head


def _grid(*sizes: int) -> list[np.ndarray]:
    axes = np.meshgrid(*[np.arange(s, dtype=np.int64) for s in sizes], indexing="ij")
    return [a.ravel() for a in axes]


def _summarise(ok: np.ndarray, columns: dict[str, np.ndarray], got: dict[str, np.ndarray]) -> SweepResult:
    bad = np.flatnonzero(~ok)
    cex = None
    if bad.size:
        i = int(bad[0])
        cex = {k: int(v[i]) for k, v in columns.items()}
        cex.update({f"got_{k}": int(v[i]) for k, v in got.items()})
    return SweepResult(int(ok.sum()), int(ok.size), cex)


def run_sweep(circuit: Circuit, columns: dict[str, np.ndarray]):
    before = encode_batch(circuit, columns)
    after = run_chunked(circuit, before)
    return before, after


def verify_compnsub(variant: Variant | str, k: int) -> SweepResult:
    c = build_compnsub(variant, k)
    a, b = _grid(1 << k, 1 << k)
    before, after = run_sweep(c, {"A": a, "B": b})
    want_b = np.where(b >= a, b - a, b)
    want_z = (b < a).astype(np.int64)
    got = {"B": decode_batch(c, after, "B"), "Z": decode_batch(c, after, "Z"), "A": decode_batch(c, after, "A")}
    ok = (got["B"] == want_b) & (got["Z"] == want_z) & (got["A"] == a) & ancillas_restored_batch(c, before, after)
    return _summarise(ok, {"a": a, "b": b}, got)


ADDERS = {"ripple": build_ripple_adder, "qcla": build_qcla_adder, "gidney": build_gidney_adder}


def verify_adder(family: str, k: int) -> SweepResult:
    if family not in ADDERS:
        raise ValueError(f"unknown adder family {family!r}")
    c = build_gidney_adder(k, carry_out=True) if family == "gidney" else ADDERS[family](k)
    a, b = _grid(1 << k, 1 << k)
    before, after = run_sweep(c, {"A": a, "B": b})
    got = {"B": decode_batch(c, after, "B"), "Z": decode_batch(c, after, "Z"), "A": decode_batch(c, after, "A")}
    total = a + b
    ok = ((got["B"] == total % (1 << k)) & (got["Z"] == total >> k) & (got["A"] == a)
          & ancillas_restored_batch(c, before, after))
    return _summarise(ok, {"a": a, "b": b}, got)


def verify_division(algorithm: Algorithm | str, variant, n: int, m: int | None = None,
                    exact_width: bool = False) -> SweepResult:
    """All N in [0, 2^n) and all D >= 1 that fit the divisor register.

    ``exact_width`` keeps only divisors whose top bit is set.
    """
    algorithm = Algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    c = build_division(algorithm, variant, n, m)
    dbits = len(c.registers["A"])
    lo = 1 << (dbits - 1) if exact_width else 1
    N, D = _grid(1 << n, (1 << dbits) - lo)
    D = D + lo
    before, after = run_sweep(c, {"B": N, "A": D})
    q = decode_batch(c, after, "QUOT")
    r = decode_batch(c, after, "REM")
    expect = [oracle.ref_divide(int(x), int(y)) for x, y in zip(N, D)]
    want_q = np.array([e.quotient for e in expect], dtype=np.int64)
    want_r = np.array([e.remainder for e in expect], dtype=np.int64)
    ok = ((q == want_q) & (r == want_r) & (decode_batch(c, after, "A") == D)
          & ancillas_restored_batch(c, before, after))
    if "B" in c.registers and len(c.registers["B"]) == n:
        # long division: bits of B above the remainder must end at zero
        high = c.registers["B"][dbits:]
        if high:
            ok &= ~after[high].any(axis=0)
    return _summarise(ok, {"N": N, "D": D}, {"Q": q, "R": r})
