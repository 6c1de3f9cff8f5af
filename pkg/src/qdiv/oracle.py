"""Brute-force integer references used to check every circuit.

Nothing in this module touches circuit machinery; the arithmetic here is
deliberately naive so that it stays independent of the builders.
"""

from __future__ import annotations

from dataclasses import dataclass


class OracleError(ValueError):
    pass


class OutOfRange(OracleError):
    pass


class DivideByZero(OracleError):
    pass


@dataclass(frozen=True)
class CompareSubtract:
    b_out: int
    high_bit: int

    def __iter__(self):
        return iter((self.b_out, self.high_bit))


@dataclass(frozen=True)
class Division:
    quotient: int
    remainder: int

    def __iter__(self):
        return iter((self.quotient, self.remainder))


def _check(value: int, k: int, name: str) -> None:
    if k < 1:
        raise OutOfRange(f"width must be positive, got {k}")
    if not 0 <= value < (1 << k):
        raise OutOfRange(f"{name}={value} does not fit in {k} bits")


def ref_compnsub(a: int, b: int, k: int) -> CompareSubtract:
    """Subtract ``a`` from ``b`` when ``b >= a``; otherwise keep ``b`` and raise the flag."""
    _check(a, k, "a")
    _check(b, k, "b")
    if b >= a:
        return CompareSubtract(b - a, 0)
    return CompareSubtract(b, 1)


def ref_carries(a: int, b: int, k: int) -> list[int]:
    """Carries ``c_1..c_k`` of ``a + ~b`` computed bit by bit.

    ``b`` is the uncomplemented operand; its bits are negated here.
    """
    _check(a, k, "a")
    _check(b, k, "b")
    carries = []
    c = 0
    for i in range(k):
        ai = (a >> i) & 1
        nb = 1 - ((b >> i) & 1)
        c = (ai & nb) ^ (nb & c) ^ (c & ai)
        carries.append(c)
    return carries


def ones_complement_subtract(a: int, b: int, k: int) -> CompareSubtract:
    """Literal complement / add / complement procedure, bit-serial."""
    _check(a, k, "a")
    _check(b, k, "b")
    carries = ref_carries(a, b, k)
    total = 0
    c = 0
    for i in range(k):
        ai = (a >> i) & 1
        nb = 1 - ((b >> i) & 1)
        total |= (ai ^ nb ^ c) << i
        c = carries[i]
    high = carries[-1]
    if high:
        return CompareSubtract(b, 1)
    return CompareSubtract(total ^ ((1 << k) - 1), 0)


def ref_add(a: int, b: int, k: int) -> tuple[int, int]:
    """Return ``((a + b) mod 2^k, carry_out)``."""
    _check(a, k, "a")
    _check(b, k, "b")
    s = a + b
    return s & ((1 << k) - 1), s >> k


def ref_divide(n_val: int, d_val: int) -> Division:
    if d_val == 0:
        raise DivideByZero("divisor must be at least 1")
    if n_val < 0 or d_val < 0:
        raise OutOfRange("operands must be non-negative")
    q = 0
    r = n_val
    # Schoolbook shift-subtract, kept separate from Python's divmod on purpose.
    shift = max(n_val.bit_length() - d_val.bit_length(), 0)
    while shift >= 0:
        if r >= d_val << shift:
            r -= d_val << shift
            q |= 1 << shift
        shift -= 1
    return Division(q, r)
