"""Integer division circuits built from compare-and-subtract units and adders.

All three builders leave the divisor register unchanged and clear every
work qubit.  Results are read through the ``QUOT`` and ``REM`` registers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .adders import emit_gidney_add, emit_qcla_add, lookahead_work_size
from .circuit import Block, Circuit, QubitRole, cnot, fanout, x
from .compnsub import CnsPlacement, Variant, emit_compnsub, work_size


class DivisionError(ValueError):
    pass


class InvalidWidths(DivisionError):
    pass


class UnsupportedVariant(DivisionError):
    pass


class MissingRegister(DivisionError):
    pass


class Algorithm(Enum):
    LONG = "long"
    RESTORING = "restoring"
    NON_RESTORING = "nonrestoring"


class NrVariant(Enum):
    II = "II"
    III = "III"


def _variant(v) -> Variant:
    try:
        return v if isinstance(v, Variant) else Variant(v)
    except ValueError as exc:
        raise UnsupportedVariant(str(exc)) from None


def build_long_division(n: int, m: int, variant: Variant | str) -> Circuit:
    """Divide an n-bit dividend (B) by an m-bit divisor (A); quotient lands in Q."""
    variant = _variant(variant)
    if not (isinstance(n, int) and isinstance(m, int) and 1 <= m <= n):
        raise InvalidWidths(f"need 1 <= m <= n, got n={n}, m={m}")
    # a one-bit carry network is empty, so a one-bit first unit is the plain two-Toffoli form
    first = Variant.I if m == 1 and variant in (Variant.IIa, Variant.IIb) else variant
    c = Circuit(name=f"long_{variant.value}_{n}_{m}")
    a = c.add_register("A", m, QubitRole.INPUT)
    b = c.add_register("B", n, QubitRole.INPUT)
    q = c.add_register("Q", n - m + 1, QubitRole.OUTPUT)
    pad = c.add_register("PAD", 1, QubitRole.ANCILLA)
    sizes = [work_size(first, m)] + ([work_size(variant, m + 1)] if n > m else [])
    w = c.add_register("W", max(sizes), QubitRole.ANCILLA)
    emit_compnsub(c, first, m, CnsPlacement(b[n - m:], a, q[n - m], w[:sizes[0]]),
                  label=f"compnsub{m}")
    wide = a + pad
    for i in range(1, n - m + 1):
        window = b[n - m - i:n - i + 1]
        emit_compnsub(c, variant, m + 1,
                      CnsPlacement(window, wide, q[n - m - i], w[:work_size(variant, m + 1)]),
                      label=f"compnsub{m + 1}")
    c.extend(x(qb) for qb in q)
    c.registers["QUOT"] = list(q)
    c.registers["REM"] = list(b[:m])
    return c


def build_restoring_division(n: int, variant: Variant | str) -> Circuit:
    """B holds 0^n : N on input and quotient : remainder on output."""
    variant = _variant(variant)
    if not isinstance(n, int) or n < 1:
        raise InvalidWidths(f"need n >= 1, got {n}")
    if variant in (Variant.IIa, Variant.IIb) and n < 2:
        raise InvalidWidths("lookahead variants need n >= 2")
    c = Circuit(name=f"restoring_{variant.value}_{n}")
    a = c.add_register("A", n, QubitRole.INPUT)
    b = c.add_register("B", 2 * n, QubitRole.INPUT)
    w = c.add_register("W", work_size(variant, n), QubitRole.ANCILLA)
    for i in range(1, n + 1):
        window = b[n - i:2 * n - i]
        flag = b[2 * n - i]
        emit_compnsub(c, variant, n, CnsPlacement(window, a, flag, w), label=f"compnsub{n}")
        c.append(x(flag))
    c.registers["QUOT"] = list(b[n:])
    c.registers["REM"] = list(b[:n])
    c.registers["HIGH"] = list(b[n:])
    return c


def build_non_restoring_division(n: int, variant: NrVariant | str) -> Circuit:
    """Non-restoring division with an (n+1)-bit signed partial remainder.

    Window ``i`` is B[n-i .. 2n-i].  Its top bit carries the sign and is
    turned into the quotient bit once the window moves on.  The extra bit
    keeps every divisor up to 2^n - 1 in range.
    """
    try:
        variant = variant if isinstance(variant, NrVariant) else NrVariant(variant)
    except ValueError as exc:
        raise UnsupportedVariant(str(exc)) from None
    if not isinstance(n, int) or n < 2:
        raise InvalidWidths(f"need n >= 2, got {n}")
    cns = Variant.IIb if variant is NrVariant.II else Variant.III
    c = Circuit(name=f"nonrestoring_{variant.value}_{n}")
    a = c.add_register("A", n, QubitRole.INPUT)
    b = c.add_register("B", 2 * n, QubitRole.INPUT)
    if variant is NrVariant.II:
        adder_work = (n - 1) + lookahead_work_size(n)
    else:
        adder_work = n
    w = c.add_register("W", max(adder_work, work_size(cns, n + 1)), QubitRole.ANCILLA)
    pad = c.add_register("PAD", 1, QubitRole.ANCILLA) if variant is NrVariant.III else []
    flag = c.add_register("FLAG", 1, QubitRole.ANCILLA)[0]
    low = c.add_register("LSB", 1, QubitRole.ANCILLA)[0]

    def add_divisor(window: Sequence[int]) -> None:
        start = len(c.gates)
        if variant is NrVariant.II:
            emit_qcla_add(c, a, window[:n], list(w[:n - 1]) + [window[n]], w[n - 1:adder_work])
        else:
            emit_gidney_add(c, a + pad, window, w[:n])
        c.blocks.append(Block(f"adder{n}", start, len(c.gates)))

    for i in range(1, n + 1):
        window = b[n - i:2 * n - i + 1]
        if i == 1:
            c.extend(x(qb) for qb in window)
            add_divisor(window)
            c.extend(x(qb) for qb in window)
        else:
            sign = b[2 * n - i + 1]
            c.append(fanout(sign, window))
            add_divisor(window)
            c.append(fanout(sign, window))
        c.append(x(b[2 * n - i]))

    # Final fix-up: when the last remainder is negative, add D back.  With
    # s = 1 the subtrahend (~D, 1) makes the unit compute 2(R + D) + 1.
    s = b[n]
    c.append(x(s))
    c.append(fanout(s, a))
    emit_compnsub(c, cns, n + 1, CnsPlacement([low] + b[:n], [s] + a, flag, w[:work_size(cns, n + 1)]),
                  label=f"compnsub{n + 1}")
    c.append(fanout(s, a))
    c.append(x(s))
    c.extend([cnot(s, flag), cnot(s, low), x(low)])
    c.registers["QUOT"] = list(b[n:])
    c.registers["REM"] = list(b[:n])
    return c


def build_division(algorithm: Algorithm | str, variant, n: int, m: int | None = None) -> Circuit:
    algorithm = Algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    if algorithm is Algorithm.LONG:
        return build_long_division(n, n if m is None else m, variant)
    if algorithm is Algorithm.RESTORING:
        return build_restoring_division(n, variant)
    return build_non_restoring_division(n, variant)


@dataclass(frozen=True)
class DivisionResult:
    quotient: int
    remainder: int
    divisor: int

    @property
    def contract_ok(self) -> bool:
        """False when the divisor is zero or the remainder is not below it."""
        return self.divisor > 0 and 0 <= self.remainder < self.divisor


def read_result(circuit: Circuit, final: Sequence[int]) -> DivisionResult:
    for name in ("QUOT", "REM", "A"):
        if name not in circuit.registers:
            raise MissingRegister(name)

    def val(name: str) -> int:
        return sum(int(final[qb]) << i for i, qb in enumerate(circuit.registers[name]))

    return DivisionResult(val("QUOT"), val("REM"), val("A"))
