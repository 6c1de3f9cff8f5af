"""Closed-form cost formulas, baseline formulas and a measured-vs-formula validator.

Every formula returns a :class:`ResourceBounds`: one :class:`Bound` per
metric, tagged Exact (measured must equal it) or UpperBound (measured must
not exceed it).  Metric names are the :class:`ResourceReport` field names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .bits import flog2, flog2_third, omega
from .circuit import Circuit, Level, ResourceReport, count_resources
from .compnsub import Variant
from .dividers import Algorithm, InvalidWidths, NrVariant
from .lowering import Strategy, lower, lowered_costs

__all__ = [
    "BoundKind", "Bound", "ResourceBounds", "BaselineId", "MetricUnavailable", "InvalidWidth",
    "formula_compnsub", "expected_bounds", "formula_division", "formula_baseline",
    "ratio_report", "formula_strategy", "measure", "measure_by_lowering", "validate_bounds", "Verdict", "omega", "flog2", "flog2_third",
    "ASYMPTOTIC_N", "METRICS",
]

METRICS = (
    "toffoli_count", "toffoli_depth", "t_count", "t_depth",
    "cnot_count_toffoli_level", "cnot_count_t_level",
    "qubits_total", "qubits_ancilla", "qubits_garbage",
)

ALIASES = {
    "cnot_toffoli": "cnot_count_toffoli_level",
    "cnot_t": "cnot_count_t_level",
    "cnot": "cnot_count_t_level",
    "qubits": "qubits_total",
    "ancilla": "qubits_ancilla",
    "garbage": "qubits_garbage",
}

ASYMPTOTIC_N = 2048


class InvalidWidth(ValueError):
    pass


class MetricUnavailable(KeyError):
    pass


class BoundKind(Enum):
    EXACT = "Exact"
    UPPER = "UpperBound"


@dataclass(frozen=True)
class Bound:
    value: int | float
    kind: BoundKind

    def holds(self, measured: int | float) -> bool:
        if self.kind is BoundKind.EXACT:
            return measured == self.value
        return measured <= self.value


def E(v) -> Bound:
    return Bound(v, BoundKind.EXACT)


def U(v) -> Bound:
    return Bound(v, BoundKind.UPPER)


def canonical(metric: str) -> str:
    return ALIASES.get(metric, metric)


@dataclass
class ResourceBounds:
    bounds: dict[str, Bound] = field(default_factory=dict)

    def __getitem__(self, metric: str) -> Bound:
        key = canonical(metric)
        if key not in self.bounds:
            raise MetricUnavailable(metric)
        return self.bounds[key]

    def __contains__(self, metric: str) -> bool:
        return canonical(metric) in self.bounds

    def __getattr__(self, metric: str):
        if metric.startswith("_") or metric == "bounds":
            raise AttributeError(metric)
        try:
            return self[metric].value
        except MetricUnavailable:
            raise AttributeError(metric) from None

    def as_dict(self) -> dict:
        return {k: {"value": b.value, "kind": b.kind.value} for k, b in sorted(self.bounds.items())}


def _L(k: int) -> int:
    return flog2(k)


def _L3(k: int) -> int:
    return flog2_third(k)


# COMP-N-SUB ---------------------------------------------------------------------

def formula_compnsub(variant: Variant | str, k: int) -> ResourceBounds:
    variant = Variant(variant) if isinstance(variant, str) else variant
    lo = 2 if variant in (Variant.IIa, Variant.IIb) else 1
    if not isinstance(k, int) or k < lo:
        raise InvalidWidth(f"variant {variant.value} needs k >= {lo}, got {k}")
    w, L, L3 = omega(k), _L(k), _L3(k)
    if variant is Variant.I:
        b = dict(toffoli_count=E(3 * k - 1), toffoli_depth=E(3 * k - 1), t_count=U(18 * k - 4),
                 t_depth=U(9 * k - 3), qubits_total=E(2 * k + 1), qubits_ancilla=E(0),
                 cnot_count_toffoli_level=E(4 * k - 5), cnot_count_t_level=U(25 * k - 12))
    elif variant is Variant.IIa:
        # an odd k leaves one unpaired zero-control Toffoli: one extra T
        b = dict(toffoli_count=U(11 * k - 6 * w - 6 * L - 4), toffoli_depth=U(k + 2 * L + 2 * L3 + 8),
                 t_count=U(76 * k - 42 * w - 42 * L - 21 + k % 2), t_depth=U(3 * k + 6 * L + 6 * L3 + 24),
                 qubits_total=E(4 * k - w - L), qubits_ancilla=E(2 * k - w - L - 1),
                 cnot_count_toffoli_level=U(6 * k - 2), cnot_count_t_level=U(83 * k - 42 * w - 42 * L - 30))
    elif variant is Variant.IIb:
        b = dict(toffoli_count=U(11 * k - 6 * w - 6 * L - 4), toffoli_depth=U(2 * L + 2 * L3 + 9),
                 t_count=U(77 * k - 42 * w - 42 * L - 21), t_depth=U(6 * L + 6 * L3 + 27),
                 qubits_total=E(5 * k - w - L - 1), qubits_ancilla=E(3 * k - w - L - 2),
                 cnot_count_toffoli_level=U(8 * k - 4), cnot_count_t_level=U(85 * k - 42 * w - 42 * L - 32))
    else:
        b = dict(toffoli_count=E(k), toffoli_depth=U(k), t_count=U(11 * k), t_depth=U(5 * k),
                 qubits_total=E(3 * k), qubits_ancilla=E(k - 1), cnot_count_t_level=U(19 * k - 7))
    b["qubits_garbage"] = E(1)
    return ResourceBounds(b)


def expected_bounds(variant: Variant | str, k: int) -> ResourceBounds:
    return formula_compnsub(variant, k)


# division -----------------------------------------------------------------------

def _unit_sum(units: list[tuple[Variant, int, int]]) -> dict[str, Bound]:
    """Add per-unit cells for (variant, width, repeats); a sum is Exact only if every term is."""
    out: dict[str, Bound] = {}
    for variant, k, repeats in units:
        if repeats == 0:
            continue
        for metric, bd in formula_compnsub(variant, k).bounds.items():
            if metric.startswith("qubits"):
                continue
            prev = out.get(metric)
            value = repeats * bd.value
            if prev is None:
                out[metric] = Bound(value, bd.kind)
            else:
                kind = BoundKind.EXACT if BoundKind.UPPER not in (prev.kind, bd.kind) else BoundKind.UPPER
                out[metric] = Bound(prev.value + value, kind)
    return out


def _long(variant: Variant, n: int, m: int) -> dict[str, Bound]:
    # a one-bit lookahead unit is built as the plain one-bit unit
    first = Variant.I if m == 1 and variant in (Variant.IIa, Variant.IIb) else variant
    b = _unit_sum([(first, m, 1), (variant, m + 1, n - m)])
    if variant is Variant.I:
        b.update(toffoli_count=E(3 * n * m - 3 * m * m + 2 * n + m - 1),
                 cnot_count_toffoli_level=E(4 * n * m - 4 * m * m - n + 5 * m - 5),
                 cnot_count_t_level=U(21 * n * m - 21 * m * m + 9 * n + 12 * m - 12),
                 t_count=U(18 * n * m - 18 * m * m + 14 * n + 4 * m - 4),
                 t_depth=U(9 * n * m - 9 * m * m + 6 * n + 3 * m - 3),
                 qubits_total=E(2 * n + 2))
    elif variant is Variant.IIa:
        b.update(cnot_count_toffoli_level=U(6 * n * m - 6 * m * m + 4 * n + 2 * m - 2),
                 cnot_count_t_level=U(83 * n * m - 83 * m * m + 53 * n + 30 * m - 30),
                 qubits_total=U(2 * n + 2 * m + 4 - omega(m + 1) - _L(m + 1)))
    elif variant is Variant.IIb:
        b.update(cnot_count_toffoli_level=U(8 * n * m - 8 * m * m + 4 * n + 4 * m - 4),
                 cnot_count_t_level=U(85 * n * m - 85 * m * m + 53 * n + 32 * m - 32),
                 qubits_total=U(2 * n + 3 * m + 3 - omega(m + 1) - _L(m + 1)))
    else:
        b.update(toffoli_count=E(n * m - m * m + n),
                 t_count=U(11 * n * m - 11 * m * m + 11 * n),
                 t_depth=U(5 * n * m - 5 * m * m + 5 * n),
                 cnot_count_t_level=U(19 * n * m - 19 * m * m + 12 * n + 7 * m - 7),
                 qubits_total=U(2 * n + m + 2))
    b["qubits_garbage"] = E(0)
    return b


def _restoring(variant: Variant, n: int) -> dict[str, Bound]:
    if variant in (Variant.IIa, Variant.IIb) and n < 2:
        raise InvalidWidths("lookahead variants need n >= 2")
    b = _unit_sum([(variant, n, n)])
    w, L, L3 = omega(n), _L(n), _L3(n)
    if variant is Variant.I:
        b.update(toffoli_count=E(n * (3 * n - 1)), toffoli_depth=E(n * (3 * n - 1)),
                 cnot_count_toffoli_level=E(4 * n * n - 5 * n), cnot_count_t_level=U(25 * n * n - 12 * n),
                 t_count=U(18 * n * n - 4 * n), t_depth=U(9 * n * n - 3 * n), qubits_total=E(3 * n))
    elif variant is Variant.IIa:
        b.update(toffoli_count=U(n * (11 * n - 6 * w - 6 * L - 4)),
                 cnot_count_toffoli_level=U(6 * n * n - 2 * n),
                 cnot_count_t_level=U(n * (83 * n - 42 * w - 42 * L - 30)),
                 t_count=U(n * (76 * n - 42 * w - 42 * L - 21)),
                 t_depth=U(3 * n * (n + 2 * L + 2 * L3 + 8)),
                 toffoli_depth=U(n * (n + 2 * L + 2 * L3 + 8)),
                 qubits_total=E(3 * n + 2 * n - w - L - 1))
    elif variant is Variant.IIb:
        b.update(toffoli_count=U(n * (11 * n - 6 * w - 6 * L - 4)),
                 cnot_count_toffoli_level=U(8 * n * n - 4 * n),
                 cnot_count_t_level=U(n * (85 * n - 42 * w - 42 * L - 32)),
                 t_count=U(n * (77 * n - 42 * w - 42 * L - 21)),
                 t_depth=U(3 * n * (2 * L + 2 * L3 + 9)),
                 toffoli_depth=U(n * (2 * L + 2 * L3 + 9)),
                 qubits_total=E(3 * n + 3 * n - w - L - 2))
    else:
        b.update(toffoli_count=E(n * n), toffoli_depth=U(n * n), t_count=U(11 * n * n),
                 t_depth=U(5 * n * n), cnot_count_t_level=U(19 * n * n - 7 * n), qubits_total=E(4 * n - 1))
    b["qubits_garbage"] = E(0)
    return b


def _non_restoring(variant: NrVariant, n: int) -> dict[str, Bound]:
    if n < 2:
        raise InvalidWidths(f"need n >= 2, got {n}")
    w, w1, L, L1, L3, L31 = omega(n), omega(n - 1), _L(n), _L(n - 1), _L3(n), _L3(n - 1)
    if variant is NrVariant.II:
        adder = 10 * n - 3 * w - 3 * w1 - 3 * L - 3 * L1 - 7
        cns = 11 * n - 6 * w - 6 * L - 4
        adder_depth = L + L1 + L3 + L31 + 8
        cns_depth = 2 * L + 2 * L3 + 9
        b = dict(toffoli_count=U(n * adder + cns),
                 toffoli_depth=U(n * adder_depth + cns_depth),
                 cnot_count_toffoli_level=U(4 * n * n + 3 * n - 4),
                 cnot_count_t_level=U(74 * n * n + 31 * n - 31),
                 t_count=U(7 * n * adder + 77 * n - 42 * w - 42 * L - 21),
                 t_depth=U(3 * n * adder_depth + 3 * cns_depth),
                 qubits_total=U(6 * n - w - L - 1))
    else:
        b = dict(t_count=U(4 * n * n + 7 * n), t_depth=U(2 * n * n + 3 * n),
                 cnot_count_t_level=U(16 * n * n + 4 * n - 7), qubits_total=U(4 * n))
    b["qubits_garbage"] = E(0)
    return b


def formula_division(algorithm: Algorithm | str, variant, n: int, m: int | None = None) -> ResourceBounds:
    algorithm = Algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    if not isinstance(n, int) or n < 1:
        raise InvalidWidths(f"need n >= 1, got {n}")
    if algorithm is Algorithm.LONG:
        m = n if m is None else m
        if not (isinstance(m, int) and 1 <= m <= n):
            raise InvalidWidths(f"need 1 <= m <= n, got n={n}, m={m}")
        v = Variant(variant) if isinstance(variant, str) else variant
        return ResourceBounds(_long(v, n, m))
    if algorithm is Algorithm.RESTORING:
        v = Variant(variant) if isinstance(variant, str) else variant
        return ResourceBounds(_restoring(v, n))
    v = NrVariant(variant) if isinstance(variant, str) else variant
    return ResourceBounds(_non_restoring(v, n))


# baselines ----------------------------------------------------------------------

class BaselineId(Enum):
    OPF24_Long = "OPF24_Long"
    TMCVH19_Restoring = "TMCVH19_Restoring"
    TMCVH19_NonRestoring = "TMCVH19_NonRestoring"
    YGW22_Long = "YGW22_Long"


BASELINE_FOR = {
    Algorithm.LONG: BaselineId.OPF24_Long,
    Algorithm.RESTORING: BaselineId.TMCVH19_Restoring,
    Algorithm.NON_RESTORING: BaselineId.TMCVH19_NonRestoring,
}


def formula_baseline(baseline: BaselineId | str, n, m=None) -> ResourceBounds:
    baseline = BaselineId(baseline) if isinstance(baseline, str) else baseline
    if n < 1 or (m is not None and not 1 <= m <= n):
        raise InvalidWidths(f"bad sizes n={n}, m={m}")
    m = n if m is None else m
    if baseline is BaselineId.OPF24_Long:
        b = dict(t_count=E(46 * m * n - 46 * m * m + 48 * m - 2 * n - 2),
                 t_depth=E(20 * m * n - 20 * m * m + 20 * m),
                 cnot_count_t_level=E(60 * n * m - 60 * m * m - 13 * n + 73 * m - 13))
    elif baseline is BaselineId.TMCVH19_Restoring:
        b = dict(t_count=E(35 * n * n - 28 * n), t_depth=E(15 * n * n - 12 * n),
                 cnot_count_toffoli_level=E(9 * n * n - 8 * n), cnot_count_t_level=E(44 * n * n - n))
    elif baseline is BaselineId.TMCVH19_NonRestoring:
        b = dict(t_count=E(14 * n * n + 21 * n - 28), t_depth=E(6 * n * n + 9 * n - 4),
                 cnot_count_toffoli_level=E(5 * n * n + n - 6), cnot_count_t_level=E(19 * n * n + 15 * n + 8))
    else:
        # only leading-order comparison cells exist for this baseline
        b = {}
    return ResourceBounds(b)


def ratio_report(metric: str, numerator: tuple, denominator: tuple, n: int | None = None,
                 m: int | None = None, asymptotic: bool = False) -> float:
    """Ratio of two formula values.

    Each side is ``(algorithm, variant)`` for a construction here or
    ``("baseline", BaselineId)`` for prior work.  Asymptotic mode uses
    n = ASYMPTOTIC_N and m = n/2.
    """
    if asymptotic:
        n, m = ASYMPTOTIC_N, ASYMPTOTIC_N // 2

    def value(side: tuple):
        kind, which = side
        if kind == "baseline":
            algo_m = m
            bid = BaselineId(which) if isinstance(which, str) else which
            if bid is not BaselineId.OPF24_Long:
                algo_m = None
            return formula_baseline(bid, n, algo_m)[metric].value
        algo = Algorithm(kind) if isinstance(kind, str) else kind
        return formula_division(algo, which, n, m if algo is Algorithm.LONG else None)[metric].value

    top, bottom = value(numerator), value(denominator)
    if bottom == 0:
        raise ZeroDivisionError(f"{metric} of {denominator} is zero")
    return float(Fraction(top) / Fraction(bottom))


# measuring and validating -------------------------------------------------------

def formula_strategy(variant) -> Strategy:
    """Lowering the closed forms assume: pairs only where a count relies on them (I and IIa)."""
    value = getattr(variant, "value", variant)
    return Strategy.PAIRED_12T if value in ("I", "IIa") else Strategy.NAIVE_7T


def measure(circuit: Circuit, strategy: Strategy = Strategy.PAIRED_12T) -> ResourceReport:
    """Toffoli-level counts of ``circuit`` merged with the T-level counts of its lowering."""
    rep = count_resources(circuit, Level.TOFFOLI)
    rep.t_count, rep.t_depth, rep.cnot_count_t_level = lowered_costs(circuit, strategy)
    return rep


def measure_by_lowering(circuit: Circuit, strategy: Strategy = Strategy.PAIRED_12T) -> ResourceReport:
    """Same as :func:`measure` but builds the lowered circuit and counts it directly."""
    rep = count_resources(circuit, Level.TOFFOLI)
    low = count_resources(lower(circuit, strategy), Level.T)
    rep.t_count, rep.t_depth, rep.cnot_count_t_level = low.t_count, low.t_depth, low.cnot_count_t_level
    return rep


@dataclass(frozen=True)
class Verdict:
    metric: str
    measured: int | float
    bound: Bound

    @property
    def ok(self) -> bool:
        return self.bound.holds(self.measured)


def validate_bounds(report: ResourceReport, bounds: ResourceBounds) -> list[Verdict]:
    values = report.as_dict()
    return [Verdict(metric, values[metric], bd) for metric, bd in sorted(bounds.bounds.items())]
