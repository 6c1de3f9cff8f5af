"""Gate-list circuit IR, register bookkeeping, validation and cost metrics."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence


class CircuitError(Exception):
    pass


class InvalidQubit(CircuitError):
    pass


class MalformedGate(CircuitError):
    pass


class WrongLevel(CircuitError):
    pass


class GateKind(Enum):
    X = "x"
    H = "h"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    Z = "z"
    CZ = "cz"
    CNOT = "cx"
    MULTI_CNOT = "mcx"
    TOFFOLI = "ccx"
    AND_COMPUTE = "and"
    AND_UNCOMPUTE = "unand"
    # Z-basis measurement of the target, classically controlled CZ on the two
    # controls, then reset.  Only produced when an AND uncompute is expanded.
    MEASURE_FIXUP = "measure_fixup"

    # members are singletons; identity hashing keeps set lookups in C
    __hash__ = object.__hash__


SINGLE_QUBIT = frozenset({GateKind.X, GateKind.H, GateKind.S, GateKind.SDG,
                          GateKind.T, GateKind.TDG, GateKind.Z})
CLASSICAL = frozenset({GateKind.X, GateKind.CNOT, GateKind.MULTI_CNOT, GateKind.TOFFOLI,
                       GateKind.AND_COMPUTE, GateKind.AND_UNCOMPUTE})
TOFFOLI_LEVEL_ONLY = frozenset({GateKind.TOFFOLI})
GADGETS = frozenset({GateKind.AND_COMPUTE, GateKind.AND_UNCOMPUTE})
T_KINDS = frozenset({GateKind.T, GateKind.TDG})
NON_UNITARY = frozenset({GateKind.AND_UNCOMPUTE, GateKind.MEASURE_FIXUP})


class QubitRole(Enum):
    INPUT = "input"
    OUTPUT = "output"
    ANCILLA = "ancilla"
    GARBAGE = "garbage"


class Level(Enum):
    TOFFOLI = "toffoli"
    T = "t"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    controls: tuple[tuple[int, int], ...] = ()
    targets: tuple[int, ...] = ()
    # derived once; gates are immutable and these are read constantly
    control_qubits: tuple[int, ...] = field(init=False, repr=False, compare=False)
    qubits: tuple[int, ...] = field(init=False, repr=False, compare=False)
    polarities: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cq = tuple(q for q, _ in self.controls)
        object.__setattr__(self, "control_qubits", cq)
        object.__setattr__(self, "qubits", cq + tuple(self.targets))
        object.__setattr__(self, "polarities", tuple(p for _, p in self.controls))

    def remap(self, mapping: Sequence[int] | Mapping[int, int]) -> "Gate":
        return Gate(self.kind,
                    tuple((mapping[q], p) for q, p in self.controls),
                    tuple(mapping[t] for t in self.targets))

    def __str__(self) -> str:
        ctl = ",".join(("" if p else "~") + str(q) for q, p in self.controls)
        tgt = ",".join(str(t) for t in self.targets)
        return f"{self.kind.value}({ctl};{tgt})" if ctl else f"{self.kind.value}({tgt})"


def _single(kind: GateKind):
    def make(q: int) -> Gate:
        return Gate(kind, (), (q,))
    make.__name__ = kind.name.lower()
    return make


x = _single(GateKind.X)
h = _single(GateKind.H)
s = _single(GateKind.S)
sdg = _single(GateKind.SDG)
t = _single(GateKind.T)
tdg = _single(GateKind.TDG)
z = _single(GateKind.Z)


def cz(a: int, b: int) -> Gate:
    return Gate(GateKind.CZ, (), (a, b))


def cnot(c: int, tgt: int) -> Gate:
    return Gate(GateKind.CNOT, ((c, 1),), (tgt,))


def fanout(c: int, targets: Iterable[int], polarity: int = 1) -> Gate:
    return Gate(GateKind.MULTI_CNOT, ((c, polarity),), tuple(targets))


def toffoli(c1: int, c2: int, tgt: int, p1: int = 1, p2: int = 1) -> Gate:
    return Gate(GateKind.TOFFOLI, ((c1, p1), (c2, p2)), (tgt,))


def and_compute(c1: int, c2: int, tgt: int) -> Gate:
    return Gate(GateKind.AND_COMPUTE, ((c1, 1), (c2, 1)), (tgt,))


def and_uncompute(c1: int, c2: int, tgt: int) -> Gate:
    return Gate(GateKind.AND_UNCOMPUTE, ((c1, 1), (c2, 1)), (tgt,))


def measure_fixup(c1: int, c2: int, tgt: int) -> Gate:
    return Gate(GateKind.MEASURE_FIXUP, ((c1, 1), (c2, 1)), (tgt,))


_SHAPE_PROBLEMS: dict[tuple, str | None] = {}


def _shape_problem(kind: GateKind, pols: tuple[int, ...], nt: int) -> str | None:
    if any(p not in (0, 1) for p in pols):
        return "control polarity must be 0 or 1"
    nc = len(pols)
    if kind in SINGLE_QUBIT:
        ok = nc == 0 and nt == 1
    elif kind is GateKind.CZ:
        ok = nc == 0 and nt == 2
    elif kind is GateKind.CNOT:
        ok = nc == 1 and nt == 1 and pols[0] == 1
    elif kind is GateKind.MULTI_CNOT:
        ok = nc == 1 and nt >= 1
    elif kind is GateKind.TOFFOLI:
        ok = nc == 2 and nt == 1
    else:
        ok = nc == 2 and nt == 1 and all(p == 1 for p in pols)
    return None if ok else f"bad arity or polarity for {kind.name}"


def gate_problem(g: Gate) -> str | None:
    """Describe why ``g`` is malformed, or return None."""
    qs = g.qubits
    if len(set(qs)) != len(qs):
        return "duplicate qubit in gate"
    key = (g.kind, g.polarities, min(len(g.targets), 3))
    try:
        return _SHAPE_PROBLEMS[key]
    except KeyError:
        _SHAPE_PROBLEMS[key] = _shape_problem(g.kind, key[1], len(g.targets))
        return _SHAPE_PROBLEMS[key]


@dataclass(frozen=True)
class Block:
    label: str
    start: int
    end: int


@dataclass
class Circuit:
    qubit_count: int = 0
    roles: list[QubitRole] = field(default_factory=list)
    gates: list[Gate] = field(default_factory=list)
    registers: dict[str, list[int]] = field(default_factory=dict)
    initial: dict[int, int] = field(default_factory=dict)
    blocks: list[Block] = field(default_factory=list)
    name: str = ""
    lowered: bool = False

    # construction -------------------------------------------------------
    def add_qubits(self, count: int, role: QubitRole) -> list[int]:
        ids = list(range(self.qubit_count, self.qubit_count + count))
        self.qubit_count += count
        self.roles.extend([role] * count)
        return ids

    def add_register(self, name: str, size: int, role: QubitRole) -> list[int]:
        if name in self.registers:
            raise CircuitError(f"register {name!r} already defined")
        ids = self.add_qubits(size, role)
        self.registers[name] = ids
        return ids

    def append(self, gate: Gate) -> "Circuit":
        qs = gate.qubits
        if min(qs) < 0 or max(qs) >= self.qubit_count:
            bad = next(q for q in qs if not 0 <= q < self.qubit_count)
            raise InvalidQubit(f"qubit {bad} outside 0..{self.qubit_count - 1}")
        problem = gate_problem(gate)
        if problem:
            raise MalformedGate(f"{gate}: {problem}")
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def compose(self, other: "Circuit", qubit_map: Sequence[int], label: str | None = None) -> "Circuit":
        """Append ``other``'s gates with its qubit ``i`` mapped to ``qubit_map[i]``."""
        if len(qubit_map) != other.qubit_count:
            raise CircuitError("qubit map must cover every qubit of the sub-circuit")
        start = len(self.gates)
        for b in other.blocks:
            self.blocks.append(Block(b.label, b.start + start, b.end + start))
        for g in other.gates:
            self.append(g.remap(qubit_map))
        if label is not None:
            self.blocks.append(Block(label, start, len(self.gates)))
        return self

    # queries ------------------------------------------------------------
    @property
    def fully_reversible(self) -> bool:
        return not any(g.kind in NON_UNITARY for g in self.gates)

    def qubits_with_role(self, role: QubitRole) -> list[int]:
        return [q for q, r in enumerate(self.roles) if r is role]

    def count_blocks(self, prefix: str) -> int:
        return sum(1 for b in self.blocks if b.label.startswith(prefix))

    def inverse(self) -> "Circuit":
        """Gate-reversed copy; every classical and Clifford+T kind has a known adjoint."""
        adj = {GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S,
               GateKind.T: GateKind.TDG, GateKind.TDG: GateKind.T}
        out = Circuit(self.qubit_count, list(self.roles), [], {k: list(v) for k, v in self.registers.items()},
                      dict(self.initial), [], self.name + "_inv", self.lowered)
        for g in reversed(self.gates):
            if g.kind in NON_UNITARY or g.kind is GateKind.AND_COMPUTE:
                raise CircuitError("measurement-based gadgets have no inverse gate")
            out.append(Gate(adj.get(g.kind, g.kind), g.controls, g.targets))
        return out

    def __len__(self) -> int:
        return len(self.gates)


def append_gate(circuit: Circuit, gate: Gate) -> Circuit:
    return circuit.append(gate)


# validation -----------------------------------------------------------------

def validate(circuit: Circuit) -> list[str]:
    """Structural violations as short strings; empty means well formed."""
    problems: list[str] = []
    if len(circuit.roles) != circuit.qubit_count:
        problems.append("RoleTableSize")
    live: set[int] = set()
    for i, g in enumerate(circuit.gates):
        if any(not 0 <= q < circuit.qubit_count for q in g.qubits):
            problems.append(f"InvalidQubit@{i}")
            continue
        if gate_problem(g):
            problems.append(f"MalformedGate@{i}")
            continue
        tgt = g.targets[0] if g.targets else None
        if g.kind is GateKind.AND_COMPUTE:
            live.add(tgt)
        elif g.kind in (GateKind.AND_UNCOMPUTE, GateKind.MEASURE_FIXUP):
            if tgt not in live:
                problems.append("UnpairedAndUncompute")
            live.discard(tgt)
    return problems


# metrics --------------------------------------------------------------------

@dataclass
class ResourceReport:
    toffoli_count: int = 0
    t_count: int = 0
    cnot_count_toffoli_level: int = 0
    cnot_count_t_level: int = 0
    toffoli_depth: int = 0
    t_depth: int = 0
    depth: int = 0
    and_compute_count: int = 0
    and_uncompute_count: int = 0
    qubits_total: int = 0
    qubits_input: int = 0
    qubits_output: int = 0
    qubits_ancilla: int = 0
    qubits_garbage: int = 0
    fully_reversible: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def as_dict(self) -> dict:
        return asdict(self)


# Per-gate costs when a gadget is counted without being expanded.
AND_T = 4
AND_T_DEPTH = 2
AND_CNOTS = 6


def cnot_weight(g: Gate) -> int:
    if g.kind is GateKind.CNOT:
        return 1
    if g.kind is GateKind.MULTI_CNOT:
        return len(g.targets)
    return 0


def weighted_depth(gates: Iterable[Gate], qubit_count: int, weight) -> int:
    """Longest dependency path where each gate costs ``weight(gate)``.

    Gates that share no qubit are independent; nothing else commutes.
    Zero-weight gates still propagate ordering between their qubits.
    """
    return weighted_depths(gates, qubit_count, (weight,))[0]


def weighted_depths(gates: Iterable[Gate], qubit_count: int, weights) -> list[int]:
    """Several weighted depths in one pass over the gates."""
    levels = [[0] * qubit_count for _ in weights]
    for g in gates:
        qs = g.qubits
        for level, weight in zip(levels, weights):
            top = max([level[q] for q in qs]) + weight(g)
            for q in qs:
                level[q] = top
    return [max(level, default=0) for level in levels]


def t_weight(g: Gate) -> int:
    if g.kind in T_KINDS:
        return 1
    if g.kind is GateKind.AND_COMPUTE:
        return AND_T_DEPTH
    return 0


def toffoli_weight(g: Gate) -> int:
    return 1 if g.kind is GateKind.TOFFOLI else 0


def unit_weight(g: Gate) -> int:
    return 1


def _three_depths(circuit: Circuit) -> tuple[int, int, int]:
    """Toffoli depth, T depth and total depth in one pass (same model as weighted_depth)."""
    nq = circuit.qubit_count
    lt, lT, lu = [0] * nq, [0] * nq, [0] * nq
    TOF, AND = GateKind.TOFFOLI, GateKind.AND_COMPUTE
    for g in circuit.gates:
        qs = g.qubits
        k = g.kind
        a = max([lt[q] for q in qs]) + (k is TOF)
        b = max([lT[q] for q in qs]) + (1 if k in T_KINDS else AND_T_DEPTH if k is AND else 0)
        c = max([lu[q] for q in qs]) + 1
        for q in qs:
            lt[q] = a
            lT[q] = b
            lu[q] = c
    return max(lt, default=0), max(lT, default=0), max(lu, default=0)


def count_resources(circuit: Circuit, level: Level = Level.TOFFOLI) -> ResourceReport:
    kinds = [g.kind for g in circuit.gates]
    if level is Level.T and any(k in TOFFOLI_LEVEL_ONLY for k in kinds):
        raise WrongLevel("T-level counting needs a lowered circuit (Toffoli gates present)")
    n_and = kinds.count(GateKind.AND_COMPUTE)
    clifford_cnots = sum(cnot_weight(g) for g in circuit.gates)
    tof_depth, t_depth, depth = _three_depths(circuit)
    rep = ResourceReport(
        toffoli_count=kinds.count(GateKind.TOFFOLI),
        t_count=sum(1 for k in kinds if k in T_KINDS) + AND_T * n_and,
        toffoli_depth=tof_depth,
        t_depth=t_depth,
        depth=depth,
        and_compute_count=n_and,
        and_uncompute_count=kinds.count(GateKind.AND_UNCOMPUTE) + kinds.count(GateKind.MEASURE_FIXUP),
        qubits_total=circuit.qubit_count,
        qubits_input=circuit.roles.count(QubitRole.INPUT),
        qubits_output=circuit.roles.count(QubitRole.OUTPUT),
        qubits_ancilla=circuit.roles.count(QubitRole.ANCILLA),
        qubits_garbage=circuit.roles.count(QubitRole.GARBAGE),
        fully_reversible=circuit.fully_reversible,
    )
    if level is Level.TOFFOLI:
        rep.cnot_count_toffoli_level = clifford_cnots
    else:
        rep.cnot_count_t_level = clifford_cnots + AND_CNOTS * n_and
    return rep
