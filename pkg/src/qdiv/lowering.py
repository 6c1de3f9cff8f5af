"""Compile Toffoli-level circuits to Clifford+T.

Each Toffoli becomes the 7-T, 7-CNOT, T-depth-3 circuit below.  Its middle
part (between the two H gates on the target) is diagonal, so the single T
applied to a control, or to the target in the H frame, is a phase that
depends only on that qubit's value.  Two Toffolis that share such a qubit,
with nothing else touching it in between, can therefore merge those two T
gates into one S.  That is the whole 12-T pair trick.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuit import (T_KINDS, Block, Circuit, Gate, GateKind, cnot, cnot_weight, fanout, h, measure_fixup, s,
                      t, tdg, x)

SIMPLE_KINDS = frozenset({GateKind.X, GateKind.H, GateKind.S, GateKind.SDG, GateKind.T, GateKind.TDG,
                          GateKind.Z, GateKind.CZ, GateKind.CNOT})


class LoweringError(Exception):
    pass


class AlreadyLowered(LoweringError):
    pass


class Strategy(Enum):
    NAIVE_7T = "naive7t"
    PAIRED_12T = "paired12t"


def toffoli_7t(c1: int, c2: int, tgt: int, merge: int | None = None,
               drop: int | None = None, skip_open_h: bool = False,
               skip_close_h: bool = False) -> list[Gate]:
    """Clifford+T Toffoli.

    ``merge``: qubit whose opening T is doubled into an S.
    ``drop``: qubit whose opening T is omitted (absorbed by a partner).
    """
    def opening(q: int) -> list[Gate]:
        if q == drop:
            return []
        return [s(q)] if q == merge else [t(q)]

    out: list[Gate] = []
    if not skip_open_h:
        out.append(h(tgt))
    out += opening(c1) + opening(c2) + opening(tgt)
    out += [cnot(c2, c1), cnot(tgt, c2), cnot(c1, tgt), tdg(c2), cnot(c1, c2),
            tdg(c1), tdg(c2), t(tgt), cnot(tgt, c2), cnot(c1, tgt), cnot(c2, c1)]
    if not skip_close_h:
        out.append(h(tgt))
    return out


def and_compute_gates(c1: int, c2: int, tgt: int) -> list[Gate]:
    """Temporary AND into a target that starts at |0>; the first two gates prepare |T>."""
    return [h(tgt), t(tgt), cnot(c1, tgt), cnot(c2, tgt), fanout(tgt, (c1, c2)),
            tdg(c1), tdg(c2), t(tgt), fanout(tgt, (c1, c2)), h(tgt), s(tgt)]


def and_uncompute_gates(c1: int, c2: int, tgt: int) -> list[Gate]:
    return [h(tgt), measure_fixup(c1, c2, tgt)]


@dataclass(frozen=True)
class Pair:
    first: int
    second: int
    qubit: int
    shared_target: bool


def find_pairs(gates: list[Gate]) -> list[Pair]:
    """Greedy left-to-right pairing of Toffolis that share a qubit in the same role.

    The second Toffoli must be the very next gate touching the shared qubit.
    A Toffoli joins at most one pair.
    """
    nxt: dict[int, dict[int, int]] = {}
    last_seen: dict[int, int] = {}
    for i in range(len(gates) - 1, -1, -1):
        g = gates[i]
        if g.kind is GateKind.TOFFOLI:
            nxt[i] = {q: last_seen.get(q, -1) for q in g.qubits}
        for q in g.qubits:
            last_seen[q] = i
    used: set[int] = set()
    pairs: list[Pair] = []
    for i in sorted(nxt):
        if i in used:
            continue
        g = gates[i]
        for q, pol in g.controls:
            j = nxt[i][q]
            if j < 0 or j in used or gates[j].kind is not GateKind.TOFFOLI:
                continue
            if (q, pol) in gates[j].controls:
                pairs.append(Pair(i, j, q, False))
                used.update((i, j))
                break
        else:
            q = g.targets[0]
            j = nxt[i][q]
            if j >= 0 and j not in used and gates[j].kind is GateKind.TOFFOLI and gates[j].targets[0] == q:
                pairs.append(Pair(i, j, q, True))
                used.update((i, j))
    return pairs


def _lower_toffoli(g: Gate, **kw) -> list[Gate]:
    flips = [x(q) for q, p in g.controls if p == 0]
    (c1, _), (c2, _) = g.controls
    return flips + toffoli_7t(c1, c2, g.targets[0], **kw) + flips


def _pair_options(gates: list[Gate], strategy: Strategy) -> dict[int, dict]:
    opts: dict[int, dict] = {}
    if strategy is Strategy.PAIRED_12T:
        for p in find_pairs(gates):
            opts[p.first] = {"merge": p.qubit}
            opts[p.second] = {"drop": p.qubit}
            if p.shared_target:
                opts[p.first]["skip_close_h"] = True
                opts[p.second]["skip_open_h"] = True
    return opts


def expand_gate(g: Gate, opts: dict | None = None, expand_and_gadgets: bool = True) -> list[Gate]:
    """Clifford+T replacement for one gate (the gate itself if already at that level)."""
    if g.kind is GateKind.TOFFOLI:
        return _lower_toffoli(g, **(opts or {}))
    if g.kind is GateKind.MULTI_CNOT and g.controls[0][1] == 0:
        c = g.controls[0][0]
        return [x(c), fanout(c, g.targets), x(c)]
    if g.kind is GateKind.AND_COMPUTE and expand_and_gadgets:
        return and_compute_gates(g.controls[0][0], g.controls[1][0], g.targets[0])
    if g.kind is GateKind.AND_UNCOMPUTE and expand_and_gadgets:
        return and_uncompute_gates(g.controls[0][0], g.controls[1][0], g.targets[0])
    return [g]


def lower(circuit: Circuit, strategy: Strategy = Strategy.NAIVE_7T,
          expand_and_gadgets: bool = True) -> Circuit:
    if circuit.lowered:
        raise AlreadyLowered("circuit is already at Clifford+T level")
    gates = circuit.gates
    opts = _pair_options(gates, strategy)
    out = Circuit(circuit.qubit_count, list(circuit.roles), [],
                  {k: list(v) for k, v in circuit.registers.items()}, dict(circuit.initial),
                  [], circuit.name, lowered=True)
    # replacements act on the source gate's own (already validated) qubits
    body = out.gates
    starts = []
    for i, g in enumerate(gates):
        starts.append(len(body))
        body.extend(expand_gate(g, opts.get(i), expand_and_gadgets))
    starts.append(len(body))
    out.blocks = [Block(b.label, starts[b.start], starts[b.end]) for b in circuit.blocks]
    return out


# costing without building the lowered circuit ------------------------------------

NEG = float("-inf")


@dataclass(frozen=True)
class _Transfer:
    t_count: int
    cnots: int
    # depth[o][i]: heaviest T path from entry of local qubit i to exit of local qubit o
    depth: tuple[tuple[float, ...], ...]


_TRANSFERS: dict[tuple, _Transfer] = {}


def _transfer(g: Gate, opts: dict | None) -> tuple[_Transfer, tuple[int, ...]]:
    qs = g.qubits
    if not opts:
        tr = _TRANSFERS.get((g.kind, g.polarities, len(qs), ()))
        if tr is not None:
            return tr, qs
    local = {q: i for i, q in enumerate(qs)}
    lopts = None
    if opts:
        lopts = {k: (local[v] if k in ("merge", "drop") else v) for k, v in opts.items()}
    key = (g.kind, g.polarities, len(qs),
           tuple(sorted(lopts.items())) if lopts else ())
    tr = _TRANSFERS.get(key)
    if tr is None:
        lg = g.remap(local)
        seq = expand_gate(lg, lopts)
        r = len(qs)
        cols = []
        for i in range(r):
            level = [NEG] * r
            level[i] = 0
            for h_ in seq:
                hq = h_.qubits
                top = max(level[q] for q in hq)
                if top != NEG:
                    top += 1 if h_.kind in T_KINDS else 0
                for q in hq:
                    level[q] = top
            cols.append(level)
        depth = tuple(tuple(cols[i][o] for i in range(r)) for o in range(r))
        tr = _Transfer(sum(1 for h_ in seq if h_.kind in T_KINDS),
                       sum(cnot_weight(h_) for h_ in seq), depth)
        _TRANSFERS[key] = tr
    return tr, qs


def lowered_costs(circuit: Circuit, strategy: Strategy = Strategy.NAIVE_7T) -> tuple[int, int, int]:
    """(t_count, t_depth, cnot_count) of ``lower(circuit, strategy)``, without building it."""
    if circuit.lowered:
        raise AlreadyLowered("circuit is already at Clifford+T level")
    opts = _pair_options(circuit.gates, strategy)
    level = [0] * circuit.qubit_count
    t_total = cnots = 0
    for i, g in enumerate(circuit.gates):
        k = g.kind
        if k in SIMPLE_KINDS or (k is GateKind.MULTI_CNOT and g.controls[0][1] == 1):
            qs = g.qubits
            top = max([level[q] for q in qs]) + (1 if k in T_KINDS else 0)
            for q in qs:
                level[q] = top
            t_total += 1 if k in T_KINDS else 0
            cnots += cnot_weight(g)
            continue
        tr, qs = _transfer(g, opts.get(i))
        t_total += tr.t_count
        cnots += tr.cnots
        if len(qs) == 3:
            a, b, c = qs
            ea, eb, ec = level[a], level[b], level[c]
            da, db, dc = tr.depth
            level[a] = max(ea + da[0], eb + da[1], ec + da[2])
            level[b] = max(ea + db[0], eb + db[1], ec + db[2])
            level[c] = max(ea + dc[0], eb + dc[1], ec + dc[2])
        else:
            entry = [level[q] for q in qs]
            for o, q in enumerate(qs):
                level[q] = max(e + d for e, d in zip(entry, tr.depth[o]))
    return t_total, max(level, default=0), cnots
