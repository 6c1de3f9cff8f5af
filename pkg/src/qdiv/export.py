"""QASM-2.0-style text export.

One gate per line.  AND gadgets are written out as their Clifford+T
realisations, zero-polarity controls get explicit ``x`` lines around the
gate, and a fan-out becomes one ``cx`` per target.
"""

from __future__ import annotations

from .circuit import Circuit, Gate, GateKind
from .lowering import and_compute_gates

_NAMES = {
    GateKind.X: "x", GateKind.H: "h", GateKind.S: "s", GateKind.SDG: "sdg",
    GateKind.T: "t", GateKind.TDG: "tdg", GateKind.Z: "z",
}


def _q(i: int) -> str:
    return f"q[{i}]"


def _lines(g: Gate) -> list[str]:
    k = g.kind
    if k in _NAMES:
        return [f"{_NAMES[k]} {_q(g.targets[0])};"]
    if k is GateKind.CZ:
        return [f"cz {_q(g.targets[0])},{_q(g.targets[1])};"]
    if k is GateKind.AND_COMPUTE:
        return [line for h in and_compute_gates(g.controls[0][0], g.controls[1][0], g.targets[0])
                for line in _lines(h)]
    if k in (GateKind.AND_UNCOMPUTE, GateKind.MEASURE_FIXUP):
        (c1, _), (c2, _) = g.controls
        tq = g.targets[0]
        head = [f"h {_q(tq)};"] if k is GateKind.AND_UNCOMPUTE else []
        return head + [f"measure {_q(tq)} -> m[0];", f"if(m==1) cz {_q(c1)},{_q(c2)};", f"reset {_q(tq)};"]
    flips = [f"x {_q(q)};" for q, p in g.controls if p == 0]
    ctl = [_q(q) for q, _ in g.controls]
    if k is GateKind.TOFFOLI:
        body = [f"ccx {ctl[0]},{ctl[1]},{_q(g.targets[0])};"]
    else:
        body = [f"cx {ctl[0]},{_q(tq)};" for tq in g.targets]
    return flips + body + flips


def to_qasm(circuit: Circuit) -> str:
    uses_measure = any(g.kind in (GateKind.AND_UNCOMPUTE, GateKind.MEASURE_FIXUP) for g in circuit.gates)
    out = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"// {circuit.name}" if circuit.name else "// circuit"]
    for name, qs in circuit.registers.items():
        out.append(f"// register {name}: {','.join(map(str, qs))}")
    out.append(f"qreg q[{circuit.qubit_count}];")
    if uses_measure:
        out.append("creg m[1];")
    for g in circuit.gates:
        out.extend(_lines(g))
    return "\n".join(out) + "\n"
