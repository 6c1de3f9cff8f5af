"""Computational-basis simulation of classical gate lists.

States are handled in batches: a boolean array of shape ``(qubits, batch)``
so that exhaustive sweeps cost one numpy operation per gate.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Mapping, Sequence

import numpy as np

from .circuit import Circuit, GateKind, QubitRole


class SimulationError(Exception):
    pass


class NonClassicalGate(SimulationError):
    pass


class AndContractViolated(SimulationError):
    pass


def _control_mask(bits: np.ndarray, controls) -> np.ndarray:
    mask = None
    for q, pol in controls:
        term = bits[q] if pol else ~bits[q]
        mask = term.copy() if mask is None else (mask & term)
    return mask


def run_batch(circuit: Circuit, bits: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to every column of ``bits`` (shape qubits x batch); returns a new array."""
    state = np.array(bits, dtype=bool, copy=True)
    if state.ndim != 2 or state.shape[0] != circuit.qubit_count:
        raise SimulationError(f"expected {circuit.qubit_count} rows, got shape {state.shape}")
    for i, g in enumerate(circuit.gates):
        k = g.kind
        if k is GateKind.X:
            np.logical_not(state[g.targets[0]], out=state[g.targets[0]])
        elif k in (GateKind.CNOT, GateKind.MULTI_CNOT, GateKind.TOFFOLI):
            mask = _control_mask(state, g.controls)
            for tq in g.targets:
                state[tq] ^= mask
        elif k is GateKind.AND_COMPUTE:
            tq = g.targets[0]
            if state[tq].any():
                raise AndContractViolated(f"gate {i}: AND target not clear before compute")
            state[tq] = _control_mask(state, g.controls)
        elif k is GateKind.AND_UNCOMPUTE:
            tq = g.targets[0]
            if (state[tq] != _control_mask(state, g.controls)).any():
                raise AndContractViolated(f"gate {i}: AND target differs from c1*c2 at uncompute")
            state[tq] = False
        else:
            raise NonClassicalGate(f"gate {i} ({k.name}) has no basis-state semantics")
    return state


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QDIV_THREADS", "1")))
    except ValueError:
        return 1


def run_chunked(circuit: Circuit, bits: np.ndarray, chunk: int = 1 << 15) -> np.ndarray:
    """Like run_batch but split into column chunks, optionally on QDIV_THREADS threads."""
    n = bits.shape[1]
    if n <= chunk:
        return run_batch(circuit, bits)
    parts = [bits[:, i:i + chunk] for i in range(0, n, chunk)]
    workers = _threads()
    if workers == 1:
        return np.concatenate([run_batch(circuit, p) for p in parts], axis=1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(lambda p: run_batch(circuit, p), parts)), axis=1)


def simulate(circuit: Circuit, state: Sequence[int]) -> list[int]:
    """Single basis state in, single basis state out (one bit per qubit)."""
    if len(state) != circuit.qubit_count:
        raise SimulationError(f"state has {len(state)} bits, circuit has {circuit.qubit_count} qubits")
    col = np.array(state, dtype=bool).reshape(-1, 1)
    return [int(v) for v in run_batch(circuit, col)[:, 0]]


def initial_bits(circuit: Circuit) -> list[int]:
    bits = [0] * circuit.qubit_count
    for q, v in circuit.initial.items():
        bits[q] = v
    return bits


def encode(circuit: Circuit, values: Mapping[str, int]) -> list[int]:
    """Basis state with each named register holding an unsigned integer."""
    bits = initial_bits(circuit)
    for name, value in values.items():
        qs = circuit.registers[name]
        if not 0 <= value < (1 << len(qs)):
            raise SimulationError(f"{name}={value} does not fit in {len(qs)} qubits")
        for i, q in enumerate(qs):
            bits[q] = (value >> i) & 1
    return bits


def decode(circuit: Circuit, bits: Sequence[int], name: str) -> int:
    return sum(int(bits[q]) << i for i, q in enumerate(circuit.registers[name]))


def encode_batch(circuit: Circuit, columns: Mapping[str, np.ndarray]) -> np.ndarray:
    """Batch of basis states; every register value array must have the same length."""
    size = len(next(iter(columns.values())))
    state = np.zeros((circuit.qubit_count, size), dtype=bool)
    for q, v in circuit.initial.items():
        state[q] = bool(v)
    for name, vals in columns.items():
        vals = np.asarray(vals, dtype=np.int64)
        for i, q in enumerate(circuit.registers[name]):
            state[q] = (vals >> i) & 1
    return state


def decode_batch(circuit: Circuit, state: np.ndarray, name: str) -> np.ndarray:
    out = np.zeros(state.shape[1], dtype=np.int64)
    for i, q in enumerate(circuit.registers[name]):
        out |= state[q].astype(np.int64) << i
    return out


def check_ancilla_restoration(circuit: Circuit, state: Sequence[int]) -> bool:
    final = simulate(circuit, state)
    return all(final[q] == state[q] for q in circuit.qubits_with_role(QubitRole.ANCILLA))


def ancillas_restored_batch(circuit: Circuit, before: np.ndarray, after: np.ndarray) -> np.ndarray:
    anc = circuit.qubits_with_role(QubitRole.ANCILLA)
    if not anc:
        return np.ones(before.shape[1], dtype=bool)
    return (before[anc] == after[anc]).all(axis=0)


def is_bijection(circuit: Circuit, max_qubits: int = 16) -> bool:
    """Exhaustively check that the circuit permutes all basis states."""
    q = circuit.qubit_count
    if q > max_qubits:
        raise SimulationError(f"{q} qubits exceeds the exhaustive limit of {max_qubits}")
    idx = np.arange(1 << q, dtype=np.int64)
    bits = ((idx[None, :] >> np.arange(q)[:, None]) & 1).astype(bool)
    out = run_chunked(circuit, bits)
    packed = (out.astype(np.int64) << np.arange(q)[:, None]).sum(axis=0)
    return np.unique(packed).size == idx.size
