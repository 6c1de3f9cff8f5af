"""Dense unitaries for small circuits and equivalence up to global phase.

Qubit ``i`` corresponds to bit ``i`` of the basis index.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate, GateKind

MAX_QUBITS = 12
DEFAULT_TOL = 1e-9

_SQ = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Z: np.diag([1, -1]).astype(complex),
    GateKind.S: np.diag([1, 1j]),
    GateKind.SDG: np.diag([1, -1j]),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
}


class UnitaryError(Exception):
    pass


class TooManyQubits(UnitaryError):
    pass


class NonUnitaryGate(UnitaryError):
    pass


class DimensionMismatch(UnitaryError):
    pass


def _axis(q: int, nq: int) -> int:
    return nq - 1 - q


def _apply(state: np.ndarray, g: Gate, nq: int) -> np.ndarray:
    """``state`` has shape (2,)*nq + (cols,); returns the updated tensor."""
    k = g.kind
    if k in _SQ:
        ax = _axis(g.targets[0], nq)
        return np.moveaxis(np.tensordot(_SQ[k], state, axes=([1], [ax])), 0, ax)
    if k is GateKind.CZ:
        a, b = (_axis(q, nq) for q in g.targets)
        idx = [slice(None)] * state.ndim
        idx[a] = 1
        idx[b] = 1
        state = state.copy()
        state[tuple(idx)] *= -1
        return state
    if k in (GateKind.CNOT, GateKind.MULTI_CNOT, GateKind.TOFFOLI):
        state = state.copy()
        idx = [slice(None)] * state.ndim
        for q, pol in g.controls:
            idx[_axis(q, nq)] = pol
        sub = state[tuple(idx)].copy()
        # Axes of ``sub`` shift left for every integer-indexed axis before them.
        fixed = sorted(_axis(q, nq) for q, _ in g.controls)
        for tq in g.targets:
            ax = _axis(tq, nq)
            ax -= sum(1 for f in fixed if f < ax)
            sub = np.flip(sub, axis=ax)
        state[tuple(idx)] = sub
        return state
    if k is GateKind.AND_COMPUTE:
        # Acts as a Toffoli on the admissible subspace (target starts at 0).
        return _apply(state, Gate(GateKind.TOFFOLI, g.controls, g.targets), nq)
    raise NonUnitaryGate(f"{k.name} has no unitary matrix")


def build_unitary(circuit: Circuit) -> np.ndarray:
    nq = circuit.qubit_count
    if nq > MAX_QUBITS:
        raise TooManyQubits(f"{nq} qubits exceeds the dense limit of {MAX_QUBITS}")
    dim = 1 << nq
    state = np.eye(dim, dtype=complex).reshape((2,) * nq + (dim,))
    for g in circuit.gates:
        state = _apply(state, g, nq)
    return state.reshape(dim, dim)


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])) <= tol


def global_phase(u: np.ndarray, v: np.ndarray) -> complex:
    """Unit-modulus phase taken from the largest entry of v^dagger u."""
    m = v.conj().T @ u
    flat = np.argmax(np.abs(m))
    val = m.flat[flat]
    if abs(val) == 0:
        return 1.0 + 0j
    return val / abs(val)


def equivalent_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if u.shape != v.shape:
        raise DimensionMismatch(f"{u.shape} vs {v.shape}")
    phi = global_phase(u, v)
    return float(np.linalg.norm(u - phi * v)) <= tol


def equivalent_on_columns(u: np.ndarray, v: np.ndarray, columns: Sequence[int],
                          tol: float = DEFAULT_TOL) -> bool:
    """Equivalence restricted to a set of input basis states (e.g. ancillas at 0)."""
    if u.shape != v.shape:
        raise DimensionMismatch(f"{u.shape} vs {v.shape}")
    cols = list(columns)
    return equivalent_up_to_global_phase(u[:, cols], v[:, cols], tol)


def columns_with_zero(nq: int, qubits: Sequence[int]) -> list[int]:
    mask = sum(1 << q for q in qubits)
    return [i for i in range(1 << nq) if not i & mask]
