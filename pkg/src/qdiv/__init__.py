"""Reversible and Clifford+T circuits for integer division built from compare-and-subtract units."""

from __future__ import annotations

from .adders import (InvalidWidth, build_gidney_adder, build_qcla_adder, build_qcla_u1, build_qcla_u2,
                     build_ripple_adder)
from .circuit import (Circuit, Gate, GateKind, Level, QubitRole, ResourceReport, append_gate,
                      count_resources, validate)
from .compnsub import CnsPlacement, Variant, build_compnsub
from .dividers import (Algorithm, DivisionResult, NrVariant, build_division, build_long_division,
                       build_non_restoring_division, build_restoring_division, read_result)
from .export import to_qasm
from .lowering import Strategy, lower
from .oracle import ref_add, ref_carries, ref_compnsub, ref_divide
from .resources import (BaselineId, BoundKind, ResourceBounds, formula_baseline, formula_compnsub,
                        formula_division, measure, ratio_report)
from .sim import simulate

__all__ = [
    "Algorithm", "BaselineId", "BoundKind", "Circuit", "CnsPlacement", "DivisionResult", "Gate", "GateKind",
    "InvalidWidth", "Level", "NrVariant", "QubitRole", "ResourceBounds", "ResourceReport", "Strategy",
    "Variant", "append_gate", "build_compnsub", "build_division", "build_gidney_adder",
    "build_long_division", "build_non_restoring_division", "build_qcla_adder", "build_qcla_u1",
    "build_qcla_u2", "build_restoring_division", "build_ripple_adder", "count_resources",
    "formula_baseline", "formula_compnsub", "formula_division", "lower", "measure", "ratio_report",
    "read_result", "ref_add", "ref_carries", "ref_compnsub", "ref_divide", "simulate", "to_qasm", "validate",
]
