"""Exact computations with Whittaker modules over the quantum group U_q(sl3)."""

from .scalars import (
    SYMBOLIC,
    EvalPoint,
    NumericField,
    Scalar,
    ScalarZeroDivision,
    evaluate,
    q_binomial,
    q_integer,
)
from .pbw import AlgebraElement, PBWMonomial, QuantumSL3
from .module import CoeffPoly, Maximal, ModuleElement, WhittakerModule, Zero
from .structure import (
    composition_report,
    criticality,
    solve_whittaker_vectors,
    submodule_membership,
    whittaker_vector_report,
)
from .expr import evaluate as evaluate_expr, parse_expr, render

__all__ = [
    "SYMBOLIC", "EvalPoint", "NumericField", "Scalar", "ScalarZeroDivision", "evaluate",
    "q_binomial", "q_integer", "AlgebraElement", "PBWMonomial", "QuantumSL3", "CoeffPoly",
    "Maximal", "ModuleElement", "WhittakerModule", "Zero", "composition_report", "criticality",
    "solve_whittaker_vectors", "submodule_membership", "whittaker_vector_report",
    "evaluate_expr", "parse_expr", "render",
]
