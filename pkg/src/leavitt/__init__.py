"""Exact computation in the Leavitt path algebra of a one-vertex loop graph."""

from .algebra import (
    VERTEX,
    AlgebraConfig,
    BasisMonomial,
    Element,
    add,
    enumerate_basis,
    is_basis_monomial,
    multiply,
    reduce_word,
    scale,
)
from .derivation import (
    CoefficientTable,
    DerivationSpec,
    Violation,
    ViolationReport,
    check_coefficient_equations,
    check_relations,
    coefficients,
    complete_from_dual_values,
    complete_from_edge_values,
    derivation_from_dict,
    extend,
    load_derivation_file,
)
from .expr import ExprError, format_element, lower, parse, parse_element
from .inner import (
    ObstructionEntry,
    ObstructionReport,
    ObstructionVerdict,
    WitnessProblem,
    ad,
    build_witness_problem,
    classify_by_obstruction,
    find_inner_witness,
    obstruction_coefficients,
)
from .oracle import RuleApplication, applicable_rules, check_overlaps, exhaustive_reduce

__all__ = [
    "VERTEX",
    "AlgebraConfig",
    "BasisMonomial",
    "Element",
    "add",
    "enumerate_basis",
    "is_basis_monomial",
    "multiply",
    "reduce_word",
    "scale",
    "CoefficientTable",
    "DerivationSpec",
    "Violation",
    "ViolationReport",
    "check_coefficient_equations",
    "check_relations",
    "coefficients",
    "complete_from_dual_values",
    "complete_from_edge_values",
    "derivation_from_dict",
    "extend",
    "load_derivation_file",
    "ExprError",
    "format_element",
    "lower",
    "parse",
    "parse_element",
    "ObstructionEntry",
    "ObstructionReport",
    "ObstructionVerdict",
    "WitnessProblem",
    "ad",
    "build_witness_problem",
    "classify_by_obstruction",
    "find_inner_witness",
    "obstruction_coefficients",
    "RuleApplication",
    "applicable_rules",
    "check_overlaps",
    "exhaustive_reduce",
]
