"""Unsharp negation, implication and conjunction on finite bounded posets."""
from unsharp.connectives import (
    conjunction,
    conjunction_set,
    implication,
    implication_set,
    negation,
    negation_set,
    operator_table,
    pseudocomplement,
    residuum_detect,
)
from unsharp.poset import (
    CompareResult,
    Poset,
    compare_sets,
    is_antichain,
    lambda_cone,
    lower_cone,
    max_elements,
    validate,
)

__all__ = [
    "CompareResult",
    "Poset",
    "compare_sets",
    "conjunction",
    "conjunction_set",
    "implication",
    "implication_set",
    "is_antichain",
    "lambda_cone",
    "lower_cone",
    "max_elements",
    "negation",
    "negation_set",
    "operator_table",
    "pseudocomplement",
    "residuum_detect",
    "validate",
]
