"""
Jets: truncated Taylor arithmetic and symbolic expressions evaluated on it.
"""

from .expression import (
    Apply,
    Const,
    Coord,
    ExprNode,
    Neg,
    Power,
    Product,
    Quotient,
    Sum,
    as_expr,
    coords,
    cos,
    eval_expression,
    eval_expressions,
    evaluate_tree,
    exp,
    log,
    sin,
    sqrt,
)
from .jet import (
    Jet,
    compose,
    extract_partial,
    jeinsum,
    jet_det,
    jet_elementary,
    jet_inverse,
    jet_sum,
    seed_jets,
    stack,
)
from .multiindex import JetSpace, MultiIndex, jet_space, multi_index_factorial, unit_index
from .parser import parse_expression

__all__ = [
    # Multi-indices
    "MultiIndex",
    "JetSpace",
    "jet_space",
    "multi_index_factorial",
    "unit_index",
    # Jets
    "Jet",
    "seed_jets",
    "jet_elementary",
    "extract_partial",
    "jeinsum",
    "compose",
    "stack",
    "jet_inverse",
    "jet_det",
    "jet_sum",
    # Expressions
    "ExprNode",
    "Const",
    "Coord",
    "Sum",
    "Product",
    "Quotient",
    "Neg",
    "Power",
    "Apply",
    "as_expr",
    "coords",
    "exp",
    "log",
    "sin",
    "cos",
    "sqrt",
    "eval_expression",
    "eval_expressions",
    "evaluate_tree",
    "parse_expression",
]
