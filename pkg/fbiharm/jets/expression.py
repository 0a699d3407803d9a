"""Immutable expression trees for metrics, map components and scalar fields.

Nodes support Python operators, so charts can be written directly:

    >>> u1, u2 = Coord(0), Coord(1)
    >>> conformal = 4 / (1 + u1**2 + u2**2) ** 2

Two evaluation paths exist: ExprNode.evaluate() works on plain floats (the
finite-difference oracle uses only this one) and eval_expression() works on jets.
"""

import math
from dataclasses import dataclass
from functools import reduce
from operator import add, mul
from typing import Sequence

import numpy as np

from ..errors import (
    DomainError,
    InvalidArgumentError,
    SingularEvaluationError,
)
from .jet import Jet, jet_elementary

ELEMENTARY_FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")


def as_expr(value) -> "ExprNode":
    if isinstance(value, ExprNode):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Const(float(value))
    raise InvalidArgumentError(f"cannot turn {value!r} into an expression")


@dataclass(frozen=True)
class ExprNode:
    """Base class of expression nodes."""

    def __add__(self, other):
        return Sum((self, as_expr(other)))

    def __radd__(self, other):
        return Sum((as_expr(other), self))

    def __sub__(self, other):
        return Sum((self, Neg(as_expr(other))))

    def __rsub__(self, other):
        return Sum((as_expr(other), Neg(self)))

    def __mul__(self, other):
        return Product((self, as_expr(other)))

    def __rmul__(self, other):
        return Product((as_expr(other), self))

    def __truediv__(self, other):
        return Quotient(self, as_expr(other))

    def __rtruediv__(self, other):
        return Quotient(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent):
        return Power(self, float(exponent))

    def evaluate(self, values: Sequence[float]) -> float:
        raise NotImplementedError

    def max_coordinate(self) -> int:
        """Largest coordinate index used, -1 for constant expressions."""
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Const(ExprNode):
    value: float

    def evaluate(self, values):
        return self.value

    def max_coordinate(self):
        return -1

    def to_text(self):
        text = repr(float(self.value))
        return f"({text})" if self.value < 0 else text


@dataclass(frozen=True)
class Coord(ExprNode):
    index: int

    def evaluate(self, values):
        return float(values[self.index])

    def max_coordinate(self):
        return self.index

    def to_text(self):
        return f"x{self.index + 1}"


@dataclass(frozen=True)
class Sum(ExprNode):
    terms: tuple[ExprNode, ...]

    def evaluate(self, values):
        return math.fsum(t.evaluate(values) for t in self.terms)

    def max_coordinate(self):
        return max(t.max_coordinate() for t in self.terms)

    def to_text(self):
        return "(" + " + ".join(t.to_text() for t in self.terms) + ")"


@dataclass(frozen=True)
class Product(ExprNode):
    factors: tuple[ExprNode, ...]

    def evaluate(self, values):
        return reduce(mul, (f.evaluate(values) for f in self.factors), 1.0)

    def max_coordinate(self):
        return max(f.max_coordinate() for f in self.factors)

    def to_text(self):
        return "(" + " * ".join(f.to_text() for f in self.factors) + ")"


@dataclass(frozen=True)
class Quotient(ExprNode):
    numerator: ExprNode
    denominator: ExprNode

    def evaluate(self, values):
        den = self.denominator.evaluate(values)
        if den == 0.0:
            raise SingularEvaluationError("division by zero", values)
        return self.numerator.evaluate(values) / den

    def max_coordinate(self):
        return max(self.numerator.max_coordinate(), self.denominator.max_coordinate())

    def to_text(self):
        return f"({self.numerator.to_text()} / {self.denominator.to_text()})"


@dataclass(frozen=True)
class Neg(ExprNode):
    operand: ExprNode

    def evaluate(self, values):
        return -self.operand.evaluate(values)

    def max_coordinate(self):
        return self.operand.max_coordinate()

    def to_text(self):
        return f"(-{self.operand.to_text()})"


@dataclass(frozen=True)
class Power(ExprNode):
    base: ExprNode
    exponent: float

    def evaluate(self, values):
        b = self.base.evaluate(values)
        if float(self.exponent).is_integer():
            if b == 0.0 and self.exponent < 0:
                raise SingularEvaluationError("zero raised to a negative power", values)
            return b ** int(self.exponent)
        if b <= 0.0:
            raise DomainError(f"power({self.exponent})", b)
        return b**self.exponent

    def max_coordinate(self):
        return self.base.max_coordinate()

    def to_text(self):
        return f"({self.base.to_text()})^{Const(self.exponent).to_text()}"


_FLOAT_FUNCTIONS = {
    "exp": math.exp,
    "log": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": math.sqrt,
}


@dataclass(frozen=True)
class Apply(ExprNode):
    function: str
    operand: ExprNode

    def __post_init__(self):
        if self.function not in ELEMENTARY_FUNCTIONS:
            raise InvalidArgumentError(f"unknown elementary function {self.function!r}")

    def evaluate(self, values):
        x = self.operand.evaluate(values)
        if self.function in ("log", "sqrt") and x <= 0.0:
            raise DomainError(self.function, x)
        return _FLOAT_FUNCTIONS[self.function](x)

    def max_coordinate(self):
        return self.operand.max_coordinate()

    def to_text(self):
        return f"{self.function}({self.operand.to_text()})"


def exp(e) -> Apply:
    return Apply("exp", as_expr(e))


def log(e) -> Apply:
    return Apply("log", as_expr(e))


def sin(e) -> Apply:
    return Apply("sin", as_expr(e))


def cos(e) -> Apply:
    return Apply("cos", as_expr(e))


def sqrt(e) -> Apply:
    return Apply("sqrt", as_expr(e))


def coords(dim: int) -> tuple[Coord, ...]:
    return tuple(Coord(i) for i in range(dim))


# ------------------------------------------------------------------ jet evaluation
def _jet_rules():
    return {
        Const: lambda node, jets, first: Jet.constant(node.value, first.dim, first.order),
        Coord: lambda node, jets, first: jets[node.index],
        Sum: lambda node, jets, first: reduce(add, (_eval(t, jets, first) for t in node.terms)),
        Product: lambda node, jets, first: reduce(mul, (_eval(f, jets, first) for f in node.factors)),
        Quotient: lambda node, jets, first: _eval(node.numerator, jets, first)
        / _eval(node.denominator, jets, first),
        Neg: lambda node, jets, first: -_eval(node.operand, jets, first),
        Power: lambda node, jets, first: jet_elementary(
            ("power", node.exponent), _eval(node.base, jets, first)
        ),
        Apply: lambda node, jets, first: jet_elementary(node.function, _eval(node.operand, jets, first)),
    }


_RULES = _jet_rules()


def _eval(node: ExprNode, jets, first: Jet) -> Jet:
    return _RULES[type(node)](node, jets, first)


def eval_expression(e: ExprNode, jets) -> Jet:
    """
    Jet of an expression at the point the jets were seeded at.

    Args:
        e: Expression over coordinates x1..xn.
        jets: Indexable of scalar jets (a Jet of shape (n,) works), one per coordinate.

    Raises:
        InvalidArgumentError: The expression uses more coordinates than given.
        SingularEvaluationError: Division by a vanishing value (with the point).
    """
    if e.max_coordinate() >= len(jets):
        raise InvalidArgumentError(
            f"expression uses x{e.max_coordinate() + 1} but only {len(jets)} coordinates are seeded"
        )
    first = jets[0]
    try:
        return _eval(e, jets, first)
    except SingularEvaluationError as err:
        if err.point is not None:
            raise
        point = [jets[i].value for i in range(len(jets))]
        raise SingularEvaluationError(str(err), point) from err


def eval_expressions(tree, jets) -> Jet:
    """Evaluate a nested tuple/list of expressions into one batched Jet."""
    if isinstance(tree, ExprNode):
        return eval_expression(tree, jets)
    parts = [eval_expressions(item, jets) for item in tree]
    order = min(p.order for p in parts)
    return Jet(parts[0].truncate(order).space, np.stack([p.truncate(order).coeffs for p in parts]))


def evaluate_tree(tree, values: Sequence[float]) -> np.ndarray:
    """Value-level counterpart of eval_expressions()."""
    if isinstance(tree, ExprNode):
        return np.asarray(tree.evaluate(values), dtype=float)
    return np.stack([evaluate_tree(item, values) for item in tree])


__all__ = [
    "ExprNode",
    "Const",
    "Coord",
    "Sum",
    "Product",
    "Quotient",
    "Neg",
    "Power",
    "Apply",
    "ELEMENTARY_FUNCTIONS",
    "as_expr",
    "exp",
    "log",
    "sin",
    "cos",
    "sqrt",
    "coords",
    "eval_expression",
    "eval_expressions",
    "evaluate_tree",
]
