"""Text grammar for expressions used in run configurations.

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := ("-" | "+") unary | power
    power      := atom ("^" unary)?          # right-associative
    atom       := number | "x"<k> | function "(" expression ")" | "(" expression ")"

Exponents must be constant. Whitespace is ignored.
"""

import re

from ..errors import ExpressionSyntaxError
from .expression import (
    ELEMENTARY_FUNCTIONS,
    Apply,
    Const,
    Coord,
    ExprNode,
    Neg,
    Power,
    Product,
    Quotient,
    Sum,
)

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)
_COORDINATE = re.compile(r"x([1-9]\d*)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None or match.end() == pos:
            rest = stripped[pos:]
            raise ExpressionSyntaxError("unexpected character", text, pos + len(rest) - len(rest.lstrip()))
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise ExpressionSyntaxError("unexpected end of expression", self.text, len(self.text))
        self.pos += 1
        return token

    def expect(self, op: str) -> None:
        kind, value, where = self.take()
        if kind != "op" or value != op:
            raise ExpressionSyntaxError(f"expected '{op}' but found '{value}'", self.text, where)

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token is not None and token[0] == "op" and token[1] in ops

    def expression(self) -> ExprNode:
        terms = [self.term()]
        while self.at_op("+", "-"):
            _, op, _ = self.take()
            rhs = self.term()
            terms.append(rhs if op == "+" else Neg(rhs))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> ExprNode:
        node = self.unary()
        while self.at_op("*", "/"):
            _, op, _ = self.take()
            rhs = self.unary()
            if op == "/":
                node = Quotient(node, rhs)
            elif isinstance(node, Product):
                node = Product(node.factors + (rhs,))
            else:
                node = Product((node, rhs))
        return node

    def unary(self) -> ExprNode:
        if self.at_op("-"):
            self.take()
            return Neg(self.unary())
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> ExprNode:
        base = self.atom()
        if not self.at_op("^"):
            return base
        _, _, where = self.take()
        exponent = self.unary()
        if exponent.max_coordinate() >= 0:
            raise ExpressionSyntaxError("exponent must be a numeric constant", self.text, where)
        return Power(base, exponent.evaluate(()))

    def atom(self) -> ExprNode:
        kind, value, where = self.take()
        if kind == "number":
            return Const(float(value))
        if kind == "name":
            if value in ELEMENTARY_FUNCTIONS:
                self.expect("(")
                inner = self.expression()
                self.expect(")")
                return Apply(value, inner)
            match = _COORDINATE.fullmatch(value)
            if match:
                return Coord(int(match.group(1)) - 1)
            raise ExpressionSyntaxError(f"unknown identifier '{value}'", self.text, where)
        if value == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ExpressionSyntaxError(f"unexpected '{value}'", self.text, where)


def parse_expression(text: str, dim: int | None = None) -> ExprNode:
    """
    Parse expression text.

    Args:
        text: Expression such as "exp(x2/2) + 0.5*exp(-x2/2)".
        dim: When given, coordinates beyond x<dim> are rejected.

    Returns:
        The expression tree.

    Raises:
        ExpressionSyntaxError: Malformed text, with the failing position.
    """
    if not isinstance(text, str) or not text.strip():
        raise ExpressionSyntaxError("empty expression", str(text))
    parser = _Parser(text)
    node = parser.expression()
    leftover = parser.peek()
    if leftover is not None:
        raise ExpressionSyntaxError(f"unexpected '{leftover[1]}'", text, leftover[2])
    if dim is not None and node.max_coordinate() >= dim:
        raise ExpressionSyntaxError(
            f"coordinate x{node.max_coordinate() + 1} exceeds dimension {dim}", text
        )
    return node


__all__ = ["parse_expression"]
