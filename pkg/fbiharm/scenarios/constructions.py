"""Explicit maps and fields of the built-in scenarios."""

import math

from ..geometry import CoordinateBox, MetricChart, euclidean_chart, sphere_chart
from ..jets import Const, Coord, ExprNode, cos, exp, sin

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _norm2(dim: int) -> ExprNode:
    return sum((Coord(i) ** 2 for i in range(1, dim)), Coord(0) ** 2)


def cylinder_components(m: int, radius: float) -> tuple[ExprNode, ...]:
    """(R cos(θ/R), R sin(θ/R), x₁, …, x_{m−1}) with θ the first coordinate."""
    theta = Coord(0) / radius
    return (radius * cos(theta), radius * sin(theta)) + tuple(Coord(i) for i in range(1, m))


def cylinder_f_family(radius: float, c1: float, c2: float) -> ExprNode:
    """C₁e^{x₁/R} + C₂e^{−x₁/R} where x₁ is the first flat coordinate."""
    x = Coord(1)
    terms = []
    if c1:
        terms.append(c1 * exp(x / radius))
    if c2:
        terms.append(c2 * exp(-x / radius))
    node = terms[0]
    for t in terms[1:]:
        node = node + t
    return node


def small_hypersphere_components(m: int) -> tuple[ExprNode, ...]:
    """
    S^m(1/√2) → S^{m+1}, x ↦ (1/√2, x), in stereographic coordinates on both sides.

    With s = |u|², D = ½ + s and E = D − (s − ½)/√2 the image is
    v₀ = D/(√2·E), v_k = u_k/E.
    """
    s = _norm2(m)
    d = 0.5 + s
    e = d - (s - 0.5) * _INV_SQRT2
    return (_INV_SQRT2 * d / e,) + tuple(Coord(k) / e for k in range(m))


def great_hypersphere_components(m: int) -> tuple[ExprNode, ...]:
    """Equator v₀ = 0 of the stereographic chart of S^{m+1}."""
    return (Const(0.0),) + tuple(Coord(k) for k in range(m))


def clifford_torus_components() -> tuple[ExprNode, ...]:
    """(u, v) ↦ (cos u, sin u, cos v, sin v)/√2 projected stereographically from S³."""
    u, v = Coord(0), Coord(1)
    den = 1.0 - _INV_SQRT2 * sin(v)
    return (
        _INV_SQRT2 * cos(u) / den,
        _INV_SQRT2 * sin(u) / den,
        _INV_SQRT2 * cos(v) / den,
    )


def clifford_torus_domain() -> MetricChart:
    half = Const(0.5)
    zero = Const(0.0)
    return MetricChart("clifford-domain", ((half, zero), (zero, half)))


def inversion_components(dim: int = 4) -> tuple[ExprNode, ...]:
    norm2 = _norm2(dim)
    return tuple(Coord(i) / norm2 for i in range(dim))


def inversion_f(dim: int = 4) -> ExprNode:
    """f = |x|⁴."""
    return _norm2(dim) ** 2


def stereographic_box(dim: int) -> CoordinateBox:
    return CoordinateBox.cube(dim, -0.8, 0.8)


__all__ = [
    "cylinder_components",
    "cylinder_f_family",
    "small_hypersphere_components",
    "great_hypersphere_components",
    "clifford_torus_components",
    "clifford_torus_domain",
    "inversion_components",
    "inversion_f",
    "stereographic_box",
    "euclidean_chart",
    "sphere_chart",
]
