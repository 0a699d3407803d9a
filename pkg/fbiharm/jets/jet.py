"""Truncated multivariate Taylor jets.

A Jet holds Taylor coefficients coeff(α) = ∂^α u(p) / α! for every multi-index α of
order ≤ K, stored densely along the last axis of a numpy array. Leading axes form a
batch, so a single Jet can carry a whole tensor field (a metric, Christoffel
symbols, a vector along a map) and jeinsum() contracts such tensors in jet algebra.
"""

import logging
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from ..errors import (
    DimensionError,
    DomainError,
    InvalidArgumentError,
    OrderExceededError,
    SingularEvaluationError,
)
from .multiindex import JetSpace, jet_space, multi_index_factorial

logger = logging.getLogger(__name__)

_LETTERS = "zyxwvutsrqponmlkjihgfedcbaZYXWVUTSRQPONMLKJIHGFEDCBA"


class Jet:
    """Jet (or batch of jets) over a JetSpace.

    Args:
        space: Index layout (dimension and truncation order).
        coeffs: Array of shape batch_shape + (space.size,).
    """

    __slots__ = ("space", "coeffs")
    # Make numpy hand mixed operations back to Jet's reflected operators.
    __array_ufunc__ = None

    def __init__(self, space: JetSpace, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim == 0 or coeffs.shape[-1] != space.size:
            raise InvalidArgumentError(
                f"coefficient array of shape {coeffs.shape} does not match {space}"
            )
        self.space = space
        self.coeffs = coeffs

    # ------------------------------------------------------------------ basics
    @classmethod
    def constant(cls, value, dim: int, order: int) -> "Jet":
        """Jet of a constant (array values give a batch of constants)."""
        space = jet_space(dim, order)
        value = np.asarray(value, dtype=float)
        coeffs = np.zeros(value.shape + (space.size,))
        coeffs[..., 0] = value
        return cls(space, coeffs)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def order(self) -> int:
        return self.space.order

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape[:-1]

    @property
    def value(self):
        """Function value(s) at the expansion point."""
        v = self.coeffs[..., 0]
        return float(v) if v.ndim == 0 else v.copy()

    def __len__(self) -> int:
        if not self.shape:
            raise TypeError("scalar Jet has no length")
        return self.shape[0]

    def __getitem__(self, key) -> "Jet":
        if not isinstance(key, tuple):
            key = (key,)
        return Jet(self.space, self.coeffs[key + (slice(None),)])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __repr__(self) -> str:
        return f"Jet(dim={self.dim}, order={self.order}, shape={self.shape})"

    def coeff(self, alpha: Sequence[int]):
        """Taylor coefficient at α."""
        c = self.coeffs[..., self.space.locate(alpha)]
        return float(c) if c.ndim == 0 else c.copy()

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderExceededError(f"cannot raise jet order {self.order} to {order}")
        if order == self.order:
            return self
        space = jet_space(self.dim, order)
        return Jet(space, self.coeffs[..., : space.size])

    def partial(self, i: int) -> "Jet":
        """∂_i as a jet of order K−1."""
        if self.order == 0:
            raise OrderExceededError("jet of order 0 carries no derivatives")
        if not 0 <= i < self.dim:
            raise InvalidArgumentError(f"variable index {i} out of range for dimension {self.dim}")
        src, fac = self.space.derivative_tables[i]
        return Jet(jet_space(self.dim, self.order - 1), self.coeffs[..., src] * fac)

    def gradient(self) -> "Jet":
        """All first partials, stacked along a new last batch axis."""
        parts = [self.partial(i).coeffs for i in range(self.dim)]
        return Jet(jet_space(self.dim, self.order - 1), np.stack(parts, axis=-2))

    def transpose(self, *axes: int) -> "Jet":
        return Jet(self.space, self.coeffs.transpose(*axes, len(self.shape)))

    def sum(self, axis: int | tuple[int, ...]) -> "Jet":
        axes = (axis,) if isinstance(axis, int) else axis
        nd = len(self.shape)
        axes = tuple(a % nd for a in axes)
        return Jet(self.space, self.coeffs.sum(axis=axes))

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other) -> "Jet":
        if isinstance(other, Jet):
            a, b = _align(self, other)
            return Jet(a.space, a.coeffs + b.coeffs)
        c = np.asarray(other, dtype=float)
        shape = np.broadcast_shapes(self.shape, c.shape)
        out = np.broadcast_to(self.coeffs, shape + (self.space.size,)).copy()
        out[..., 0] += c
        return Jet(self.space, out)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.space, -self.coeffs)

    def __sub__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self + (-other)
        return self + (-np.asarray(other, dtype=float))

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if isinstance(other, Jet):
            a, b = _align(self, other)
            left, right, scatter = a.space.product_table
            return Jet(a.space, (a.coeffs[..., left] * b.coeffs[..., right]) @ scatter)
        c = np.asarray(other, dtype=float)
        return Jet(self.space, self.coeffs * c[..., None])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * other.reciprocal()
        c = np.asarray(other, dtype=float)
        if np.any(c == 0.0):
            raise SingularEvaluationError("division by zero constant")
        return Jet(self.space, self.coeffs / c[..., None])

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, exponent) -> "Jet":
        return jet_elementary(("power", float(exponent)), self)

    def reciprocal(self) -> "Jet":
        return jet_elementary("reciprocal", self)


def _align(a: Jet, b: Jet) -> tuple[Jet, Jet]:
    if a.dim != b.dim:
        raise DimensionError(f"cannot combine jets of dimensions {a.dim} and {b.dim}")
    if a.order == b.order:
        return a, b
    k = min(a.order, b.order)
    return a.truncate(k), b.truncate(k)


def stack(jets: Sequence[Jet], axis: int = 0) -> Jet:
    """Stack jets along a new batch axis, truncating to the lowest order."""
    if not jets:
        raise InvalidArgumentError("cannot stack an empty sequence of jets")
    order = min(j.order for j in jets)
    dims = {j.dim for j in jets}
    if len(dims) != 1:
        raise DimensionError(f"cannot stack jets of dimensions {sorted(dims)}")
    parts = [j.truncate(order).coeffs for j in jets]
    return Jet(jet_space(dims.pop(), order), np.stack(parts, axis=axis))


def seed_jets(point: Sequence[float], dim: int, order: int) -> Jet:
    """
    Coordinate jets x_i at a point.

    Args:
        point: Expansion point.
        dim: Number of coordinates; must equal len(point).
        order: Truncation order K ≥ 1.

    Returns:
        Jet of shape (dim,) whose i-th entry is x_i: value point[i], ∂_i = 1.
    """
    point = np.asarray(point, dtype=float).ravel()
    if point.size == 0:
        raise InvalidArgumentError("seed point must not be empty")
    if order < 1:
        raise InvalidArgumentError(f"jet order must be at least 1, got {order}")
    if dim != point.size:
        raise InvalidArgumentError(f"dimension {dim} does not match point of length {point.size}")
    space = jet_space(dim, order)
    coeffs = np.zeros((dim, space.size))
    coeffs[:, 0] = point
    for i in range(dim):
        alpha = [0] * dim
        alpha[i] = 1
        coeffs[i, space.index_of[tuple(alpha)]] = 1.0
    return Jet(space, coeffs)


def extract_partial(jet: Jet, alpha: Sequence[int]):
    """∂^α u(p) = α!·coeff(α)."""
    return jet.coeff(alpha) * multi_index_factorial(alpha)


# ------------------------------------------------------------ elementary functions
def _exp_series(a0, order):
    c = [np.exp(a0)]
    for k in range(1, order + 1):
        c.append(c[-1] / k)
    return c


def _log_series(a0, order):
    c = [np.log(a0)]
    if order >= 1:
        c.append(1.0 / a0)
    for k in range(2, order + 1):
        c.append(-c[-1] * (k - 1) / (k * a0))
    return c


def _sin_cos_series(a0, order):
    s, c = [np.sin(a0)], [np.cos(a0)]
    for k in range(1, order + 1):
        s.append(c[k - 1] / k)
        c.append(-s[k - 1] / k)
    return s, c


def _power_series(a0, r, order):
    # x·y' = r·y
    p = [a0**r]
    for k in range(1, order + 1):
        p.append(p[-1] * (r - k + 1) / (k * a0))
    return p


def _reciprocal_series(a0, order):
    q = [1.0 / a0]
    for k in range(1, order + 1):
        q.append(-q[-1] / a0)
    return q


def _compose_series(a: Jet, series: list) -> Jet:
    """Σ_k series[k]·(a − a0)^k by Horner; exact because a − a0 is nilpotent."""
    u = a - a.coeffs[..., 0]
    result = Jet.constant(series[-1], a.dim, a.order)
    for c in reversed(series[:-1]):
        result = result * u + c
    return result


def _integer_power(a: Jet, n: int) -> Jet:
    result = Jet.constant(np.ones(a.shape), a.dim, a.order)
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _first_bad(a0, mask) -> float:
    return float(np.asarray(a0)[mask].ravel()[0])


def jet_elementary(fn, a: Jet) -> Jet:
    """
    Exact truncated composition fn∘a.

    Args:
        fn: One of "exp", "log", "sin", "cos", "sqrt", "reciprocal" or ("power", r).
        a: Argument jet.

    Raises:
        DomainError: The argument's value is outside fn's domain.
        SingularEvaluationError: Reciprocal of a vanishing value.
    """
    a0 = a.coeffs[..., 0]
    k = a.order
    if isinstance(fn, tuple):
        name, r = fn
        if name != "power":
            raise InvalidArgumentError(f"unknown parametrised function {name!r}")
        if float(r).is_integer():
            n = int(r)
            if n >= 0:
                return _integer_power(a, n)
            return _integer_power(a, -n).reciprocal()
        bad = a0 <= 0
        if np.any(bad):
            raise DomainError(f"power({r})", _first_bad(a0, bad))
        return jet_elementary("exp", jet_elementary("log", a) * r)

    if fn == "exp":
        return _compose_series(a, _exp_series(a0, k))
    if fn == "log":
        bad = a0 <= 0
        if np.any(bad):
            raise DomainError("log", _first_bad(a0, bad))
        return _compose_series(a, _log_series(a0, k))
    if fn == "sin":
        return _compose_series(a, _sin_cos_series(a0, k)[0])
    if fn == "cos":
        return _compose_series(a, _sin_cos_series(a0, k)[1])
    if fn == "sqrt":
        bad = a0 <= 0
        if np.any(bad):
            raise DomainError("sqrt", _first_bad(a0, bad))
        return _compose_series(a, _power_series(a0, 0.5, k))
    if fn == "reciprocal":
        if np.any(a0 == 0.0):
            raise SingularEvaluationError("division by a jet with vanishing value")
        return _compose_series(a, _reciprocal_series(a0, k))
    raise InvalidArgumentError(f"unknown elementary function {fn!r}")


# ------------------------------------------------------------------ contractions
def _free_letter(*subscripts: str) -> str:
    used = set("".join(subscripts))
    for ch in _LETTERS:
        if ch not in used:
            return ch
    raise InvalidArgumentError("no free einsum letter left")


def _unary(sub: str, out: str, x):
    if isinstance(x, Jet):
        z = _free_letter(sub, out)
        return Jet(x.space, np.einsum(f"{sub}{z}->{out}{z}", x.coeffs))
    return np.einsum(f"{sub}->{out}", np.asarray(x, dtype=float))


def _pair(s1: str, s2: str, out: str, x, y):
    z = _free_letter(s1, s2, out)
    if isinstance(x, Jet) and isinstance(y, Jet):
        x, y = _align(x, y)
        left, right, scatter = x.space.product_table
        vals = np.einsum(f"{s1}{z},{s2}{z}->{out}{z}", x.coeffs[..., left], y.coeffs[..., right])
        return Jet(x.space, vals @ scatter)
    if isinstance(x, Jet):
        return Jet(x.space, np.einsum(f"{s1}{z},{s2}->{out}{z}", x.coeffs, np.asarray(y, dtype=float)))
    if isinstance(y, Jet):
        return Jet(y.space, np.einsum(f"{s1},{s2}{z}->{out}{z}", np.asarray(x, dtype=float), y.coeffs))
    return np.einsum(f"{s1},{s2}->{out}", np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def jeinsum(subscripts: str, *operands):
    """
    Einstein summation over jet-valued (or plain array) tensors.

    Products between two Jets follow truncated jet multiplication; products with
    plain arrays are linear in the jet coefficients. Operands are contracted
    pairwise from left to right and an explicit output ("->") is required.

    Example:
        >>> gamma = jeinsum("kl,lij->kij", ginv, first_kind)
    """
    subscripts = subscripts.replace(" ", "")
    if "->" not in subscripts:
        raise InvalidArgumentError("jeinsum needs an explicit '->' output")
    inputs, output = subscripts.split("->")
    terms = inputs.split(",")
    if len(terms) != len(operands):
        raise InvalidArgumentError(
            f"{len(terms)} subscripts given for {len(operands)} operands"
        )
    current_sub, current = terms[0], operands[0]
    for k in range(1, len(terms)):
        later = "".join(terms[k + 1 :]) + output
        keep = "".join(dict.fromkeys(c for c in current_sub + terms[k] if c in later))
        current = _pair(current_sub, terms[k], keep, current, operands[k])
        current_sub = keep
    if current_sub != output or len(terms) == 1:
        current = _unary(current_sub, output, current)
    return current


def compose(outer: Jet, inner: Jet) -> Jet:
    """
    Substitute jets into a Taylor polynomial.

    Args:
        outer: Jet in n variables expanded at q (any batch shape).
        inner: Jet of shape (n,) in m variables whose value is q.

    Returns:
        Jet in m variables of order min(outer.order, inner.order) for outer∘inner.
    """
    if inner.shape != (outer.dim,):
        raise DimensionError(
            f"inner jets of shape {inner.shape} cannot feed {outer.dim} variables"
        )
    order = min(outer.order, inner.order)
    outer = outer.truncate(order)
    inner = inner.truncate(order)
    shift = inner - inner.coeffs[..., 0]
    space = outer.space
    monomials = [Jet.constant(1.0, inner.dim, order)]
    for alpha in space.indices[1:]:
        a = next(i for i, e in enumerate(alpha) if e)
        prev = list(alpha)
        prev[a] -= 1
        monomials.append(monomials[space.index_of[tuple(prev)]] * shift[a])
    basis = np.stack([m.coeffs for m in monomials])
    return Jet(jet_space(inner.dim, order), np.einsum("...b,bz->...z", outer.coeffs, basis))


# ----------------------------------------------------------------- linear algebra
def jet_inverse(matrix: Jet) -> Jet:
    """Inverse of a square jet matrix via the Neumann series around its value."""
    if len(matrix.shape) != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"expected a square jet matrix, got shape {matrix.shape}")
    base = matrix.coeffs[..., 0]
    try:
        base_inv = np.linalg.inv(base)
    except np.linalg.LinAlgError as e:
        raise SingularEvaluationError(f"singular matrix value: {e}") from e
    step = -jeinsum("ij,jk->ik", base_inv, matrix - base)
    term = Jet.constant(base_inv, matrix.dim, matrix.order)
    total = term
    for _ in range(matrix.order):
        term = jeinsum("ij,jk->ik", step, term)
        total = total + term
    return total


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def jet_det(matrix: Jet) -> Jet:
    """Determinant of a small square jet matrix (Leibniz expansion)."""
    if len(matrix.shape) != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"expected a square jet matrix, got shape {matrix.shape}")
    n = matrix.shape[0]
    total = Jet.constant(0.0, matrix.dim, matrix.order)
    for perm in permutations(range(n)):
        term = matrix[0, perm[0]]
        for row in range(1, n):
            term = term * matrix[row, perm[row]]
        total = total + term if _permutation_sign(perm) > 0 else total - term
    return total


def jet_sum(jets: Iterable[Jet]) -> Jet:
    it = iter(jets)
    total = next(it)
    for j in it:
        total = total + j
    return total


__all__ = [
    "Jet",
    "stack",
    "seed_jets",
    "extract_partial",
    "jet_elementary",
    "jeinsum",
    "compose",
    "jet_inverse",
    "jet_det",
    "jet_sum",
]
