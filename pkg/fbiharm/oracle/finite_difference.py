"""
Central differences with Richardson extrapolation.

Only value-level evaluators are called here; nothing in this module touches jets,
so its estimates are independent of the Taylor pipeline they are compared with.

    >>> import numpy as np
    >>> round(fd_partial(lambda x: np.exp(x[0]), [0.0], (1,)), 10)
    1.0
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from ..config import get_engine_config
from ..errors import InvalidArgumentError, OracleError

logger = logging.getLogger(__name__)

# offsets and weights of the O(h²) central stencil for the k-th derivative (scaled by h^-k)
STENCILS: dict[int, tuple[tuple[int, ...], tuple[float, ...]]] = {
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}
MAX_ORDER = 4


@dataclass(frozen=True)
class FDSpec:
    """
    Step and extrapolation depth of the oracle.

    Args:
        step: Base step h for first derivatives. Higher orders use a larger step
            (10h for second, 100h for third and fourth) to keep roundoff below
            the truncation error.
        levels: Richardson levels; each halves the step and removes one more
            even power of h from the error.
        max_order: Largest total derivative order accepted.
    """

    step: float = 1e-3
    levels: int = 2
    max_order: int = MAX_ORDER

    def __post_init__(self):
        if not self.step > 0:
            raise InvalidArgumentError(f"step must be positive, got {self.step}")
        if self.levels < 1:
            raise InvalidArgumentError(f"levels must be at least 1, got {self.levels}")
        if not 1 <= self.max_order <= MAX_ORDER:
            raise InvalidArgumentError(f"max_order must be between 1 and {MAX_ORDER}")

    @classmethod
    def from_config(cls) -> "FDSpec":
        config = get_engine_config()
        return cls(step=config.fd_step, levels=config.fd_levels)

    def step_for(self, order: int) -> float:
        return self.step * 10.0 ** (min(order, 3) - 1)


def _evaluate(fn: Callable, point: np.ndarray):
    try:
        return np.asarray(fn(point), dtype=float)
    except OracleError:
        raise
    except Exception as exc:
        raise OracleError(point, exc) from exc


def _stencil_estimate(fn: Callable, p: np.ndarray, alpha: Sequence[int], h: float):
    axes = [(i, k) for i, k in enumerate(alpha) if k > 0]
    total = 0.0
    for choice in product(*(range(len(STENCILS[k][0])) for _, k in axes)):
        shift = np.zeros_like(p)
        weight = 1.0
        for (axis, k), j in zip(axes, choice):
            offsets, weights = STENCILS[k]
            shift[axis] = offsets[j] * h
            weight *= weights[j]
        total = total + weight * _evaluate(fn, p + shift)
    return total / h ** sum(alpha)


def fd_partial(fn: Callable, point: Sequence[float], alpha: Sequence[int], spec: FDSpec | None = None):
    """
    Estimate ∂^α fn at a point.

    Tensor-product central stencils give an O(h²) estimate D(h); the Richardson
    table T[i][j] = T[i][j−1] + (T[i][j−1] − T[i−1][j−1])/(4^j − 1) over the
    steps h/2^i removes the h², h⁴, … terms.

    Args:
        fn: Evaluator point → real or array (array-valued results are
            differentiated componentwise).
        point: Expansion point.
        alpha: Multi-index with one entry per coordinate.
        spec: Step and levels (defaults to the engine configuration).

    Raises:
        InvalidArgumentError: α has the wrong length or exceeds the maximum order.
        OracleError: The evaluator failed at a stencil point.
    """
    spec = spec or FDSpec.from_config()
    p = np.asarray(point, dtype=float).ravel()
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != p.size or any(a < 0 for a in alpha):
        raise InvalidArgumentError(f"multi-index {alpha} does not fit a point of dimension {p.size}")
    order = sum(alpha)
    if order > spec.max_order:
        raise InvalidArgumentError(f"order {order} exceeds the oracle maximum {spec.max_order}")
    if order == 0:
        value = _evaluate(fn, p)
        return value if value.ndim else float(value)

    h = spec.step_for(order)
    table = [[_stencil_estimate(fn, p, alpha, h)]]
    for i in range(1, spec.levels + 1):
        row = [_stencil_estimate(fn, p, alpha, h / 2**i)]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (4**j - 1))
        table.append(row)
    result = np.asarray(table[-1][-1])
    return result if result.ndim else float(result)


def fd_gradient(fn: Callable, point: Sequence[float], spec: FDSpec | None = None) -> np.ndarray:
    """First partials stacked on a new last axis."""
    p = np.asarray(point, dtype=float).ravel()
    eye = np.eye(p.size, dtype=int)
    return np.stack([np.asarray(fd_partial(fn, p, eye[i], spec)) for i in range(p.size)], axis=-1)


def fd_hessian(fn: Callable, point: Sequence[float], spec: FDSpec | None = None) -> np.ndarray:
    """Second partials on two new last axes (symmetric by construction)."""
    p = np.asarray(point, dtype=float).ravel()
    n = p.size
    eye = np.eye(n, dtype=int)
    first = np.asarray(fd_partial(fn, p, 2 * eye[0], spec))
    out = np.zeros(first.shape + (n, n))
    for i in range(n):
        for j in range(i, n):
            value = first if i == j == 0 else np.asarray(fd_partial(fn, p, eye[i] + eye[j], spec))
            out[..., i, j] = value
            out[..., j, i] = value
    return out


__all__ = ["FDSpec", "STENCILS", "MAX_ORDER", "fd_partial", "fd_gradient", "fd_hessian"]
