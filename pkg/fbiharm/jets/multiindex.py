"""Multi-indices and the dense coefficient layout shared by all jets.

Multi-indices of a space (dim, K) are stored graded by total order, so the layout of
(dim, K1) is a prefix of the layout of (dim, K2) for K1 < K2; truncation is a slice.
"""

from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Sequence

import numpy as np

from ..errors import InvalidArgumentError, OrderExceededError

MultiIndex = tuple[int, ...]


def multi_index_order(alpha: Sequence[int]) -> int:
    """Total order |α|."""
    return int(sum(alpha))


def multi_index_factorial(alpha: Sequence[int]) -> int:
    """α! = Π α_i!."""
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def unit_index(dim: int, i: int, times: int = 1) -> MultiIndex:
    exps = [0] * dim
    exps[i] = times
    return tuple(exps)


class JetSpace:
    """Index tables for jets of a given dimension and truncation order.

    Args:
        dim: Number of variables.
        order: Truncation order K.

    Use jet_space() to get the shared cached instance.
    """

    def __init__(self, dim: int, order: int):
        if dim < 1:
            raise InvalidArgumentError(f"jet dimension must be positive, got {dim}")
        if order < 0:
            raise InvalidArgumentError(f"jet order must be nonnegative, got {order}")
        self.dim = dim
        self.order = order

        indices: list[MultiIndex] = []
        for degree in range(order + 1):
            for combo in combinations_with_replacement(range(dim), degree):
                exps = [0] * dim
                for c in combo:
                    exps[c] += 1
                indices.append(tuple(exps))
        self.indices: tuple[MultiIndex, ...] = tuple(indices)
        self.index_of: dict[MultiIndex, int] = {a: k for k, a in enumerate(indices)}
        self.size = len(indices)
        self.degrees = np.array([sum(a) for a in indices], dtype=int)
        self.factorials = np.array([multi_index_factorial(a) for a in indices], dtype=float)

    def __repr__(self) -> str:
        return f"JetSpace(dim={self.dim}, order={self.order}, size={self.size})"

    def size_at(self, order: int) -> int:
        """Number of coefficients of the prefix space of the given order."""
        return int(np.count_nonzero(self.degrees <= order))

    def locate(self, alpha: Sequence[int]) -> int:
        """Position of α in the coefficient layout."""
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.dim or any(a < 0 for a in alpha):
            raise InvalidArgumentError(f"multi-index {alpha} does not fit dimension {self.dim}")
        if sum(alpha) > self.order:
            raise OrderExceededError(
                f"multi-index {alpha} has order {sum(alpha)} > truncation order {self.order}"
            )
        return self.index_of[alpha]

    @cached_property
    def product_table(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(left, right, scatter) such that (a·b) = (a[left] * b[right]) @ scatter."""
        left, right, target = [], [], []
        for r, alpha in enumerate(self.indices):
            for beta in product(*(range(a + 1) for a in alpha)):
                gamma = tuple(a - b for a, b in zip(alpha, beta))
                left.append(self.index_of[beta])
                right.append(self.index_of[gamma])
                target.append(r)
        scatter = np.zeros((len(target), self.size))
        scatter[np.arange(len(target)), target] = 1.0
        return np.array(left), np.array(right), scatter

    @cached_property
    def derivative_tables(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        """Per variable i: (source positions, factors) mapping order K to order K−1."""
        if self.order == 0:
            return ()
        lower = jet_space(self.dim, self.order - 1)
        tables = []
        for i in range(self.dim):
            src, fac = [], []
            for alpha in lower.indices:
                raised = list(alpha)
                raised[i] += 1
                src.append(self.index_of[tuple(raised)])
                fac.append(alpha[i] + 1.0)
            tables.append((np.array(src), np.array(fac)))
        return tuple(tables)


@lru_cache(maxsize=None)
def jet_space(dim: int, order: int) -> JetSpace:
    """Shared JetSpace for (dim, order)."""
    return JetSpace(dim, order)


__all__ = [
    "MultiIndex",
    "JetSpace",
    "jet_space",
    "multi_index_order",
    "multi_index_factorial",
    "unit_index",
]
