"""Deterministic sample points inside a scenario's box."""

import numpy as np

from ..errors import InvalidArgumentError
from ..geometry import CoordinateBox
from .catalogue import Scenario


def sample_points(scenario: Scenario | CoordinateBox, count: int, seed: int = 42) -> list[np.ndarray]:
    """
    Seeded uniform points strictly inside the sample box.

    count=1 returns the box center; the same (count, seed) always yields the
    same list.

    Raises:
        InvalidArgumentError: count < 1 or the box is unbounded.
    """
    box = scenario.box if isinstance(scenario, Scenario) else scenario
    if count < 1:
        raise InvalidArgumentError(f"count must be at least 1, got {count}")
    if not box.is_finite:
        raise InvalidArgumentError("cannot sample an unbounded box")
    if count == 1:
        return [box.center()]
    lower = np.asarray(box.lower)
    width = np.asarray(box.upper) - lower
    rng = np.random.default_rng(seed)
    # random() draws from [0, 1); keep the lower face out as well
    unit = np.clip(rng.random((count, box.dim)), 1e-9, 1.0 - 1e-9)
    return [lower + width * u for u in unit]


__all__ = ["sample_points"]
