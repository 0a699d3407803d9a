"""Engine-wide numerical configuration.

Every value can be changed at runtime with update_engine_config() or through
environment variables prefixed with FBIHARM_ (a .env file is honoured by the CLI).
"""

import os
from dataclasses import dataclass, fields


@dataclass
class EngineConfig:
    """Numerical defaults shared by all modules."""

    # Jets
    jet_order: int = 4  # Truncation order of every jet pipeline

    # Pass/fail rules
    tolerance: float = 1e-7  # Relative threshold for zero expectations
    nonzero_floor: float = 1e-3  # Minimum max-residual for nonzero expectations
    einstein_tolerance: float = 1e-8  # ‖Ric − λh‖∞ allowed for Einstein ambients
    degenerate_threshold: float = 1e-12  # Smallest acceptable metric/Gram determinant

    # Finite-difference oracle
    fd_step: float = 1e-3  # Base step for first and second derivatives
    fd_levels: int = 2  # Richardson extrapolation levels
    cross_validate_tolerance: float = 1e-5  # Allowed jet-vs-FD deviation

    # Grid runner
    sample_count: int = 50  # Points per scenario
    seed: int = 42  # Sampling seed
    workers: int = 1  # Threads used to evaluate sample points

    def __post_init__(self):
        """Load values from environment variables if present, then validate."""
        for item in fields(self):
            raw = os.getenv(f"FBIHARM_{item.name.upper()}")
            if raw is not None:
                caster = int if item.type in (int, "int") else float
                setattr(self, item.name, caster(raw))
        self.validate()

    def validate(self) -> None:
        if self.jet_order < 1:
            raise ValueError("jet_order must be at least 1")
        if self.tolerance <= 0 or self.nonzero_floor <= 0:
            raise ValueError("tolerance and nonzero_floor must be positive")
        if self.einstein_tolerance <= 0 or self.degenerate_threshold <= 0:
            raise ValueError("einstein_tolerance and degenerate_threshold must be positive")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")
        if self.fd_levels < 1:
            raise ValueError("fd_levels must be at least 1")
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


# Global engine configuration instance
ENGINE_CONFIG = EngineConfig()


def get_engine_config() -> EngineConfig:
    """Return the global engine configuration."""
    return ENGINE_CONFIG


def update_engine_config(**overrides) -> EngineConfig:
    """
    Update the global engine configuration in place.

    Args:
        **overrides: Field names of EngineConfig with their new values.

    Returns:
        The updated global configuration.

    Raises:
        ValueError: Unknown field or invalid value.
    """
    known = {item.name for item in fields(ENGINE_CONFIG)}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ValueError(f"unknown engine setting: {', '.join(unknown)}")
    previous = {name: getattr(ENGINE_CONFIG, name) for name in overrides}
    for name, value in overrides.items():
        setattr(ENGINE_CONFIG, name, value)
    try:
        ENGINE_CONFIG.validate()
    except ValueError:
        for name, value in previous.items():
            setattr(ENGINE_CONFIG, name, value)
        raise
    return ENGINE_CONFIG


__all__ = [
    "EngineConfig",
    "ENGINE_CONFIG",
    "get_engine_config",
    "update_engine_config",
]
