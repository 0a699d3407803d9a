"""
Oracle: finite differences that check the jet pipeline from the outside.
"""

from .cross_check import (
    QUANTITIES,
    CrossValidationReport,
    cross_validate,
    fd_christoffel,
    fd_mean_curvature,
    fd_ricci,
    fd_tension,
)
from .finite_difference import MAX_ORDER, STENCILS, FDSpec, fd_gradient, fd_hessian, fd_partial

__all__ = [
    # Differences
    "FDSpec",
    "STENCILS",
    "MAX_ORDER",
    "fd_partial",
    "fd_gradient",
    "fd_hessian",
    # Cross-validation
    "QUANTITIES",
    "CrossValidationReport",
    "fd_christoffel",
    "fd_ricci",
    "fd_tension",
    "fd_mean_curvature",
    "cross_validate",
]
