"""
Maps: tension, bitension and f-bitension fields, and conformal rescaling.
"""

from .bundle import MapJetBundle, map_jets
from .conformal import conformal_rescale
from .definitions import ScalarFieldDef, SmoothMapDef
from .fields import (
    bitension_field,
    curvature_trace,
    f_bitension_field,
    pullback_connection_apply,
    pullback_derivative,
    rough_laplacian,
    tension_field,
)

__all__ = [
    "SmoothMapDef",
    "ScalarFieldDef",
    "MapJetBundle",
    "map_jets",
    "tension_field",
    "pullback_connection_apply",
    "pullback_derivative",
    "rough_laplacian",
    "curvature_trace",
    "bitension_field",
    "f_bitension_field",
    "conformal_rescale",
]
