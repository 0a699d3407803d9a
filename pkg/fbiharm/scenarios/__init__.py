"""
Scenarios: the built-in examples with their expected check outcomes.
"""

from .catalogue import (
    CATALOGUE,
    CHECK_NAMES,
    EXPECTATION_KINDS,
    HYPERSURFACE_CHECKS,
    MAP_CHECKS,
    CatalogueEntry,
    Expectation,
    Scenario,
    build_scenario,
    list_scenarios,
    parse_expectation,
)
from .sampling import sample_points

__all__ = [
    "CHECK_NAMES",
    "MAP_CHECKS",
    "HYPERSURFACE_CHECKS",
    "EXPECTATION_KINDS",
    "Expectation",
    "Scenario",
    "CatalogueEntry",
    "CATALOGUE",
    "parse_expectation",
    "build_scenario",
    "list_scenarios",
    "sample_points",
]
