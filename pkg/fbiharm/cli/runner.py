"""Grid runner: evaluates the requested checks of a scenario at its sample points."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from ..errors import DescriptorMismatchError, FbiharmError
from ..hypersurface import (
    HypersurfaceFrame,
    ResidualPair,
    frame_at,
    pseudo_umbilical_defect,
    residual_biharmonic,
    residual_conformal_immersion,
    residual_conformal_spaceform,
    residual_conformal_unscaled,
    residual_einstein,
    residual_fbh2,
    residual_fbh_unscaled,
    residual_spaceform,
)
from ..maps import MapJetBundle, ScalarFieldDef, bitension_field, f_bitension_field
from ..oracle import QUANTITIES, FDSpec, cross_validate
from ..scenarios import Expectation, Scenario, build_scenario, parse_expectation, sample_points
from .config import RunConfig
from .report import CheckSummary, Report

logger = logging.getLogger(__name__)

# H-field differences call frame_at dozens of times per point
CROSS_VALIDATE_POINTS = 5


@dataclass
class CheckValue:
    """Measure of one check at one point with the scale of its relative pass rule."""

    measure: float
    scale: float = 1.0
    details: dict[str, float] = field(default_factory=dict)


class PointContext:
    """Lazily built jets shared by all checks at one sample point."""

    def __init__(
        self,
        scenario: Scenario,
        point: np.ndarray,
        order: int,
        tolerance: float,
        einstein_tolerance: float | None = None,
    ):
        self.scenario = scenario
        self.point = point
        self.order = order
        self.tolerance = tolerance
        self.einstein_tolerance = einstein_tolerance

    @cached_property
    def bundle(self) -> MapJetBundle:
        return MapJetBundle(self.scenario.map, self.point, self.order)

    @cached_property
    def frame(self) -> HypersurfaceFrame:
        return frame_at(self.scenario.map, self.point, bundle=self.bundle)

    def map_value(self, vector: np.ndarray) -> CheckValue:
        return CheckValue(self.bundle.target_norm(vector), self.bundle.residual_scale())

    def residual_value(self, pair: ResidualPair) -> CheckValue:
        return CheckValue(pair.norm, pair.scale, {"r1": pair.r1, "r2_norm": pair.r2_norm})

    def space_form_curvature(self) -> float:
        ambient = self.scenario.ambient
        if ambient.kind != "space_form":
            raise DescriptorMismatchError(f"check needs a space-form ambient, scenario has {ambient.to_text()}")
        return ambient.value

    def einstein_constant(self) -> float:
        lam = self.scenario.ambient.einstein_constant(self.scenario.map.target_dim)
        if lam is None:
            raise DescriptorMismatchError("check needs an Einstein ambient, scenario has general")
        return lam


def _tension(ctx: PointContext) -> CheckValue:
    return ctx.map_value(ctx.bundle.tension.value)


def _bitension(ctx: PointContext) -> CheckValue:
    return ctx.map_value(bitension_field(ctx.scenario.map, ctx.point, ctx.bundle))


def _f_bitension(ctx: PointContext) -> CheckValue:
    return ctx.map_value(f_bitension_field(ctx.scenario.map, ctx.scenario.f, ctx.point, ctx.bundle))


def _fbh2(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(residual_fbh2(ctx.frame, ctx.scenario.f, ctx.tolerance))


def _fbh(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(residual_fbh_unscaled(ctx.frame, ctx.scenario.f, ctx.tolerance))


def _einstein(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(
        residual_einstein(
            ctx.frame, ctx.scenario.f, ctx.einstein_constant(), ctx.tolerance, ctx.einstein_tolerance
        )
    )


def _spaceform(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(
        residual_spaceform(
            ctx.frame, ctx.scenario.f, ctx.space_form_curvature(), ctx.tolerance, ctx.einstein_tolerance
        )
    )


def _bhs(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(residual_biharmonic(ctx.frame, ctx.tolerance))


def _conformal_immersion(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(
        residual_conformal_immersion(ctx.frame, ctx.scenario.conformal_factor(), ctx.tolerance)
    )


def _conformal_spaceform(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(
        residual_conformal_spaceform(
            ctx.frame,
            ctx.scenario.conformal_factor(),
            ctx.space_form_curvature(),
            ctx.tolerance,
            ctx.einstein_tolerance,
        )
    )


def _conformal_unscaled(ctx: PointContext) -> CheckValue:
    return ctx.residual_value(
        residual_conformal_unscaled(ctx.frame, ctx.scenario.conformal_factor(), ctx.tolerance)
    )


def _pseudo_umbilical(ctx: PointContext) -> CheckValue:
    return CheckValue(pseudo_umbilical_defect(ctx.frame))


def _mean_curvature(ctx: PointContext) -> CheckValue:
    return CheckValue(ctx.frame.mean_curvature)


def _squared_shape(ctx: PointContext) -> CheckValue:
    return CheckValue(ctx.frame.squared_norm)


def _curvature_gap(ctx: PointContext) -> CheckValue:
    return CheckValue(ctx.frame.curvature_gap)


POINT_CHECKS: dict[str, Callable[[PointContext], CheckValue]] = {
    "tension": _tension,
    "bitension": _bitension,
    "f_bitension": _f_bitension,
    "fbh2": _fbh2,
    "fbh": _fbh,
    "einstein": _einstein,
    "spaceform": _spaceform,
    "bhs": _bhs,
    "conformal_immersion": _conformal_immersion,
    "conformal_spaceform": _conformal_spaceform,
    "conformal_unscaled": _conformal_unscaled,
    "pseudo_umbilical": _pseudo_umbilical,
    "mean_curvature": _mean_curvature,
    "squared_shape": _squared_shape,
    "curvature_gap": _curvature_gap,
}


def prepare_scenario(config: RunConfig) -> Scenario:
    """Build the configured scenario with the f override and expectation overrides applied."""
    scenario = build_scenario(config.scenario, config.scenario_params())
    if isinstance(config.f, (str, int, float)):
        scenario = scenario.with_f(ScalarFieldDef.parse(str(config.f), scenario.map.source_dim))
    if config.expect:
        scenario = scenario.with_expectations(
            {check: parse_expectation(check, raw) for check, raw in config.expect.items()}
        )
    return scenario


def _evaluate_point(ctx: PointContext, checks: list[str]) -> dict[str, CheckValue | FbiharmError]:
    results: dict[str, CheckValue | FbiharmError] = {}
    for name in checks:
        try:
            results[name] = POINT_CHECKS[name](ctx)
        except FbiharmError as exc:
            results[name] = exc
    return results


def _summarize(
    name: str,
    expectation: Expectation | None,
    points: list[np.ndarray],
    values: list[CheckValue | FbiharmError],
    tolerance: float,
    floor: float,
) -> CheckSummary:
    summary = CheckSummary(check=name, expectation=expectation.to_text() if expectation else "none", tolerance=tolerance)
    if expectation is not None and expectation.kind == "nonzero":
        summary.floor = floor
    for point, value in zip(points, values):
        if isinstance(value, FbiharmError):
            summary.error = f"{type(value).__name__}: {value}"
            summary.passed = False
            logger.warning("check %s failed at %s: %s", name, point.tolist(), value)
            return summary

    measures = np.array([v.measure for v in values])
    scales = np.array([v.scale for v in values])
    if expectation is not None and expectation.kind == "value":
        residuals = np.abs(measures - expectation.value)
        ok = residuals <= tolerance * max(1.0, abs(expectation.value))
        passed = bool(np.all(ok))
    else:
        residuals = np.abs(measures)
        if expectation is None:
            passed = True
        elif expectation.kind == "zero":
            passed = bool(np.all(residuals <= tolerance * scales))
        else:
            passed = bool(residuals.max() >= floor)

    worst = int(np.argmax(residuals))
    summary.points = len(values)
    summary.max_residual = float(residuals[worst])
    summary.mean_residual = float(residuals.mean())
    summary.worst_point = [float(v) for v in points[worst]]
    summary.passed = passed
    summary.details = {"min_measure": float(measures.min()), "max_measure": float(measures.max())}
    for key in values[0].details:
        summary.details[f"max_abs_{key}"] = float(max(abs(v.details[key]) for v in values))
    return summary


def _cross_validate_summary(scenario: Scenario, points: list[np.ndarray], tolerance: float) -> CheckSummary:
    subset = points[:CROSS_VALIDATE_POINTS]
    summary = CheckSummary(check="cross_validate", expectation="zero", tolerance=tolerance)
    try:
        result = cross_validate(scenario, QUANTITIES, subset, tolerance, FDSpec.from_config())
    except FbiharmError as exc:
        summary.error = f"{type(exc).__name__}: {exc}"
        summary.passed = False
        return summary
    summary.points = len(subset)
    summary.max_residual = result.max_deviation
    summary.mean_residual = float(np.mean(list(result.deviations.values()))) if result.deviations else 0.0
    summary.passed = result.passed
    summary.details = {f"deviation_{q}": d for q, d in result.deviations.items()}
    return summary


def run_check(config: RunConfig) -> Report:
    """
    Evaluate every requested check of the configured scenario at all sample points.

    A check that raises at any point is recorded with its error and fails; the
    other checks still run. Results do not depend on the number of workers.
    """
    scenario = prepare_scenario(config)
    points = sample_points(scenario, config.sampling.count, config.sampling.seed)
    point_checks = [c for c in config.checks if c in POINT_CHECKS]
    tolerance = config.tolerances.zero
    logger.info(
        "running %s on %s at %d points (jet order %d)",
        point_checks, scenario.name, len(points), config.jet_order,
    )

    contexts = [PointContext(scenario, p, config.jet_order, tolerance, config.tolerances.einstein) for p in points]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        per_point = list(pool.map(lambda ctx: _evaluate_point(ctx, point_checks), contexts))

    report = Report.start(config, scenario)
    for name in config.checks:
        if name == "cross_validate":
            summary = _cross_validate_summary(scenario, points, config.tolerances.cross_validate)
        else:
            summary = _summarize(
                name,
                scenario.expectation(name),
                points,
                [values[name] for values in per_point],
                tolerance,
                config.tolerances.nonzero_floor,
            )
        logger.info("check %s: passed=%s max=%s", name, summary.passed, summary.max_residual)
        report.checks[name] = summary
    return report


__all__ = ["CheckValue", "PointContext", "POINT_CHECKS", "CROSS_VALIDATE_POINTS", "prepare_scenario", "run_check"]
