"""
Finite-difference oracle tests, and cross validation of the jet pipeline
against it.
"""

import math

import numpy as np
import pytest

from fbiharm.errors import DimensionError, InvalidArgumentError, OracleError
from fbiharm.geometry import christoffel, curvature_pack, sphere_chart
from fbiharm.hypersurface import frame_at
from fbiharm.jets import eval_expression, extract_partial, seed_jets
from fbiharm.maps import tension_field
from fbiharm.oracle import (
    CrossValidationReport,
    FDSpec,
    cross_validate,
    fd_christoffel,
    fd_gradient,
    fd_hessian,
    fd_mean_curvature,
    fd_partial,
    fd_ricci,
    fd_tension,
)
from fbiharm.scenarios import build_scenario

SPEC = FDSpec(step=1e-3, levels=2)

PARABOLOID = {
    "source": {"chart": "euclidean", "dim": 2},
    "target": {"chart": "euclidean", "dim": 3},
    "components": ["x1", "x2", "x1^2 + x2^2"],
    "box": [[-0.5, 0.5], [-0.5, 0.5]],
}


# ============================================================
# Differences
# ============================================================


class TestPartials:
    def test_fourth_derivative_of_exp(self):
        value = fd_partial(lambda x: np.exp(x[0]), [0.3], (4,), SPEC)
        assert value == pytest.approx(math.exp(0.3), abs=1e-5)

    def test_second_derivative_of_cubic(self):
        value = fd_partial(lambda x: x[0] ** 3, [0.7], (2,), SPEC)
        assert value == pytest.approx(4.2, abs=1e-8)

    def test_mixed_partial(self):
        value = fd_partial(lambda x: np.exp(x[0] * x[1]), [0.3, 0.4], (1, 1), SPEC)
        assert value == pytest.approx((1.0 + 0.12) * math.exp(0.12), abs=1e-8)

    def test_order_zero_is_value(self):
        assert fd_partial(lambda x: x[0] + 2.0, [1.0], (0,), SPEC) == 3.0

    def test_array_evaluator(self):
        def fn(x):
            return np.array([np.sin(x[0]), x[0] * x[1]])

        np.testing.assert_allclose(fd_partial(fn, [0.2, 0.5], (1, 0), SPEC), [math.cos(0.2), 0.5], atol=1e-8)
        jac = fd_gradient(fn, [0.2, 0.5], SPEC)
        assert jac.shape == (2, 2)
        np.testing.assert_allclose(jac, [[math.cos(0.2), 0.0], [0.5, 0.2]], atol=1e-8)

    def test_hessian_is_symmetric(self):
        hess = fd_hessian(lambda x: x[0] ** 2 * x[1] + x[1] ** 3, [0.5, -1.0], SPEC)
        np.testing.assert_allclose(hess, [[-2.0, 1.0], [1.0, -6.0]], atol=1e-8)
        np.testing.assert_array_equal(hess, hess.T)

    def test_matches_jets_of_inversion(self):
        scenario = build_scenario("inversion")
        point = [0.7, 0.5, -0.4, 0.6]
        jets = seed_jets(point, 4, 2)
        component = scenario.map.components[1]
        u = eval_expression(component, jets)
        hess = fd_hessian(lambda x: component.evaluate(x), point, SPEC)
        eye = np.eye(4, dtype=int)
        for i in range(4):
            for j in range(4):
                assert hess[i, j] == pytest.approx(extract_partial(u, eye[i] + eye[j]), abs=1e-5)


class TestErrors:
    def test_evaluator_failure_is_wrapped(self):
        with pytest.raises(OracleError) as info:
            fd_partial(lambda x: math.log(x[0]), [0.0005], (1,), SPEC)
        assert info.value.point[0] < 0.0

    @pytest.mark.parametrize("alpha", [(5,), (1, 0), (-1,)])
    def test_bad_multi_index(self, alpha):
        with pytest.raises(InvalidArgumentError):
            fd_partial(lambda x: x[0], [0.0], alpha, SPEC)

    @pytest.mark.parametrize("kwargs", [{"step": 0.0}, {"levels": 0}, {"max_order": 5}])
    def test_spec_validation(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            FDSpec(**kwargs)

    def test_step_grows_with_order(self):
        assert SPEC.step_for(1) == pytest.approx(1e-3)
        assert SPEC.step_for(2) == pytest.approx(1e-2)
        assert SPEC.step_for(3) == pytest.approx(1e-1)
        assert SPEC.step_for(4) == pytest.approx(1e-1)


# ============================================================
# Geometry by differences
# ============================================================


class TestGeometryByDifferences:
    def test_sphere_christoffel(self):
        chart = sphere_chart(3)
        point = [0.2, -0.3, 0.1]
        np.testing.assert_allclose(fd_christoffel(chart, point, SPEC), christoffel(chart, point), atol=1e-8)

    def test_sphere_ricci(self):
        chart = sphere_chart(2, radius=1.5)
        point = [0.4, 0.2]
        np.testing.assert_allclose(fd_ricci(chart, point, SPEC), curvature_pack(chart, point).ricci, atol=1e-6)

    def test_cylinder_tension(self):
        scenario = build_scenario("cylinder")
        point = [2.0, 0.1, -0.5]
        np.testing.assert_allclose(fd_tension(scenario, point, SPEC), tension_field(scenario.map, point), atol=1e-7)

    def test_paraboloid_mean_curvature_matches_frame(self):
        smooth_map = build_scenario("custom", PARABOLOID).map
        point = [0.2, -0.1]
        value = fd_mean_curvature(smooth_map, point, SPEC)
        assert value == pytest.approx(frame_at(smooth_map, point).mean_curvature, rel=1e-7)
        assert fd_mean_curvature(smooth_map, point, SPEC, orientation=-1) == pytest.approx(-value, rel=1e-12)

    def test_small_hypersphere_mean_curvature(self):
        smooth_map = build_scenario("small_hypersphere", {"m": 3}).map
        assert abs(fd_mean_curvature(smooth_map, [0.2, -0.1, 0.3], SPEC)) == pytest.approx(1.0, rel=1e-7)

    def test_mean_curvature_needs_codimension_one(self):
        with pytest.raises(DimensionError):
            fd_mean_curvature(build_scenario("inversion").map, [1.0, 0.5, 0.0, 0.0], SPEC)


class TestCrossValidate:
    def test_flat_charts_agree_exactly(self):
        report = cross_validate(build_scenario("inversion"), ["christoffel", "ricci"], spec=SPEC)
        assert report.deviations == {"christoffel": 0.0, "ricci": 0.0}
        assert report.points == 1
        assert report.passed

    def test_small_hypersphere(self):
        scenario = build_scenario("small_hypersphere")
        report = cross_validate(scenario, ["ricci", "H-field"], [[0.1, 0.2], [-0.3, 0.4]], spec=SPEC)
        assert report.points == 2
        assert report.deviations["ricci"] <= 1e-5
        assert report.deviations["H-field"] <= 1e-5

    def test_paraboloid_mean_curvature(self):
        scenario = build_scenario("custom", PARABOLOID)
        report = cross_validate(scenario, ["H-field", "tension"], [[0.2, -0.1]], tol=1e-5, spec=SPEC)
        assert report.passed_for("H-field")
        assert report.passed_for("tension")

    def test_cylinder_tension(self):
        report = cross_validate(build_scenario("cylinder"), ["tension"], spec=SPEC)
        assert report.deviations["tension"] <= 1e-5

    def test_mean_curvature_skipped_for_non_hypersurfaces(self):
        report = cross_validate(build_scenario("inversion"), ["tension", "H-field"], spec=SPEC)
        assert report.skipped == ["H-field"]
        assert "H-field" not in report.deviations
        assert report.to_dict()["skipped"] == ["H-field"]

    def test_unknown_quantity(self):
        with pytest.raises(InvalidArgumentError):
            cross_validate(build_scenario("cylinder"), ["torsion"])

    def test_report_passes_against_tolerance(self):
        report = CrossValidationReport(tolerance=1e-5, deviations={"ricci": 2e-5, "tension": 1e-9})
        assert not report.passed
        assert report.passed_for("tension")
        assert report.max_deviation == 2e-5
