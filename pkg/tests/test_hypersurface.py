"""
Hypersurface frame and residual system tests.

Closed forms: cylinders S¹(R) × ℝ^{m−1} ⊂ ℝ^{m+1}, the small hypersphere
S^m(1/√2) ⊂ S^{m+1} and the Clifford torus. A paraboloid supplies a surface
with nonconstant mean curvature for the identities between systems.
"""

import math

import numpy as np
import pytest

from fbiharm.errors import DescriptorMismatchError, DimensionError, ImmersionDegenerateError, InvalidArgumentError
from fbiharm.geometry import CoordinateBox, euclidean_chart
from fbiharm.hypersurface import (
    AmbientDescriptor,
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
from fbiharm.jets import Coord, parse_expression
from fbiharm.maps import ScalarFieldDef, SmoothMapDef, f_bitension_field, tension_field
from fbiharm.scenarios import build_scenario, sample_points


def paraboloid() -> SmoothMapDef:
    components = tuple(parse_expression(c, 2) for c in ("x1", "x2", "x1^2 + x2^2"))
    return SmoothMapDef(euclidean_chart(2), euclidean_chart(3), components, immersion=True, name="paraboloid")


PARABOLOID_POINT = [0.3, -0.2]
PARABOLOID_WEIGHT = ScalarFieldDef.parse("1 + x1^2 + 0.5*exp(x2)", 2)


def random_weights(dim: int, count: int, seed: int) -> list[ScalarFieldDef]:
    """Seeded positive weights a + b·sin(xi) + c·exp(−xj²) with a > b."""
    rng = np.random.default_rng(seed)
    weights = []
    for _ in range(count):
        a, b, c = rng.uniform(0.2, 1.0, size=3)
        i, j = rng.integers(1, dim + 1, size=2)
        text = f"{1.5 + a:.6f} + {b:.6f}*sin(x{i}) + {c:.6f}*exp(-x{j}^2)"
        weights.append(ScalarFieldDef.parse(text, dim))
    return weights


# ============================================================
# Frame
# ============================================================


class TestCylinderFrame:
    @pytest.mark.parametrize("m, radius", [(2, 1.0), (3, 1.0), (3, 2.0)])
    def test_principal_quantities(self, m, radius):
        scenario = build_scenario("cylinder", {"m": m, "R": radius})
        point = scenario.box.center()
        frame = frame_at(scenario.map, point)
        theta = point[0] / radius
        expected_normal = np.zeros(m + 1)
        expected_normal[:2] = [math.cos(theta), math.sin(theta)]

        np.testing.assert_allclose(frame.metric, np.eye(m), atol=1e-13)
        np.testing.assert_allclose(frame.normal, expected_normal, atol=1e-13)
        assert frame.mean_curvature == pytest.approx(-1.0 / (m * radius), rel=1e-12)
        assert frame.squared_norm == pytest.approx(1.0 / radius**2, rel=1e-12)
        assert frame.curvature_gap == pytest.approx(1.0 / radius**2, rel=1e-12)
        assert frame.ricci_normal == pytest.approx(0.0, abs=1e-14)

    def test_orientation_flips_normal_and_shape(self):
        scenario = build_scenario("cylinder", {"m": 3})
        point = [1.0, 0.2, -0.4]
        up = frame_at(scenario.map, point, orientation=1)
        down = frame_at(scenario.map, point, orientation=-1)
        np.testing.assert_allclose(down.normal, -up.normal, atol=1e-14)
        np.testing.assert_allclose(down.shape_operator, -up.shape_operator, atol=1e-13)
        assert down.mean_curvature == pytest.approx(-up.mean_curvature)
        assert down.squared_norm == pytest.approx(up.squared_norm)

    def test_bad_orientation(self):
        scenario = build_scenario("cylinder")
        with pytest.raises(InvalidArgumentError):
            frame_at(scenario.map, scenario.box.center(), orientation=2)

    def test_frame_dict(self):
        scenario = build_scenario("cylinder", {"m": 2})
        d = frame_at(scenario.map, scenario.box.center()).to_dict()
        assert d["orientation"] == 1
        assert d["mean_curvature"] == pytest.approx(-0.5)


class TestOtherFrames:
    @pytest.mark.parametrize("m", [2, 3])
    def test_small_hypersphere(self, m):
        scenario = build_scenario("small_hypersphere", {"m": m})
        frame = frame_at(scenario.map, [0.2] + [-0.1] * (m - 1))
        assert abs(frame.mean_curvature) == pytest.approx(1.0, rel=1e-10)
        assert frame.squared_norm == pytest.approx(float(m), rel=1e-10)
        assert frame.ricci_normal == pytest.approx(float(m), rel=1e-10)
        assert frame.curvature_gap == pytest.approx(0.0, abs=1e-9)

    def test_clifford_torus(self):
        scenario = build_scenario("clifford_torus")
        frame = frame_at(scenario.map, [1.2, 0.7])
        assert frame.mean_curvature == pytest.approx(0.0, abs=1e-11)
        assert frame.squared_norm == pytest.approx(2.0, rel=1e-10)

    @pytest.mark.parametrize("name", ["great_hypersphere", "clifford_torus"])
    def test_minimal_hypersurfaces_are_f_biharmonic_for_any_weight(self, name):
        scenario = build_scenario(name)
        dim = scenario.map.source_dim
        weights = random_weights(dim, 5, seed=29)
        for point in sample_points(scenario, 3, seed=17):
            assert np.linalg.norm(tension_field(scenario.map, point)) <= 1e-9
            for f in weights:
                assert np.linalg.norm(f_bitension_field(scenario.map, f, point)) <= 1e-9

    def test_great_hypersphere_is_totally_geodesic(self):
        scenario = build_scenario("great_hypersphere", {"m": 3})
        frame = frame_at(scenario.map, [0.1, 0.3, -0.2])
        np.testing.assert_allclose(frame.shape_operator, 0.0, atol=1e-12)

    def test_requires_codimension_one(self):
        with pytest.raises(DimensionError):
            frame_at(build_scenario("inversion").map, [1.0, 0.0, 0.0, 0.0])

    def test_rank_deficient_immersion(self):
        components = (Coord(0), Coord(0), parse_expression("0", 2))
        smooth_map = SmoothMapDef(euclidean_chart(2), euclidean_chart(3), components, immersion=True)
        with pytest.raises(ImmersionDegenerateError):
            frame_at(smooth_map, [0.2, 0.4])


# ============================================================
# Residual systems
# ============================================================


class TestWeightedSystem:
    @pytest.mark.parametrize("c1, c2", [(1.0, 0.0), (0.0, 1.0), (0.7, 2.0)])
    def test_cylinder_family_is_f_biharmonic(self, c1, c2):
        scenario = build_scenario("cylinder", {"m": 3, "R": 1.5, "C1": c1, "C2": c2})
        frame = frame_at(scenario.map, [2.0, 0.4, -0.3])
        pair = residual_fbh2(frame, scenario.f)
        assert pair.passed
        assert abs(pair.r1) <= 1e-10
        assert pair.r2_norm <= 1e-10

    @pytest.mark.parametrize("m, radius", [(2, 1.0), (3, 1.0), (4, 0.5)])
    def test_cylinder_with_unit_weight(self, m, radius):
        scenario = build_scenario("cylinder", {"m": m, "R": radius})
        frame = frame_at(scenario.map, scenario.box.center())
        pair = residual_fbh2(frame, ScalarFieldDef.constant(1.0))
        assert pair.r1 == pytest.approx(1.0 / (m * radius**3), rel=1e-10)
        assert pair.r2_norm == pytest.approx(0.0, abs=1e-12)
        assert not pair.r1_passed
        assert pair.r2_passed
        assert not pair.passed

    def test_orientation_gauge(self):
        frame_up = frame_at(paraboloid(), PARABOLOID_POINT, orientation=1)
        frame_down = frame_at(paraboloid(), PARABOLOID_POINT, orientation=-1)
        up = residual_fbh2(frame_up, PARABOLOID_WEIGHT)
        down = residual_fbh2(frame_down, PARABOLOID_WEIGHT)
        assert down.r1 == pytest.approx(-up.r1, rel=1e-10)
        np.testing.assert_allclose(down.r2, up.r2, rtol=1e-10, atol=1e-12)
        assert down.norm == pytest.approx(up.norm, rel=1e-10)

    @pytest.mark.parametrize(
        "name, params",
        [("cylinder", {"m": 2}), ("cylinder", {"m": 3}), ("small_hypersphere", {}), ("clifford_torus", {}), ("paraboloid", {})],
    )
    def test_unscaled_system_is_divided_by_weight(self, name, params):
        if name == "paraboloid":
            smooth_map, box = paraboloid(), CoordinateBox.cube(2, -1.0, 1.0)
        else:
            scenario = build_scenario(name, params)
            smooth_map, box = scenario.map, scenario.box
        weights = random_weights(smooth_map.source_dim, 5, seed=len(name) + smooth_map.source_dim)
        for point in sample_points(box, 4, seed=11):
            frame = frame_at(smooth_map, point)
            for f in weights:
                scaled = residual_fbh2(frame, f)
                unscaled = residual_fbh_unscaled(frame, f)
                weight = f.value(point)
                assert scaled.r1 == pytest.approx(weight * unscaled.r1, rel=1e-10, abs=1e-11)
                np.testing.assert_allclose(scaled.r2, weight * unscaled.r2, rtol=1e-10, atol=1e-11)

    def test_matches_map_level_field(self):
        """Normal part of τ₂,f is m·r₁ and its tangential part is −2m·r₂."""
        smooth_map = paraboloid()
        frame = frame_at(smooth_map, PARABOLOID_POINT)
        pair = residual_fbh2(frame, PARABOLOID_WEIGHT)
        field = f_bitension_field(smooth_map, PARABOLOID_WEIGHT, PARABOLOID_POINT, frame.bundle)
        m = frame.dimension
        dphi = frame.bundle.differential.value
        normal_part = frame.normal @ frame.image_metric @ field
        tangent_part = np.linalg.solve(frame.metric, dphi.T @ frame.image_metric @ field)
        assert normal_part == pytest.approx(m * pair.r1, rel=1e-9)
        np.testing.assert_allclose(tangent_part, -2.0 * m * pair.r2, rtol=1e-9, atol=1e-11)

    def test_paraboloid_is_not_f_biharmonic(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        assert residual_fbh2(frame, PARABOLOID_WEIGHT).norm >= 1e-3


class TestAmbientSystems:
    def test_flat_einstein_system_matches_general(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        general = residual_fbh2(frame, PARABOLOID_WEIGHT)
        einstein = residual_einstein(frame, PARABOLOID_WEIGHT, 0.0)
        spaceform = residual_spaceform(frame, PARABOLOID_WEIGHT, 0.0)
        assert einstein.r1 == pytest.approx(general.r1, rel=1e-12)
        assert spaceform.norm == pytest.approx(general.norm, rel=1e-12)

    def test_einstein_constant_must_match_target(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        with pytest.raises(DescriptorMismatchError):
            residual_einstein(frame, PARABOLOID_WEIGHT, 1.0)

    def test_einstein_tolerance_is_per_call(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        with pytest.raises(DescriptorMismatchError):
            residual_einstein(frame, PARABOLOID_WEIGHT, 1e-4)
        loose = residual_einstein(frame, PARABOLOID_WEIGHT, 1e-4, einstein_tolerance=1e-3)
        assert np.isfinite(loose.norm)
        with pytest.raises(DescriptorMismatchError):
            residual_spaceform(frame, PARABOLOID_WEIGHT, 1e-4)

    @pytest.mark.parametrize("m", [2, 3])
    def test_small_hypersphere_systems(self, m):
        scenario = build_scenario("small_hypersphere", {"m": m})
        frame = frame_at(scenario.map, [0.0] * m)
        assert residual_biharmonic(frame).passed
        assert residual_spaceform(frame, ScalarFieldDef.constant(1.0), 1.0).passed
        varying = residual_spaceform(frame, ScalarFieldDef.parse("2 + x1", m), 1.0)
        # r₂ = H·A grad f with |grad f|_g = 1/2 at the pole
        assert varying.r2_norm == pytest.approx(0.5, rel=1e-10)
        assert not varying.passed

    def test_biharmonic_system_on_cylinder(self):
        scenario = build_scenario("cylinder", {"m": 3})
        frame = frame_at(scenario.map, scenario.box.center())
        pair = residual_biharmonic(frame)
        assert pair.r1 == pytest.approx(1.0 / 3.0, rel=1e-10)
        assert pair.r2_norm == pytest.approx(0.0, abs=1e-12)

    def test_descriptor_constants(self):
        assert AmbientDescriptor.space_form(1.0).einstein_constant(4) == 3.0
        assert AmbientDescriptor.einstein(-2.0).einstein_constant(4) == -2.0
        assert AmbientDescriptor.general().einstein_constant(4) is None
        assert AmbientDescriptor.space_form(0.5).to_text() == "space_form(0.5)"
        with pytest.raises(InvalidArgumentError):
            AmbientDescriptor("ricci_flat", 0.0)


class TestConformalSystems:
    LAMBDA_SQ = ScalarFieldDef.parse("2 + x1*x2", 2, name="lambda^2")

    def test_conformal_system_is_weighted_system(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        conformal = residual_conformal_immersion(frame, self.LAMBDA_SQ)
        weighted = residual_fbh2(frame, self.LAMBDA_SQ)
        assert conformal.r1 == pytest.approx(weighted.r1, rel=1e-12)
        np.testing.assert_allclose(conformal.r2, weighted.r2, rtol=1e-12, atol=1e-14)

    def test_unscaled_conformal_system(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        conformal = residual_conformal_immersion(frame, self.LAMBDA_SQ)
        unscaled = residual_conformal_unscaled(frame, self.LAMBDA_SQ)
        factor = self.LAMBDA_SQ.value(PARABOLOID_POINT)
        assert conformal.r1 == pytest.approx(factor * unscaled.r1, rel=1e-10)
        np.testing.assert_allclose(conformal.r2, factor * unscaled.r2, rtol=1e-10, atol=1e-12)

    def test_flat_space_form_system(self):
        frame = frame_at(paraboloid(), PARABOLOID_POINT)
        spaceform = residual_conformal_spaceform(frame, self.LAMBDA_SQ, 0.0)
        conformal = residual_conformal_immersion(frame, self.LAMBDA_SQ)
        assert spaceform.norm == pytest.approx(conformal.norm, rel=1e-12)

    def test_surfaces_only(self):
        scenario = build_scenario("cylinder", {"m": 3})
        frame = frame_at(scenario.map, scenario.box.center())
        with pytest.raises(DimensionError):
            residual_conformal_immersion(frame, scenario.f)
        with pytest.raises(DimensionError):
            residual_conformal_unscaled(frame, scenario.f)


class TestPseudoUmbilical:
    @pytest.mark.parametrize("m, radius", [(2, 1.0), (3, 1.0), (3, 2.0)])
    def test_cylinder_defect(self, m, radius):
        scenario = build_scenario("cylinder", {"m": m, "R": radius})
        frame = frame_at(scenario.map, scenario.box.center())
        expected = (m - 1) / (m * m * radius * radius)
        assert pseudo_umbilical_defect(frame) == pytest.approx(expected, rel=1e-10)

    def test_small_hypersphere_is_umbilical(self):
        scenario = build_scenario("small_hypersphere", {"m": 3})
        frame = frame_at(scenario.map, [0.1, 0.2, 0.3])
        assert pseudo_umbilical_defect(frame) == pytest.approx(0.0, abs=1e-9)
