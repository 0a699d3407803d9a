"""Named scenarios: maps, weights, sample boxes and the results each check should give."""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping

from ..errors import InvalidArgumentError, UnknownScenarioError
from ..geometry import CoordinateBox, MetricChart, euclidean_chart, hyperbolic_chart, sphere_chart
from ..hypersurface import AMBIENT_KINDS, AmbientDescriptor
from ..jets import Coord, parse_expression, sin
from ..maps import ScalarFieldDef, SmoothMapDef
from .constructions import (
    clifford_torus_components,
    clifford_torus_domain,
    cylinder_components,
    cylinder_f_family,
    great_hypersphere_components,
    inversion_components,
    inversion_f,
    small_hypersphere_components,
    stereographic_box,
)

logger = logging.getLogger(__name__)

MAP_CHECKS = ("tension", "bitension", "f_bitension")
HYPERSURFACE_CHECKS = (
    "fbh2",
    "fbh",
    "einstein",
    "spaceform",
    "bhs",
    "conformal_immersion",
    "conformal_spaceform",
    "conformal_unscaled",
    "pseudo_umbilical",
    "mean_curvature",
    "squared_shape",
    "curvature_gap",
)
CHECK_NAMES = MAP_CHECKS + HYPERSURFACE_CHECKS + ("cross_validate",)
EXPECTATION_KINDS = ("zero", "nonzero", "value")


@dataclass(frozen=True)
class Expectation:
    """What a check should report: zero, nonzero, or a specific value."""

    check: str
    kind: str = "zero"
    value: float | None = None

    def __post_init__(self):
        if self.check not in CHECK_NAMES:
            raise InvalidArgumentError(f"unknown check '{self.check}'")
        if self.kind not in EXPECTATION_KINDS:
            raise InvalidArgumentError(f"unknown expectation kind '{self.kind}'")
        if (self.kind == "value") != (self.value is not None):
            raise InvalidArgumentError("a value expectation needs exactly one value")

    def to_text(self) -> str:
        return f"value({self.value:.17g})" if self.kind == "value" else self.kind


def parse_expectation(check: str, raw: Any) -> Expectation:
    """
    Read an expectation written as "zero", "nonzero", a number or {value: v}.

    Raises:
        InvalidArgumentError: Unknown check or unreadable expectation.
    """
    if isinstance(raw, Mapping) and set(raw) == {"value"}:
        raw = raw["value"]
    if isinstance(raw, str) and raw in ("zero", "nonzero"):
        return Expectation(check, raw)
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return Expectation(check, "value", float(raw))
    raise InvalidArgumentError(f"cannot read expectation {raw!r} for check '{check}'")


@dataclass(frozen=True)
class Scenario:
    """
    A fully built example ready for the grid runner.

    Args:
        name: Catalogue name.
        params: Parameters the scenario was built with (defaults filled).
        map: The map φ.
        f: Positive weight for f-biharmonic checks.
        ambient: Curvature descriptor of the target.
        box: Sample box, strictly inside both chart domains.
        expected: Expectations per check.
        lambda_sq: Conformal factor for the surface conformal-immersion checks.
        description: One-line summary.
    """

    name: str
    params: Mapping[str, Any]
    map: SmoothMapDef
    f: ScalarFieldDef
    ambient: AmbientDescriptor
    box: CoordinateBox
    expected: tuple[Expectation, ...] = ()
    lambda_sq: ScalarFieldDef | None = None
    description: str = ""

    def __post_init__(self):
        if self.box.dim != self.map.source_dim:
            raise InvalidArgumentError(f"scenario '{self.name}': sample box has wrong dimension")
        if not self.box.is_finite:
            raise InvalidArgumentError(f"scenario '{self.name}': sample box must be bounded")
        if not self.map.source.domain.encloses(self.box):
            raise InvalidArgumentError(
                f"scenario '{self.name}': sample box leaves the domain of chart '{self.map.source.name}'"
            )

    def expectation(self, check: str) -> Expectation | None:
        for item in self.expected:
            if item.check == check:
                return item
        return None

    def conformal_factor(self) -> ScalarFieldDef:
        return self.lambda_sq if self.lambda_sq is not None else self.f

    def with_f(self, f: ScalarFieldDef) -> "Scenario":
        """Swap the weight; a conformal factor that was the weight follows it."""
        lambda_sq = f if self.lambda_sq is self.f else self.lambda_sq
        return replace(self, f=f, lambda_sq=lambda_sq)

    def with_expectations(self, overrides: Mapping[str, Expectation]) -> "Scenario":
        """Replace or add expectations check by check."""
        kept = tuple(e for e in self.expected if e.check not in overrides)
        return replace(self, expected=kept + tuple(overrides.values()))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "source_chart": self.map.source.name,
            "target_chart": self.map.target.name,
            "dimensions": [self.map.source_dim, self.map.target_dim],
            "f": self.f.to_text(),
            "ambient": self.ambient.to_text(),
            "box": {"lower": list(self.box.lower), "upper": list(self.box.upper)},
        }


# -- parameter handling -----------------------------------------------------


def _resolve_params(name: str, defaults: Mapping[str, Any], params: Mapping[str, Any] | None) -> dict:
    given = dict(params or {})
    unknown = sorted(set(given) - set(defaults))
    if unknown:
        raise InvalidArgumentError(f"scenario '{name}' does not take parameter(s) {unknown}")
    merged = dict(defaults)
    merged.update(given)
    return merged


def _dimension(params: Mapping[str, Any], key: str = "m") -> int:
    value = params[key]
    if isinstance(value, bool) or int(value) != value or value < 2:
        raise InvalidArgumentError(f"{key} must be an integer ≥ 2, got {value!r}")
    return int(value)


def _positive(params: Mapping[str, Any], key: str) -> float:
    value = float(params[key])
    if not value > 0:
        raise InvalidArgumentError(f"{key} must be positive, got {value!r}")
    return value


def _expect(**kinds) -> tuple[Expectation, ...]:
    out = []
    for check, raw in kinds.items():
        out.append(parse_expectation(check, raw))
    return tuple(out)


def _surface_conformal(m: int, kind: str) -> dict:
    if m != 2:
        return {}
    return {"conformal_immersion": kind, "conformal_spaceform": kind, "conformal_unscaled": kind}


# -- built-in scenarios -----------------------------------------------------


def _cylinder(params: dict) -> Scenario:
    m = _dimension(params)
    radius = _positive(params, "R")
    c1, c2 = float(params["C1"]), float(params["C2"])
    if c1 < 0 or c2 < 0 or c1 + c2 <= 0:
        raise InvalidArgumentError("C1 and C2 must be nonnegative and not both zero")
    source = euclidean_chart(m, name=f"cylinder-domain{m}")
    target = euclidean_chart(m + 1)
    smooth_map = SmoothMapDef(source, target, cylinder_components(m, radius), immersion=True, name="cylinder")
    f = ScalarFieldDef(cylinder_f_family(radius, c1, c2))
    box = CoordinateBox((0.1,) + (-1.0,) * (m - 1), (5.9,) + (1.0,) * (m - 1))
    expected = _expect(
        tension=1.0 / radius,
        bitension="nonzero",
        f_bitension="zero",
        fbh2="zero",
        fbh="zero",
        einstein="zero",
        spaceform="zero",
        bhs="nonzero",
        pseudo_umbilical=(m - 1) / (m * m * radius * radius),
        mean_curvature=-1.0 / (m * radius),
        squared_shape=1.0 / radius**2,
        curvature_gap=1.0 / radius**2,
        **_surface_conformal(m, "zero"),
    )
    return Scenario(
        "cylinder", params, smooth_map, f, AmbientDescriptor.space_form(0.0), box, expected, f,
        "S¹(R) × ℝ^{m−1} in ℝ^{m+1}, f-biharmonic for f = C₁e^{x₁/R} + C₂e^{−x₁/R}",
    )


def _small_hypersphere(params: dict) -> Scenario:
    m = _dimension(params)
    source = sphere_chart(m, radius=2.0**-0.5)
    target = sphere_chart(m + 1)
    smooth_map = SmoothMapDef(source, target, small_hypersphere_components(m), immersion=True, name="small_hypersphere")
    f = ScalarFieldDef.constant(1.0)
    lambda_sq = ScalarFieldDef(2.0 + Coord(0), name="lambda^2")
    expected = _expect(
        tension=float(m),
        bitension="zero",
        f_bitension="zero",
        fbh2="zero",
        fbh="zero",
        einstein="zero",
        spaceform="zero",
        bhs="zero",
        pseudo_umbilical="zero",
        squared_shape=float(m),
        curvature_gap=0.0,
        **_surface_conformal(m, "nonzero"),
    )
    return Scenario(
        "small_hypersphere", params, smooth_map, f, AmbientDescriptor.space_form(1.0),
        stereographic_box(m), expected, lambda_sq,
        "S^m(1/√2) in S^{m+1}: proper biharmonic, f-biharmonic only for constant f",
    )


def _great_hypersphere(params: dict) -> Scenario:
    m = _dimension(params)
    source = sphere_chart(m)
    target = sphere_chart(m + 1)
    smooth_map = SmoothMapDef(source, target, great_hypersphere_components(m), immersion=True, name="great_hypersphere")
    f = ScalarFieldDef(2.0 + sin(Coord(0)))
    expected = _expect(
        tension="zero",
        bitension="zero",
        f_bitension="zero",
        fbh2="zero",
        fbh="zero",
        einstein="zero",
        spaceform="zero",
        bhs="zero",
        pseudo_umbilical="zero",
        mean_curvature=0.0,
        squared_shape=0.0,
        **_surface_conformal(m, "zero"),
    )
    return Scenario(
        "great_hypersphere", params, smooth_map, f, AmbientDescriptor.space_form(1.0),
        stereographic_box(m), expected, f,
        "equator S^m in S^{m+1}: minimal, hence f-biharmonic for every f",
    )


def _clifford_torus(params: dict) -> Scenario:
    smooth_map = SmoothMapDef(
        clifford_torus_domain(), sphere_chart(3), clifford_torus_components(), immersion=True, name="clifford_torus"
    )
    f = ScalarFieldDef(2.0 + sin(Coord(0)))
    expected = _expect(
        tension="zero",
        bitension="zero",
        f_bitension="zero",
        fbh2="zero",
        fbh="zero",
        einstein="zero",
        spaceform="zero",
        bhs="zero",
        pseudo_umbilical="zero",
        mean_curvature=0.0,
        squared_shape=2.0,
        curvature_gap=0.0,
        **_surface_conformal(2, "zero"),
    )
    return Scenario(
        "clifford_torus", params, smooth_map, f, AmbientDescriptor.space_form(1.0),
        CoordinateBox.cube(2, 0.1, 3.0), expected, f,
        "minimal Clifford torus in S³ with |A|² = 2",
    )


def _inversion(params: dict) -> Scenario:
    dim = 4
    source = euclidean_chart(dim, name="annulus")
    smooth_map = SmoothMapDef(source, euclidean_chart(dim), inversion_components(dim), name="inversion")
    f = ScalarFieldDef(inversion_f(dim))
    expected = _expect(tension="nonzero", bitension="zero", f_bitension="zero")
    return Scenario(
        "inversion", params, smooth_map, f, AmbientDescriptor.general(),
        CoordinateBox.cube(dim, 0.4, 1.2), expected, None,
        "x ↦ x/|x|² on ℝ⁴ minus a ball: biharmonic and f-biharmonic for f = |x|⁴",
    )


# -- custom scenarios -------------------------------------------------------


def _box_from(raw, dim: int, what: str) -> CoordinateBox:
    try:
        sides = [tuple(float(v) for v in side) for side in raw]
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{what} must be a list of [lower, upper] pairs") from exc
    if len(sides) != dim or any(len(s) != 2 for s in sides):
        raise InvalidArgumentError(f"{what} needs {dim} [lower, upper] pairs")
    return CoordinateBox(tuple(s[0] for s in sides), tuple(s[1] for s in sides))


def _chart_from(raw: Mapping[str, Any], role: str) -> MetricChart:
    if not isinstance(raw, Mapping):
        raise InvalidArgumentError(f"{role} chart must be a mapping")
    kind = raw.get("chart", "metric" if "metric" in raw else "euclidean")
    metric = raw.get("metric")
    dim = raw.get("dim", len(metric) if metric else None)
    if dim is None:
        raise InvalidArgumentError(f"{role} chart needs 'dim' or 'metric'")
    dim = int(dim)
    domain = _box_from(raw["domain"], dim, f"{role} domain") if "domain" in raw else None
    name = raw.get("name", f"{role}-{kind}")
    if kind == "euclidean":
        return euclidean_chart(dim, domain, name)
    if kind == "sphere":
        return sphere_chart(dim, float(raw.get("radius", 1.0)), domain, name)
    if kind == "hyperbolic":
        return hyperbolic_chart(dim, domain, name)
    if kind == "metric":
        if not metric or len(metric) != dim:
            raise InvalidArgumentError(f"{role} metric must be a {dim}×{dim} matrix")
        entries = tuple(tuple(parse_expression(str(e), dim) for e in row) for row in metric)
        return MetricChart(name, entries, domain)
    raise InvalidArgumentError(f"unknown {role} chart kind '{kind}'")


def _ambient_from(raw) -> AmbientDescriptor:
    if raw is None:
        return AmbientDescriptor.general()
    if isinstance(raw, str):
        return AmbientDescriptor(raw, 0.0)
    if isinstance(raw, Mapping):
        kind = raw.get("kind", "general")
        if kind not in AMBIENT_KINDS:
            raise InvalidArgumentError(f"unknown ambient kind '{kind}'")
        return AmbientDescriptor(kind, float(raw.get("value", 0.0)))
    raise InvalidArgumentError(f"cannot read ambient descriptor {raw!r}")


def _custom(params: dict) -> Scenario:
    for key in ("source", "target", "components", "box"):
        if params.get(key) is None:
            raise InvalidArgumentError(f"custom scenario needs '{key}'")
    source = _chart_from(params["source"], "source")
    target = _chart_from(params["target"], "target")
    components = tuple(parse_expression(str(c), source.dim) for c in params["components"])
    immersion = params["immersion"]
    if immersion is None:
        immersion = target.dim == source.dim + 1
    smooth_map = SmoothMapDef(source, target, components, immersion=bool(immersion), name="custom")
    f = ScalarFieldDef.parse(str(params["f"]), source.dim) if params["f"] is not None else ScalarFieldDef.constant(1.0)
    lambda_sq = (
        ScalarFieldDef.parse(str(params["lambda_sq"]), source.dim, name="lambda^2")
        if params["lambda_sq"] is not None
        else None
    )
    expected = tuple(parse_expectation(check, raw) for check, raw in (params["expect"] or {}).items())
    return Scenario(
        "custom", params, smooth_map, f, _ambient_from(params["ambient"]),
        _box_from(params["box"], source.dim, "box"), expected, lambda_sq,
        "charts, map and weight read from configuration",
    )


@dataclass(frozen=True)
class CatalogueEntry:
    builder: Callable[[dict], Scenario]
    defaults: Mapping[str, Any] = field(default_factory=dict)
    description: str = ""


CATALOGUE: dict[str, CatalogueEntry] = {
    "cylinder": CatalogueEntry(
        _cylinder, {"m": 3, "R": 1.0, "C1": 1.0, "C2": 0.0}, "S¹(R) × ℝ^{m−1} ⊂ ℝ^{m+1} with f = C₁e^{x₁/R} + C₂e^{−x₁/R}"
    ),
    "small_hypersphere": CatalogueEntry(_small_hypersphere, {"m": 2}, "S^m(1/√2) ⊂ S^{m+1}"),
    "great_hypersphere": CatalogueEntry(_great_hypersphere, {"m": 2}, "equator S^m ⊂ S^{m+1}"),
    "clifford_torus": CatalogueEntry(_clifford_torus, {}, "Clifford torus ⊂ S³"),
    "inversion": CatalogueEntry(_inversion, {}, "x ↦ x/|x|² on an annulus of ℝ⁴ with f = |x|⁴"),
    "custom": CatalogueEntry(
        _custom,
        {
            "source": None,
            "target": None,
            "components": None,
            "box": None,
            "f": None,
            "lambda_sq": None,
            "ambient": None,
            "immersion": None,
            "expect": None,
        },
        "map, charts and weight given as expressions",
    ),
}


def build_scenario(name: str, params: Mapping[str, Any] | None = None) -> Scenario:
    """
    Build a catalogue scenario.

    Args:
        name: Catalogue name (see list_scenarios()).
        params: Parameter overrides; missing keys take the catalogue defaults.

    Raises:
        UnknownScenarioError: name is not in the catalogue.
        InvalidArgumentError: A parameter is unknown or out of range.
    """
    entry = CATALOGUE.get(name)
    if entry is None:
        raise UnknownScenarioError(f"unknown scenario '{name}', available: {sorted(CATALOGUE)}")
    resolved = _resolve_params(name, entry.defaults, params)
    scenario = entry.builder(resolved)
    logger.debug("built scenario %s with %s", name, resolved)
    return scenario


def list_scenarios() -> list[dict]:
    return [
        {"name": name, "params": dict(entry.defaults), "description": entry.description}
        for name, entry in CATALOGUE.items()
    ]


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
]
