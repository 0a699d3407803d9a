"""Exception hierarchy for the verification engine.

Every failure the engine can report is a subclass of FbiharmError, which itself is a
ValueError so callers that only guard against bad values keep working.
"""

from typing import Sequence


def _fmt_point(point: Sequence[float] | None) -> str:
    if point is None:
        return "?"
    return "(" + ", ".join(f"{float(v):.6g}" for v in point) + ")"


class FbiharmError(ValueError):
    """Base class of all engine errors."""


class InvalidArgumentError(FbiharmError):
    """An argument violates an operation's precondition."""


class ExpressionSyntaxError(FbiharmError):
    """Expression text does not follow the grammar."""

    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        where = f" at position {position}" if position >= 0 else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class DomainError(FbiharmError):
    """An elementary function was applied outside its domain."""

    def __init__(self, function: str, value: float):
        self.function = function
        self.value = value
        super().__init__(f"{function} undefined at {value!r}")


class SingularEvaluationError(FbiharmError):
    """Division by a quantity whose value vanishes."""

    def __init__(self, message: str, point: Sequence[float] | None = None):
        self.point = None if point is None else tuple(float(v) for v in point)
        super().__init__(f"{message} at {_fmt_point(point)}" if point is not None else message)


class OrderExceededError(FbiharmError):
    """A derivative beyond the jet truncation order was requested."""


class DegenerateMetricError(FbiharmError):
    """The metric determinant is not safely positive."""

    def __init__(self, point: Sequence[float], determinant: float):
        self.point = tuple(float(v) for v in point)
        self.determinant = determinant
        super().__init__(f"degenerate metric at {_fmt_point(point)} (det={determinant:.3e})")


class OutOfDomainError(FbiharmError):
    """A point lies outside a chart's coordinate box."""

    def __init__(self, chart: str, point: Sequence[float]):
        self.chart = chart
        self.point = tuple(float(v) for v in point)
        super().__init__(f"point {_fmt_point(point)} outside domain of chart '{chart}'")


class TargetDomainEscapeError(FbiharmError):
    """The image φ(p) left the target chart's domain."""

    def __init__(self, point: Sequence[float], image: Sequence[float]):
        self.point = tuple(float(v) for v in point)
        self.image = tuple(float(v) for v in image)
        super().__init__(
            f"φ{_fmt_point(point)} = {_fmt_point(image)} escapes the target chart"
        )


class PositivityError(FbiharmError):
    """A field flagged positive is not positive at a point."""

    def __init__(self, name: str, point: Sequence[float], value: float):
        self.name = name
        self.point = tuple(float(v) for v in point)
        self.value = value
        super().__init__(f"{name} must be positive, got {value:.6g} at {_fmt_point(point)}")


class ImmersionDegenerateError(FbiharmError):
    """dφ lost rank at a point."""

    def __init__(self, point: Sequence[float], gram: float):
        self.point = tuple(float(v) for v in point)
        self.gram = gram
        super().__init__(f"dφ is rank deficient at {_fmt_point(point)} (gram det={gram:.3e})")


class DescriptorMismatchError(FbiharmError):
    """An ambient descriptor does not match the target's actual curvature."""


class DimensionError(FbiharmError):
    """Operand dimensions are incompatible with the operation."""


class ConfigError(FbiharmError):
    """A run configuration could not be parsed or validated."""

    def __init__(self, message: str, key: str | None = None, location: str | None = None):
        self.key = key
        self.location = location
        parts = [message]
        if key:
            parts.append(f"key '{key}'")
        if location:
            parts.append(f"at {location}")
        super().__init__(" | ".join(parts))


class UnknownScenarioError(FbiharmError):
    """The requested scenario is not in the catalogue."""


class OracleError(FbiharmError):
    """A value evaluator failed inside a finite-difference stencil."""

    def __init__(self, point: Sequence[float], cause: Exception):
        self.point = tuple(float(v) for v in point)
        super().__init__(f"evaluator failed at stencil point {_fmt_point(point)}: {cause}")


__all__ = [
    "FbiharmError",
    "InvalidArgumentError",
    "ExpressionSyntaxError",
    "DomainError",
    "SingularEvaluationError",
    "OrderExceededError",
    "DegenerateMetricError",
    "OutOfDomainError",
    "TargetDomainEscapeError",
    "PositivityError",
    "ImmersionDegenerateError",
    "DescriptorMismatchError",
    "DimensionError",
    "ConfigError",
    "UnknownScenarioError",
    "OracleError",
]
