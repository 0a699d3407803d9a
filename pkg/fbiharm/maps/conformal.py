"""Conformal change of a chart's metric."""

import logging

from ..errors import PositivityError
from ..geometry import MetricChart
from ..jets import Const, ExprNode
from .definitions import ScalarFieldDef

logger = logging.getLogger(__name__)

_ONE = Const(1.0)
_ZERO = Const(0.0)


def conformal_rescale(chart: MetricChart, lambda_sq: ScalarFieldDef | ExprNode) -> MetricChart:
    """
    Chart with metric λ²·g and the same domain.

    λ² is checked at the domain center when the domain is bounded, and again
    wherever the rescaled metric is evaluated.

    Args:
        chart: Chart to rescale.
        lambda_sq: Positive conformal factor λ².

    Raises:
        PositivityError: λ² is not positive at the domain center, or later at an
            evaluation point.
    """
    factor = lambda_sq.expression if isinstance(lambda_sq, ScalarFieldDef) else lambda_sq
    if factor == _ONE:
        return MetricChart(chart.name, chart.metric, chart.domain, chart.conformal_factors)
    if chart.domain.is_finite:
        center = chart.domain.center()
        value = factor.evaluate(center)
        if not value > 0.0:
            raise PositivityError("lambda^2", center, value)

    def scale(entry: ExprNode) -> ExprNode:
        return entry if entry == _ZERO else factor * entry

    metric = tuple(tuple(scale(e) for e in row) for row in chart.metric)
    logger.debug("rescaled chart %s by %s", chart.name, factor.to_text())
    return MetricChart(
        f"{chart.name}*[{factor.to_text()}]", metric, chart.domain, chart.conformal_factors + (factor,)
    )


__all__ = ["conformal_rescale"]
