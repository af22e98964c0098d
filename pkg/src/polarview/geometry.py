"""Placement of metric triples into polar diagram coordinates.

Each diagram kind realizes the cosine relation c^2 = a^2 + b^2 - 2ab cos(theta)
with its own (a, b, cos theta) triple, so the Euclidean distance between a
model point and the reference point equals the diagram's distance measure
(CRMSE, VI, or RVI).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import FlavorMismatchError, InvariantError
from .metrics import InfoMetrics, MetricTriple, TaylorMetrics, cartesian_from_polar


class DiagramKind(str, Enum):
    TAYLOR = "taylor"
    SMI = "smi"
    NMI = "nmi"


@dataclass(frozen=True)
class DiagramPoint:
    """Polar position of one model plus its Cartesian projection."""

    model_id: str
    r: float
    theta: float
    x: float
    y: float
    metrics: MetricTriple | None = None

    def __post_init__(self):
        if self.r < 0:
            raise InvariantError("diagram radius must be non-negative")
        if not 0.0 <= self.theta <= math.pi:
            raise InvariantError(f"theta {self.theta} outside [0, pi]")
        ex, ey = cartesian_from_polar(self.r, self.theta)
        if (self.x, self.y) != (ex, ey):
            raise InvariantError("(x, y) must be the Cartesian projection of (r, theta)")

    def distance_to(self, other: "DiagramPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def _require_flavor(kind: DiagramKind, metrics: MetricTriple) -> None:
    if kind is DiagramKind.TAYLOR and not isinstance(metrics, TaylorMetrics):
        raise FlavorMismatchError("Taylor diagrams need TaylorMetrics")
    if kind in (DiagramKind.SMI, DiagramKind.NMI) and not isinstance(metrics, InfoMetrics):
        raise FlavorMismatchError(f"{kind.value} diagrams need InfoMetrics")


def _polar_position(kind: DiagramKind, metrics: MetricTriple) -> tuple[float, float]:
    if kind is DiagramKind.TAYLOR:
        return metrics.sigma_model, math.acos(metrics.correlation)
    if metrics.degenerate:
        # Zero marginal entropy: park the mark on the vertical axis at the origin.
        return 0.0, math.pi / 2.0
    if kind is DiagramKind.SMI:
        return metrics.h_model, math.acos(2.0 * metrics.smi - 1.0)
    return math.sqrt(metrics.h_model), math.acos(metrics.nmi)


def place(kind: DiagramKind, model_id: str, metrics: MetricTriple) -> DiagramPoint:
    """Place one model into diagram space for the given kind."""
    _require_flavor(kind, metrics)
    r, theta = _polar_position(kind, metrics)
    x, y = cartesian_from_polar(r, theta)
    return DiagramPoint(model_id=model_id, r=r, theta=theta, x=x, y=y, metrics=metrics)


def reference_radius(kind: DiagramKind, metrics: MetricTriple) -> float:
    _require_flavor(kind, metrics)
    if kind is DiagramKind.TAYLOR:
        return metrics.sigma_ref
    if kind is DiagramKind.SMI:
        return metrics.h_ref
    return math.sqrt(metrics.h_ref)


def reference_point(
    kind: DiagramKind, metrics: MetricTriple, model_id: str = "reference"
) -> DiagramPoint:
    """The reference mark: anchored on the radial axis at theta = 0."""
    r = reference_radius(kind, metrics)
    return DiagramPoint(model_id=model_id, r=r, theta=0.0, x=r, y=0.0, metrics=metrics)


def distance_measure(kind: DiagramKind, metrics: MetricTriple) -> float:
    """The measure that equals |model - reference| in diagram space."""
    _require_flavor(kind, metrics)
    if kind is DiagramKind.TAYLOR:
        return metrics.crmse
    if kind is DiagramKind.SMI:
        return metrics.vi
    return metrics.rvi
