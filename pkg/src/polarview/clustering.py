"""Density clustering of diagram points and the overview's cluster mark encodings."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyInputError, InvariantError, LabelMismatchError
from .geometry import DiagramKind, DiagramPoint, place
from .metrics import InfoMetrics, TaylorMetrics

#: Cluster mark radius range in pixels; area grows with member count.
MARK_RADIUS_MIN_PX = 6.0
MARK_RADIUS_MAX_PX = 18.0

#: Darkest..lightest gray level for cluster borders (0 = black).
SHADE_MAX = 220


@dataclass(frozen=True)
class ClusteringConfig:
    """DBSCAN parameters over coordinates normalized by the radial axis maximum."""

    eps: float = 0.1
    min_pts: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.eps) and self.eps > 0):
            raise InvariantError("eps must be finite and positive")
        if self.min_pts < 1:
            raise InvariantError("min_pts must be >= 1")


@dataclass(frozen=True)
class ClusterSummary:
    """One aggregated overview mark."""

    cluster_id: int
    member_ids: tuple[str, ...]
    centroid: DiagramPoint
    count: int
    shade: int
    mark_radius_px: float

    def __post_init__(self):
        if self.cluster_id < 1:
            raise InvariantError("cluster ids start at 1")
        if not self.member_ids:
            raise InvariantError("clusters cannot be empty")
        if self.count != len(self.member_ids):
            raise InvariantError("count must equal the number of member ids")
        if not 0 <= self.shade <= SHADE_MAX:
            raise InvariantError(f"shade must lie in [0, {SHADE_MAX}]")
        if self.mark_radius_px <= 0:
            raise InvariantError("mark radius must be positive")


def dbscan(points: list[tuple[float, float]], cfg: ClusteringConfig) -> list[int]:
    """Label each point with a 0-based cluster id under standard DBSCAN semantics.

    With min_pts = 1 the clusters are exactly the connected components of the
    eps-neighborhood graph. Noise points (possible only when min_pts > 1) are
    returned as singleton clusters. Points are visited in canonical sorted
    order, so labels do not depend on input iteration order.
    """
    n = len(points)
    if n == 0:
        raise EmptyInputError("dbscan needs at least one point")
    for p in points:
        if not (math.isfinite(p[0]) and math.isfinite(p[1])):
            raise InvariantError("dbscan points must be finite")

    order = sorted(range(n), key=lambda i: (points[i][0], points[i][1], i))
    eps2 = cfg.eps * cfg.eps

    def neighbors(i: int) -> list[int]:
        xi, yi = points[i]
        return [
            j
            for j in order
            if (points[j][0] - xi) ** 2 + (points[j][1] - yi) ** 2 <= eps2
        ]

    neighborhood = {i: neighbors(i) for i in order}
    core = {i for i in order if len(neighborhood[i]) >= cfg.min_pts}

    labels: list[int | None] = [None] * n
    next_label = 0
    for seed in order:
        if labels[seed] is not None or seed not in core:
            continue
        labels[seed] = next_label
        frontier = [seed]
        while frontier:
            current = frontier.pop(0)
            for j in neighborhood[current]:
                if labels[j] is None:
                    labels[j] = next_label
                    if j in core:
                        frontier.append(j)
        next_label += 1

    # Remaining points are noise: promote each to its own singleton cluster.
    for i in order:
        if labels[i] is None:
            labels[i] = next_label
            next_label += 1
    return [int(label) for label in labels]  # type: ignore[arg-type]


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def _centroid_metrics(kind: DiagramKind, members: list[DiagramPoint]):
    """Average the encoded measures and rebuild a consistent metric triple.

    The remaining fields are derived through the diagram identities so the
    centroid can be re-placed exactly like a model point.
    """
    metrics = [p.metrics for p in members]
    if kind is DiagramKind.TAYLOR:
        sigma_ref = metrics[0].sigma_ref
        sigma_model = _mean([m.sigma_model for m in metrics])
        correlation = _mean([m.correlation for m in metrics])
        crmse = math.sqrt(
            max(0.0, sigma_ref**2 + sigma_model**2 - 2.0 * sigma_ref * sigma_model * correlation)
        )
        return TaylorMetrics(sigma_ref, sigma_model, correlation, crmse)
    h_ref = metrics[0].h_ref
    h_model = _mean([m.h_model for m in metrics])
    if kind is DiagramKind.SMI:
        smi = _mean([m.smi for m in metrics])
        # Lesser root of I^2 - (h_ref+h_model) I + smi*h_ref*h_model = 0; it
        # never exceeds min(h_ref, h_model).
        s = h_ref + h_model
        mi = (s - math.sqrt(max(0.0, s * s - 4.0 * smi * h_ref * h_model))) / 2.0
    else:
        nmi = _mean([m.nmi for m in metrics])
        # Clamped by from_entropies if the averaged point is infeasible.
        mi = nmi * math.sqrt(h_ref * h_model)
    return InfoMetrics.from_entropies(h_ref, h_model, mi)


def summarize(
    kind: DiagramKind,
    points: list[DiagramPoint],
    labels: list[int],
    reference: DiagramPoint,
) -> list[ClusterSummary]:
    """Aggregate labeled points into overview cluster marks.

    Centroids are placed at the arithmetic mean of the members' encoded metric
    values; mark area grows with member count via a square-root radius law;
    border shade darkens toward the reference; ids are 1..K by ascending
    centroid distance to the reference.
    """
    if len(labels) != len(points):
        raise LabelMismatchError(
            f"{len(labels)} labels for {len(points)} points"
        )
    if not points:
        return []

    by_label: dict[int, list[DiagramPoint]] = {}
    for point, label in zip(points, labels):
        by_label.setdefault(label, []).append(point)

    count_max = max(len(members) for members in by_label.values())
    clusters = []
    for members in by_label.values():
        member_ids = tuple(sorted(p.model_id for p in members))
        centroid = place(kind, f"cluster:{member_ids[0]}", _centroid_metrics(kind, members))
        distance = centroid.distance_to(reference)
        clusters.append((distance, member_ids, centroid, len(members)))

    # one cluster makes the shade normalization degenerate: everything is nearest
    d_max = max(d for d, *_ in clusters) if len(clusters) > 1 else 0.0
    clusters.sort(key=lambda c: (c[0], c[1]))

    summaries = []
    for rank, (distance, member_ids, centroid, count) in enumerate(clusters, start=1):
        if count_max > 1:
            radius = MARK_RADIUS_MIN_PX + (MARK_RADIUS_MAX_PX - MARK_RADIUS_MIN_PX) * math.sqrt(
                (count - 1) / (count_max - 1)
            )
        else:
            radius = MARK_RADIUS_MIN_PX
        shade = int(SHADE_MAX * distance / d_max) if d_max > 0 else 0
        summaries.append(
            ClusterSummary(
                cluster_id=rank,
                member_ids=member_ids,
                centroid=DiagramPoint(
                    model_id=f"cluster-{rank}",
                    r=centroid.r,
                    theta=centroid.theta,
                    x=centroid.x,
                    y=centroid.y,
                    metrics=centroid.metrics,
                ),
                count=count,
                shade=shade,
                mark_radius_px=radius,
            )
        )
    return summaries
