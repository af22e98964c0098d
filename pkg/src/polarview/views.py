"""Assembly of diagram views and the pure transformations driving interaction.

A ViewBundle is the complete interactive state of an overview+detail pairing:
the full point set plus the recorded brush, hidden ids, and selection. The
overview, detail, and linking views are derived from it on demand, so any
action sequence stays replayable and RESET restores the initial state exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .clustering import ClusteringConfig, ClusterSummary, dbscan, summarize
from .errors import (
    InvalidIntervalError,
    InvalidRectError,
    InvariantError,
    ModelCapExceededError,
    TooFewModelsError,
    TooFewVersionsError,
    UnknownModelIdError,
    VersionMismatchError,
)
from .geometry import DiagramKind, DiagramPoint, place, reference_point
from .metrics import BinningConfig, info_metrics, taylor_metrics

#: Hard display cap inherited from the color-channel encoding: reference + 20.
MODEL_CAP = 20

#: Small-multiples grids wider than 3 rows get a warning.
GRID_ROWS_RECOMMENDED = 3

#: Default render geometry used when populating occlusion warnings.
DEFAULT_MARK_RADIUS_PX = 7.0
DETAIL_PLOT_RADIUS_PX = 420.0

#: Two marks closer than this multiple of their radius occlude each other.
OCCLUSION_FACTOR = 1.6


class ViewRole(str, Enum):
    OVERVIEW = "overview"
    DETAIL = "detail"
    GRID_CELL = "grid_cell"


class WarningCode(str, Enum):
    OCCLUSION = "occlusion"
    MODEL_CAP = "model_cap"
    GRID_SIZE = "grid_size"
    DEGENERATE_ENTROPY = "degenerate_entropy"


@dataclass(frozen=True)
class ViewWarning:
    code: WarningCode
    affected_ids: tuple[str, ...]
    message: str

    def __post_init__(self):
        if self.code is WarningCode.OCCLUSION and not self.affected_ids:
            raise InvariantError("occlusion warnings must name the affected marks")


@dataclass(frozen=True)
class DiagramView:
    """Complete renderable state of one view."""

    kind: DiagramKind
    role: ViewRole
    points: tuple[DiagramPoint, ...]
    reference: DiagramPoint
    radial_max: float
    theta_max: float
    clusters: tuple[ClusterSummary, ...] = ()
    brush: tuple[float, float] | None = None
    selection: frozenset[str] = frozenset()
    warnings: tuple[ViewWarning, ...] = ()

    def __post_init__(self):
        if not self.radial_max > 0:
            raise InvariantError("radial_max must be positive")
        if self.brush is not None:
            r0, r1 = self.brush
            if not 0.0 <= r0 <= r1 <= self.radial_max:
                raise InvariantError("brush interval must satisfy 0 <= r0 <= r1 <= radial_max")
        ids = {p.model_id for p in self.points}
        if not self.selection <= ids:
            raise InvariantError("selection must reference models present in the view")


@dataclass(frozen=True)
class LinkingAxis:
    label: str
    entries: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class LinkingAxes:
    """Three stacked 1-D projections of the measures encoded in the detail view."""

    axes: tuple[LinkingAxis, LinkingAxis, LinkingAxis]
    highlighted: frozenset[str] = frozenset()


@dataclass(frozen=True)
class GridCell:
    annotation: str
    view: DiagramView
    pairs: tuple[tuple[str, DiagramPoint, DiagramPoint], ...]


@dataclass(frozen=True)
class GridLayout:
    """Small-multiples sheet: one cell per consecutive version pair."""

    kind: DiagramKind
    rows: int
    cols: int
    cells: tuple[GridCell, ...]
    model_ids: tuple[str, ...]
    radial_max: float
    theta_max: float
    warnings: tuple[ViewWarning, ...] = ()

    def __post_init__(self):
        if self.cols != 3:
            raise InvariantError("grid layouts are fixed at 3 columns")
        if self.rows != -(-len(self.cells) // 3):
            raise InvariantError("rows must equal ceil(cells / 3)")


class LegendActionKind(str, Enum):
    SINGLE_CLICK = "single_click"
    DOUBLE_CLICK = "double_click"
    RESET = "reset"


@dataclass(frozen=True)
class LegendAction:
    kind: LegendActionKind
    model_id: str | None = None


_LINKING_LABELS = {
    DiagramKind.TAYLOR: ("standard deviation", "correlation", "CRMSE"),
    DiagramKind.SMI: (
        "entropy",
        "scaled mutual information",
        "variation of information",
    ),
    DiagramKind.NMI: (
        "root entropy",
        "normalized mutual information",
        "root variation of information",
    ),
}


def linking_values(kind: DiagramKind, metrics) -> tuple[float, float, float]:
    """The triple a model contributes to the linking axes, exactly as encoded."""
    if kind is DiagramKind.TAYLOR:
        return metrics.sigma_model, metrics.correlation, metrics.crmse
    if kind is DiagramKind.SMI:
        return metrics.h_model, metrics.smi, metrics.vi
    return math.sqrt(metrics.h_model), metrics.nmi, metrics.rvi


@dataclass(frozen=True)
class ViewBundle:
    """Interactive state from which overview, detail, and linking derive."""

    kind: DiagramKind
    all_points: tuple[DiagramPoint, ...]
    reference: DiagramPoint
    clusters: tuple[ClusterSummary, ...]
    radial_max: float
    theta_max: float
    static_warnings: tuple[ViewWarning, ...] = ()
    brush: tuple[float, float] | None = None
    hidden: frozenset[str] = frozenset()
    selection: frozenset[str] = frozenset()
    dataset_id: str | None = None

    @property
    def model_ids(self) -> tuple[str, ...]:
        return tuple(p.model_id for p in self.all_points)

    def visible_points(self) -> tuple[DiagramPoint, ...]:
        return tuple(p for p in self.all_points if p.model_id not in self.hidden)

    def detail_points(self) -> tuple[DiagramPoint, ...]:
        points = self.visible_points()
        if self.brush is not None:
            r0, r1 = self.brush
            points = tuple(p for p in points if r0 <= p.r <= r1)
        return points

    def overview(self) -> DiagramView:
        return DiagramView(
            kind=self.kind,
            role=ViewRole.OVERVIEW,
            points=self.all_points,
            reference=self.reference,
            radial_max=self.radial_max,
            theta_max=self.theta_max,
            clusters=self.clusters,
            brush=self.brush,
            selection=self.selection,
        )

    def detail(self) -> DiagramView:
        points = self.detail_points()
        warnings = detect_occlusion_points(
            points, DEFAULT_MARK_RADIUS_PX, DETAIL_PLOT_RADIUS_PX / self.radial_max
        )
        return DiagramView(
            kind=self.kind,
            role=ViewRole.DETAIL,
            points=points,
            reference=self.reference,
            radial_max=self.radial_max,
            theta_max=self.theta_max,
            brush=self.brush,
            selection=self.selection & {p.model_id for p in points},
            warnings=tuple(warnings),
        )

    def linking(self) -> LinkingAxes:
        labels = _LINKING_LABELS[self.kind]
        visible = self.visible_points()
        columns: list[list[tuple[str, float]]] = [[], [], []]
        for point in visible:
            values = linking_values(self.kind, point.metrics)
            for axis, value in zip(columns, values):
                axis.append((point.model_id, value))
        return LinkingAxes(
            axes=tuple(
                LinkingAxis(label=label, entries=tuple(column))
                for label, column in zip(labels, columns)
            ),
            highlighted=self.selection & {p.model_id for p in visible},
        )

    def warnings(self) -> tuple[ViewWarning, ...]:
        return self.static_warnings + self.detail().warnings


def _cluster_of(bundle: ViewBundle, model_id: str) -> ClusterSummary | None:
    for cluster in bundle.clusters:
        if model_id in cluster.member_ids:
            return cluster
    return None


def build_views(
    dataset,
    kind: DiagramKind,
    clustering_cfg: ClusteringConfig | None = None,
    binning_cfg: BinningConfig | None = None,
) -> ViewBundle:
    """Compute metrics for every model and assemble the overview+detail state."""
    clustering_cfg = clustering_cfg or ClusteringConfig()
    binning_cfg = binning_cfg or BinningConfig()

    models = dataset.models()
    if not models:
        raise TooFewModelsError(f"dataset {dataset.id!r} has no model columns")
    if len(models) > MODEL_CAP:
        raise ModelCapExceededError(
            f"dataset {dataset.id!r} has {len(models)} models; the diagram caps at {MODEL_CAP}"
        )

    reference_vec = dataset.reference()
    points = []
    degenerate_ids = []
    for model in models:
        if kind is DiagramKind.TAYLOR:
            metrics = taylor_metrics(reference_vec, model)
        else:
            metrics = info_metrics(reference_vec, model, binning_cfg)
            if metrics.degenerate:
                degenerate_ids.append(model.name)
        points.append(place(kind, model.name, metrics))

    ref_point = reference_point(kind, points[0].metrics)
    max_r = max([ref_point.r] + [p.r for p in points])
    radial_max = max_r if max_r > 0 else 1.0  # fully degenerate data still renders

    if kind is DiagramKind.TAYLOR:
        theta_max = (
            math.pi if any(p.metrics.correlation < 0 for p in points) else math.pi / 2.0
        )
    elif kind is DiagramKind.SMI:
        theta_max = math.pi
    else:
        theta_max = math.pi / 2.0

    normalized = [(p.x / radial_max, p.y / radial_max) for p in points]
    labels = dbscan(normalized, clustering_cfg)
    clusters = summarize(kind, points, labels, ref_point)

    warnings: list[ViewWarning] = []
    if len(models) == MODEL_CAP:
        warnings.append(
            ViewWarning(
                code=WarningCode.MODEL_CAP,
                affected_ids=tuple(m.name for m in models),
                message=f"dataset uses all {MODEL_CAP} model slots",
            )
        )
    if degenerate_ids:
        warnings.append(
            ViewWarning(
                code=WarningCode.DEGENERATE_ENTROPY,
                affected_ids=tuple(degenerate_ids),
                message="zero marginal entropy: smi and nmi set to 0 by convention",
            )
        )

    return ViewBundle(
        kind=kind,
        all_points=tuple(points),
        reference=ref_point,
        clusters=tuple(clusters),
        radial_max=radial_max,
        theta_max=theta_max,
        static_warnings=tuple(warnings),
        dataset_id=getattr(dataset, "id", None),
    )


def apply_radial_brush(bundle: ViewBundle, r0: float, r1: float) -> ViewBundle:
    """Record a radial brush: filter the detail view and select the retained ids."""
    if not 0.0 <= r0 <= r1 <= bundle.radial_max:
        raise InvalidIntervalError(
            f"brush [{r0}, {r1}] outside [0, {bundle.radial_max}]"
        )
    retained = frozenset(p.model_id for p in bundle.all_points if r0 <= p.r <= r1)
    return replace(bundle, brush=(r0, r1), selection=retained)


def apply_legend_action(bundle: ViewBundle, action: LegendAction) -> ViewBundle:
    if action.kind is LegendActionKind.RESET:
        return replace(bundle, brush=None, hidden=frozenset(), selection=frozenset())
    if action.model_id is None or action.model_id not in bundle.model_ids:
        raise UnknownModelIdError(f"unknown model id {action.model_id!r}")
    if action.kind is LegendActionKind.SINGLE_CLICK:
        hidden = set(bundle.hidden)
        if action.model_id in hidden:
            hidden.discard(action.model_id)
        else:
            hidden.add(action.model_id)
        return replace(bundle, hidden=frozenset(hidden))
    cluster = _cluster_of(bundle, action.model_id)
    members = frozenset(cluster.member_ids) if cluster else frozenset({action.model_id})
    return replace(bundle, selection=members)


def apply_rect_brush(
    detail: DiagramView, rect: tuple[float, float, float, float]
) -> frozenset[str]:
    """Models whose Cartesian projection falls inside the closed rectangle."""
    x0, y0, x1, y1 = rect
    if x0 > x1 or y0 > y1:
        raise InvalidRectError(f"rectangle {rect} is not normalized")
    return frozenset(
        p.model_id for p in detail.points if x0 <= p.x <= x1 and y0 <= p.y <= y1
    )


def detect_occlusion_points(
    points: tuple[DiagramPoint, ...], mark_radius_px: float, px_per_unit: float
) -> list[ViewWarning]:
    if mark_radius_px <= 0 or px_per_unit <= 0:
        raise InvariantError("occlusion detection needs positive radii and scale")
    threshold = OCCLUSION_FACTOR * mark_radius_px
    overlapping: list[tuple[str, str]] = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            a, b = points[i], points[j]
            if a.distance_to(b) * px_per_unit < threshold:
                pair = tuple(sorted((a.model_id, b.model_id)))
                overlapping.append(pair)  # type: ignore[arg-type]
    if not overlapping:
        return []
    overlapping.sort()
    affected = tuple(sorted({m for pair in overlapping for m in pair}))
    described = ", ".join(f"{a} / {b}" for a, b in overlapping)
    return [
        ViewWarning(
            code=WarningCode.OCCLUSION,
            affected_ids=affected,
            message=f"overlapping marks: {described}",
        )
    ]


def detect_occlusion(
    view: DiagramView, mark_radius_px: float, px_per_unit: float
) -> list[ViewWarning]:
    """Flag every pair of marks closer on screen than the overlap threshold."""
    return detect_occlusion_points(view.points, mark_radius_px, px_per_unit)


def small_multiples(
    versioned_dataset,
    kind: DiagramKind,
    binning_cfg: BinningConfig | None = None,
) -> GridLayout:
    """One diagram per consecutive version pair, on a shared radial scale."""
    versions = versioned_dataset.versions
    if len(versions) < 2:
        raise TooFewVersionsError(
            f"need at least 2 versions, got {len(versions)}"
        )

    model_names = versions[0].dataset.model_names()
    for version in versions[1:]:
        if version.dataset.model_names() != model_names:
            raise VersionMismatchError(
                f"version {version.label!r} does not share the model set"
            )

    binning_cfg = binning_cfg or BinningConfig()
    per_version_points: list[dict[str, DiagramPoint]] = []
    per_version_refs: list[DiagramPoint] = []
    for version in versions:
        dataset = version.dataset
        reference_vec = dataset.reference()
        placed = {}
        for model in dataset.models():
            if kind is DiagramKind.TAYLOR:
                metrics = taylor_metrics(reference_vec, model)
            else:
                metrics = info_metrics(reference_vec, model, binning_cfg)
            placed[model.name] = place(kind, model.name, metrics)
        per_version_points.append(placed)
        per_version_refs.append(reference_point(kind, next(iter(placed.values())).metrics))

    all_points = [p for placed in per_version_points for p in placed.values()]
    max_r = max(
        [ref.r for ref in per_version_refs] + [p.r for p in all_points]
    )
    radial_max = max_r if max_r > 0 else 1.0
    if kind is DiagramKind.TAYLOR:
        negative = any(
            p.metrics.correlation < 0 for p in all_points
        )
        theta_max = math.pi if negative else math.pi / 2.0
    elif kind is DiagramKind.SMI:
        theta_max = math.pi
    else:
        theta_max = math.pi / 2.0

    cells = []
    for i in range(len(versions) - 1):
        later = versions[i + 1]
        pairs = tuple(
            (name, per_version_points[i][name], per_version_points[i + 1][name])
            for name in model_names
        )
        flattened = tuple(p for _, start, end in pairs for p in (start, end))
        view = DiagramView(
            kind=kind,
            role=ViewRole.GRID_CELL,
            points=flattened,
            reference=per_version_refs[i + 1],
            radial_max=radial_max,
            theta_max=theta_max,
        )
        annotation = later.label
        if later.changed_params:
            annotation = f"{later.label} ({later.changed_params})"
        cells.append(GridCell(annotation=annotation, view=view, pairs=pairs))

    rows = -(-len(cells) // 3)
    warnings = []
    if rows > GRID_ROWS_RECOMMENDED:
        warnings.append(
            ViewWarning(
                code=WarningCode.GRID_SIZE,
                affected_ids=(),
                message=(
                    f"{rows} rows exceed the recommended "
                    f"{GRID_ROWS_RECOMMENDED}x3 grid"
                ),
            )
        )

    return GridLayout(
        kind=kind,
        rows=rows,
        cols=3,
        cells=tuple(cells),
        model_ids=model_names,
        radial_max=radial_max,
        theta_max=theta_max,
        warnings=tuple(warnings),
    )
