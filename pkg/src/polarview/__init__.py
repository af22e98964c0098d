"""polarview: analytics engine and dashboard service for summary polar diagrams."""

from .clustering import ClusteringConfig, ClusterSummary, dbscan, summarize
from .datasets import (
    Dataset,
    DatasetRegistry,
    VersionedDataset,
    load_csv,
    load_table,
    load_versioned_csv,
    stratified_sample,
)
from .geometry import DiagramKind, DiagramPoint, distance_measure, place, reference_point
from .metrics import (
    AUTO,
    BinningConfig,
    InfoMetrics,
    SampleVector,
    TaylorMetrics,
    cartesian_from_polar,
    info_metrics,
    polar_from_cartesian,
    taylor_metrics,
)
from .svg import RenderTheme, render
from .views import (
    DiagramView,
    GridLayout,
    LegendAction,
    LegendActionKind,
    LinkingAxes,
    ViewBundle,
    apply_legend_action,
    apply_radial_brush,
    apply_rect_brush,
    build_views,
    detect_occlusion,
    small_multiples,
)

__version__ = "0.1.0"
