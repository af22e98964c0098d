"""Pydantic request/response models: the published schema of the HTTP API.

Response models mirror the payload dicts from :mod:`polarview.serialize`
field for field, so serialize -> parse -> serialize is the identity.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class ViewRequest(BaseModel):
    dataset_id: str
    kind: Literal["taylor", "smi", "nmi"]
    brush: Optional[tuple[float, float]] = None
    hidden: list[str] = Field(default_factory=list)
    selected_cluster: Optional[int] = None
    bins: Optional[int] = None
    eps: Optional[float] = None
    min_pts: Optional[int] = None


class GridRequest(BaseModel):
    dataset_id: str
    kind: Literal["taylor", "smi", "nmi"]
    bins: Optional[int] = None


class TaylorMetricsModel(BaseModel):
    flavor: Literal["taylor"]
    sigma_ref: float
    sigma_model: float
    correlation: float
    crmse: float


class InfoMetricsModel(BaseModel):
    flavor: Literal["info"]
    h_ref: float
    h_model: float
    mi: float
    smi: float
    nmi: float
    vi: float
    rvi: float
    degenerate: bool


MetricsModel = Union[TaylorMetricsModel, InfoMetricsModel]


class PointModel(BaseModel):
    model_id: str
    r: float
    theta: float
    x: float
    y: float
    metrics: Optional[MetricsModel]


class ClusterModel(BaseModel):
    cluster_id: int
    member_ids: list[str]
    centroid: PointModel
    count: int
    shade: int
    mark_radius_px: float


class WarningModel(BaseModel):
    code: Literal["occlusion", "model_cap", "grid_size", "degenerate_entropy"]
    affected_ids: list[str]
    message: str


class ViewModel(BaseModel):
    kind: Literal["taylor", "smi", "nmi"]
    role: Literal["overview", "detail", "grid_cell"]
    radial_max: float
    theta_max: float
    brush: Optional[tuple[float, float]]
    selection: list[str]
    reference: PointModel
    points: list[PointModel]
    clusters: list[ClusterModel]
    warnings: list[WarningModel]


class AxisModel(BaseModel):
    label: str
    entries: list[tuple[str, float]]


class LinkingModel(BaseModel):
    axes: list[AxisModel]
    highlighted: list[str]


class ViewResponse(BaseModel):
    dataset_id: Optional[str]
    kind: Literal["taylor", "smi", "nmi"]
    overview: ViewModel
    detail: ViewModel
    linking: LinkingModel
    warnings: list[WarningModel]


class PairModel(BaseModel):
    model_id: str
    start: PointModel
    end: PointModel


class GridCellModel(BaseModel):
    annotation: str
    view: ViewModel
    pairs: list[PairModel]


class GridResponse(BaseModel):
    dataset_id: Optional[str]
    kind: Literal["taylor", "smi", "nmi"]
    rows: int
    cols: int
    radial_max: float
    theta_max: float
    model_ids: list[str]
    warnings: list[WarningModel]
    cells: list[GridCellModel]


class DatasetSummary(BaseModel):
    id: str
    title: str
    provenance: str
    model_count: int
    versioned: bool
    available: bool
    error: Optional[str] = None


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
