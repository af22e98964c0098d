"""Stateless HTTP service over the analytics core.

The dataset registry is built once at startup and shared read-only; every
response is a pure function of the request, so concurrent requests cannot
interfere and identical requests yield byte-identical bodies.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from ..clustering import ClusteringConfig
from ..datasets import Dataset, DatasetRegistry, RegistryRecord
from ..errors import (
    InvalidIntervalError,
    InvalidRectError,
    InvariantError,
    ModelCapExceededError,
    ParseError,
    PolarViewError,
    TooFewModelsError,
    TooFewVersionsError,
    TooManyModelsError,
    UnknownDatasetError,
    UnknownModelIdError,
    UnknownViewError,
    ZeroVarianceError,
)
from ..geometry import DiagramKind
from ..metrics import AUTO, BinningConfig
from ..serialize import bundle_payload, grid_payload
from ..svg import RenderTheme, render
from ..views import ViewBundle, apply_radial_brush, build_views, small_multiples
from .schemas import (
    DatasetSummary,
    ErrorResponse,
    GridRequest,
    GridResponse,
    ViewRequest,
    ViewResponse,
)

_STATUS_BY_ERROR = {
    UnknownDatasetError: 404,
    ModelCapExceededError: 409,
    TooManyModelsError: 409,
    InvalidIntervalError: 422,
    InvalidRectError: 422,
    UnknownModelIdError: 422,
    TooFewModelsError: 422,
    TooFewVersionsError: 422,
    UnknownViewError: 422,
    ZeroVarianceError: 422,
    ParseError: 422,
    InvariantError: 422,
}

_ERROR_RESPONSES = {
    404: {"model": ErrorResponse},
    409: {"model": ErrorResponse},
    422: {"model": ErrorResponse},
}


def _status_for(exc: PolarViewError) -> int:
    for klass, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, klass):
            return status
    return 400


def _dataset_for_view(record: RegistryRecord) -> Dataset:
    if not record.available:
        if record.error_code == TooManyModelsError.code:
            raise TooManyModelsError(record.error)
        raise UnknownDatasetError(
            f"dataset {record.entry.id!r} is unavailable: {record.error}"
        )
    if record.dataset is None:
        raise InvariantError(
            f"dataset {record.entry.id!r} is versioned; request /api/grid instead"
        )
    return record.dataset


def _bundle_for_request(registry: DatasetRegistry, req: ViewRequest) -> ViewBundle:
    record = registry.get(req.dataset_id)
    dataset = _dataset_for_view(record)
    clustering = ClusteringConfig(
        eps=req.eps if req.eps is not None else ClusteringConfig.eps,
        min_pts=req.min_pts if req.min_pts is not None else ClusteringConfig.min_pts,
    )
    binning = BinningConfig(bin_count=req.bins if req.bins is not None else AUTO)
    bundle = build_views(dataset, DiagramKind(req.kind), clustering, binning)
    if req.brush is not None:
        bundle = apply_radial_brush(bundle, req.brush[0], req.brush[1])
    if req.hidden:
        known = set(bundle.model_ids)
        for model_id in req.hidden:
            if model_id not in known:
                raise UnknownModelIdError(f"unknown model id {model_id!r}")
        bundle = replace(bundle, hidden=frozenset(req.hidden))
    if req.selected_cluster is not None:
        matches = [c for c in bundle.clusters if c.cluster_id == req.selected_cluster]
        if not matches:
            raise UnknownModelIdError(f"unknown cluster id {req.selected_cluster}")
        bundle = replace(bundle, selection=frozenset(matches[0].member_ids))
    return bundle


def create_app(data_dir: Path | None = None, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(
        title="polarview",
        description="Analytics service for summary polar diagrams",
        version="0.1.0",
    )
    registry = DatasetRegistry(data_dir)
    app.state.registry = registry

    @app.exception_handler(PolarViewError)
    async def domain_error_handler(_: Request, exc: PolarViewError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "validation_error", "message": str(exc.errors())}},
        )

    @app.get("/api/datasets", response_model=list[DatasetSummary])
    def list_datasets():
        rows = []
        for record in registry.list_records():
            rows.append(
                {
                    "id": record.entry.id,
                    "title": record.entry.title,
                    "provenance": record.entry.provenance,
                    "model_count": record.model_count,
                    "versioned": record.entry.version_column is not None,
                    "available": record.available,
                    "error": record.error,
                }
            )
        return JSONResponse(content=rows)

    @app.post(
        "/api/view", response_model=ViewResponse, responses=_ERROR_RESPONSES
    )
    def view(req: ViewRequest):
        bundle = _bundle_for_request(registry, req)
        return JSONResponse(content=bundle_payload(bundle))

    @app.post(
        "/api/grid", response_model=GridResponse, responses=_ERROR_RESPONSES
    )
    def grid(req: GridRequest):
        record = registry.get(req.dataset_id)
        if not record.available:
            if record.error_code == TooManyModelsError.code:
                raise TooManyModelsError(record.error)
            raise UnknownDatasetError(
                f"dataset {req.dataset_id!r} is unavailable: {record.error}"
            )
        if record.versioned is None:
            raise TooFewVersionsError(
                f"dataset {req.dataset_id!r} is not versioned; request /api/view instead"
            )
        binning = BinningConfig(bin_count=req.bins if req.bins is not None else AUTO)
        layout = small_multiples(record.versioned, DiagramKind(req.kind), binning)
        return JSONResponse(content=grid_payload(layout, dataset_id=req.dataset_id))

    @app.get("/api/export.svg", responses=_ERROR_RESPONSES)
    def export_svg(
        dataset_id: str,
        kind: str = Query(pattern="^(taylor|smi|nmi)$"),
        view: str = "detail",
        r0: float | None = None,
        r1: float | None = None,
        hidden: str | None = None,
        selected_cluster: int | None = None,
        bins: int | None = None,
        eps: float | None = None,
        min_pts: int | None = None,
    ):
        if view not in ("overview", "detail", "linking", "grid"):
            raise UnknownViewError(f"unknown view selector {view!r}")
        theme = RenderTheme()
        if view == "grid":
            record = registry.get(dataset_id)
            if not record.available or record.versioned is None:
                raise UnknownDatasetError(f"no versioned dataset {dataset_id!r}")
            binning = BinningConfig(bin_count=bins if bins is not None else AUTO)
            layout = small_multiples(record.versioned, DiagramKind(kind), binning)
            body = render(layout, theme)
        else:
            brush = None
            if r0 is not None or r1 is not None:
                if r0 is None or r1 is None:
                    raise InvalidIntervalError("brush needs both r0 and r1")
                brush = (r0, r1)
            req = ViewRequest(
                dataset_id=dataset_id,
                kind=kind,  # type: ignore[arg-type]
                brush=brush,
                hidden=[h for h in (hidden.split(",") if hidden else []) if h],
                selected_cluster=selected_cluster,
                bins=bins,
                eps=eps,
                min_pts=min_pts,
            )
            bundle = _bundle_for_request(registry, req)
            target = {
                "overview": bundle.overview,
                "detail": bundle.detail,
                "linking": bundle.linking,
            }[view]()
            body = render(target, theme)
        return Response(content=body, media_type="image/svg+xml")

    if static_dir is not None and static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="dashboard")

    return app
