"""Plain-dict payloads for views, linking axes, and grids.

These are the wire format of the HTTP service and the replay oracle used in
tests: payloads are built with fixed key order and serialized with
:func:`canonical_json`, so identical states yield identical bytes.
"""

from __future__ import annotations

import json

from .clustering import ClusterSummary
from .geometry import DiagramPoint
from .metrics import InfoMetrics, TaylorMetrics
from .views import DiagramView, GridLayout, LinkingAxes, ViewBundle, ViewWarning


def metrics_payload(metrics) -> dict:
    if isinstance(metrics, TaylorMetrics):
        return {
            "flavor": "taylor",
            "sigma_ref": metrics.sigma_ref,
            "sigma_model": metrics.sigma_model,
            "correlation": metrics.correlation,
            "crmse": metrics.crmse,
        }
    if isinstance(metrics, InfoMetrics):
        return {
            "flavor": "info",
            "h_ref": metrics.h_ref,
            "h_model": metrics.h_model,
            "mi": metrics.mi,
            "smi": metrics.smi,
            "nmi": metrics.nmi,
            "vi": metrics.vi,
            "rvi": metrics.rvi,
            "degenerate": metrics.degenerate,
        }
    return {}


def point_payload(point: DiagramPoint) -> dict:
    return {
        "model_id": point.model_id,
        "r": point.r,
        "theta": point.theta,
        "x": point.x,
        "y": point.y,
        "metrics": metrics_payload(point.metrics) if point.metrics is not None else None,
    }


def cluster_payload(cluster: ClusterSummary) -> dict:
    return {
        "cluster_id": cluster.cluster_id,
        "member_ids": list(cluster.member_ids),
        "centroid": point_payload(cluster.centroid),
        "count": cluster.count,
        "shade": cluster.shade,
        "mark_radius_px": cluster.mark_radius_px,
    }


def warning_payload(warning: ViewWarning) -> dict:
    return {
        "code": warning.code.value,
        "affected_ids": list(warning.affected_ids),
        "message": warning.message,
    }


def view_payload(view: DiagramView) -> dict:
    return {
        "kind": view.kind.value,
        "role": view.role.value,
        "radial_max": view.radial_max,
        "theta_max": view.theta_max,
        "brush": list(view.brush) if view.brush is not None else None,
        "selection": sorted(view.selection),
        "reference": point_payload(view.reference),
        "points": [point_payload(p) for p in view.points],
        "clusters": [cluster_payload(c) for c in view.clusters],
        "warnings": [warning_payload(w) for w in view.warnings],
    }


def linking_payload(linking: LinkingAxes) -> dict:
    return {
        "axes": [
            {
                "label": axis.label,
                "entries": [[model_id, value] for model_id, value in axis.entries],
            }
            for axis in linking.axes
        ],
        "highlighted": sorted(linking.highlighted),
    }


def bundle_payload(bundle: ViewBundle) -> dict:
    """The full /api/view response body for one interactive state."""
    detail = bundle.detail()
    return {
        "dataset_id": bundle.dataset_id,
        "kind": bundle.kind.value,
        "overview": view_payload(bundle.overview()),
        "detail": view_payload(detail),
        "linking": linking_payload(bundle.linking()),
        "warnings": [warning_payload(w) for w in bundle.static_warnings + detail.warnings],
    }


def grid_payload(grid: GridLayout, dataset_id: str | None = None) -> dict:
    return {
        "dataset_id": dataset_id,
        "kind": grid.kind.value,
        "rows": grid.rows,
        "cols": grid.cols,
        "radial_max": grid.radial_max,
        "theta_max": grid.theta_max,
        "model_ids": list(grid.model_ids),
        "warnings": [warning_payload(w) for w in grid.warnings],
        "cells": [
            {
                "annotation": cell.annotation,
                "view": view_payload(cell.view),
                "pairs": [
                    {
                        "model_id": model_id,
                        "start": point_payload(start),
                        "end": point_payload(end),
                    }
                    for model_id, start, end in cell.pairs
                ],
            }
            for cell in grid.cells
        ],
    }


def canonical_json(payload) -> bytes:
    """Compact deterministic JSON encoding of a payload."""
    return json.dumps(payload, separators=(",", ":"), allow_nan=False).encode("utf-8")
