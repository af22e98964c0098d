"""Batch CLI: a thin client over the analytics core and the HTTP service.

Subcommands: compute (metric triples as CSV), render (static SVG), sample
(stratified subsetting), serve (start the HTTP service).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .clustering import ClusteringConfig
from .datasets import (
    dataset_to_csv,
    load_csv,
    load_table,
    load_versioned_csv,
    stratified_sample,
)
from .errors import PolarViewError, UnknownViewError
from .geometry import DiagramKind
from .metrics import AUTO, BinningConfig, info_metrics, taylor_metrics
from .serialize import bundle_payload, canonical_json
from .svg import RenderTheme, render
from .views import build_views, small_multiples

_TAYLOR_COLUMNS = ("model", "sigma_ref", "sigma_model", "correlation", "crmse")
_INFO_COLUMNS = ("model", "h_ref", "h_model", "mi", "smi", "nmi", "vi", "rvi")


def _write_output(out: str | None, data: bytes) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(out).write_bytes(data)


def _binning(args) -> BinningConfig:
    return BinningConfig(bin_count=args.bins if args.bins is not None else AUTO)


def cmd_compute(args) -> int:
    dataset = load_csv(Path(args.input).read_bytes(), args.reference)
    kind = DiagramKind(args.kind)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if kind is DiagramKind.TAYLOR:
        writer.writerow(_TAYLOR_COLUMNS)
        for model in dataset.models():
            m = taylor_metrics(dataset.reference(), model)
            writer.writerow(
                [model.name] + [repr(v) for v in (m.sigma_ref, m.sigma_model, m.correlation, m.crmse)]
            )
    else:
        writer.writerow(_INFO_COLUMNS)
        for model in dataset.models():
            m = info_metrics(dataset.reference(), model, _binning(args))
            writer.writerow(
                [model.name]
                + [repr(v) for v in (m.h_ref, m.h_model, m.mi, m.smi, m.nmi, m.vi, m.rvi)]
            )
    _write_output(args.out, out.getvalue().encode("utf-8"))
    return 0


def cmd_render(args) -> int:
    data = Path(args.input).read_bytes()
    kind = DiagramKind(args.kind)
    theme = RenderTheme.from_file(args.theme) if args.theme else RenderTheme()
    if args.view == "grid":
        if not args.version_column:
            raise UnknownViewError("grid rendering needs --version-column")
        versioned = load_versioned_csv(data, args.reference, args.version_column)
        body = render(small_multiples(versioned, kind, _binning(args)), theme)
    else:
        dataset = load_csv(data, args.reference)
        clustering = ClusteringConfig(
            eps=args.eps if args.eps is not None else ClusteringConfig.eps,
            min_pts=args.min_pts if args.min_pts is not None else ClusteringConfig.min_pts,
        )
        bundle = build_views(dataset, kind, clustering, _binning(args))
        if args.view == "overview":
            body = render(bundle.overview(), theme)
        elif args.view == "detail":
            body = render(bundle.detail(), theme)
        elif args.view == "linking":
            body = render(bundle.linking(), theme)
        elif args.view == "payload":
            body = canonical_json(bundle_payload(bundle))
        else:
            raise UnknownViewError(f"unknown view selector {args.view!r}")
    _write_output(args.out, body)
    return 0


def cmd_sample(args) -> int:
    table = load_table(Path(args.input).read_bytes())
    dataset, _ = stratified_sample(
        table, args.strata, args.per_stratum, args.seed, id=args.id
    )
    _write_output(args.out, dataset_to_csv(dataset).encode("utf-8"))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    data_dir = Path(args.manifest).parent if args.manifest else None
    static_dir = Path(args.static) if args.static else None
    uvicorn.run(create_app(data_dir, static_dir), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarview",
        description="Summary polar diagram analytics: metrics, rendering, sampling, serving.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="write metric triples as CSV")
    compute.add_argument("--input", required=True, help="wide-format CSV path")
    compute.add_argument("--reference", required=True, help="reference column name")
    compute.add_argument("--kind", required=True, choices=["taylor", "smi", "nmi"])
    compute.add_argument("--bins", type=int, default=None)
    compute.add_argument("--out", default=None, help="output path (default stdout)")
    compute.set_defaults(func=cmd_compute)

    rend = sub.add_parser("render", help="write a static SVG")
    rend.add_argument("--input", required=True)
    rend.add_argument("--reference", required=True)
    rend.add_argument("--kind", required=True, choices=["taylor", "smi", "nmi"])
    rend.add_argument(
        "--view",
        required=True,
        choices=["overview", "detail", "linking", "grid", "payload"],
    )
    rend.add_argument("--version-column", default=None)
    rend.add_argument("--bins", type=int, default=None)
    rend.add_argument("--eps", type=float, default=None)
    rend.add_argument("--min-pts", type=int, default=None)
    rend.add_argument("--theme", default=None, help="theme config file (JSON key-value)")
    rend.add_argument("--out", default=None)
    rend.set_defaults(func=cmd_render)

    sample = sub.add_parser("sample", help="stratified sampling into a diagram dataset")
    sample.add_argument("--input", required=True, help="long-format table CSV")
    sample.add_argument("--strata", required=True, help="categorical strata column")
    sample.add_argument("--per-stratum", type=int, required=True)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--id", default="sampled")
    sample.add_argument("--out", default=None)
    sample.set_defaults(func=cmd_sample)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--manifest", default=None, help="path to manifest.json")
    serve.add_argument("--static", default=None, help="dashboard build to serve at /")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolarViewError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
