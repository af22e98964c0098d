"""Deterministic static SVG rendering for diagram views, linking plots, and grids.

Output is a pure function of (view, theme): numbers are canonically formatted
with at most 6 decimal places, marks are emitted in sorted model-id order, and
no text is ever measured, so identical inputs yield identical bytes on any
platform.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .clustering import MARK_RADIUS_MAX_PX, MARK_RADIUS_MIN_PX
from .errors import InvariantError, ThemeCapacityExceededError
from .geometry import DiagramKind, DiagramPoint
from .views import DiagramView, GridLayout, LinkingAxes, ViewRole

#: 21 distinguishable fills (tab20 plus one extra), used semi-transparently.
DEFAULT_PALETTE = (
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c", "#98df8a",
    "#d62728", "#ff9896", "#9467bd", "#c5b0d5", "#8c564b", "#c49c94",
    "#e377c2", "#f7b6d2", "#7f7f7f", "#c7c7c7", "#bcbd22", "#dbdb8d",
    "#17becf", "#9edae5", "#8c6d31",
)

_SIMILARITY_TICKS = (0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99, 1.0)

_RADIAL_AXIS_LABEL = {
    DiagramKind.TAYLOR: "standard deviation",
    DiagramKind.SMI: "entropy (bits)",
    DiagramKind.NMI: "root entropy",
}
_SIMILARITY_AXIS_LABEL = {
    DiagramKind.TAYLOR: "correlation",
    DiagramKind.SMI: "scaled mutual information",
    DiagramKind.NMI: "normalized mutual information",
}
_DISTANCE_AXIS_LABEL = {
    DiagramKind.TAYLOR: "CRMSE",
    DiagramKind.SMI: "VI",
    DiagramKind.NMI: "RVI",
}


@dataclass(frozen=True)
class RenderTheme:
    """Canvas geometry plus the palette of semi-transparent model fills."""

    canvas_width: float = 640.0
    canvas_height: float = 560.0
    margin: float = 48.0
    font_family: str = "sans-serif"
    base_mark_radius_px: float = 7.0
    highlight_gray: int = 160
    mark_alpha: float = 0.55
    palette: tuple[str, ...] = DEFAULT_PALETTE

    def __post_init__(self):
        if not 0.0 < self.mark_alpha < 1.0:
            raise InvariantError("mark_alpha must lie strictly between 0 and 1")
        if not 0 <= self.highlight_gray <= 255:
            raise InvariantError("highlight_gray must be an 8-bit gray level")
        if not self.palette:
            raise InvariantError("palette cannot be empty")

    @classmethod
    def from_file(cls, path: str | Path) -> "RenderTheme":
        raw = json.loads(Path(path).read_text("utf-8"))
        if "palette" in raw:
            raw["palette"] = tuple(raw["palette"])
        return cls(**raw)


def fnum(value: float) -> str:
    """Canonical number format: fixed 6 decimals, trailing zeros stripped."""
    s = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _slug(model_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", model_id)


def _gray(level: int) -> str:
    return f"#{level:02x}{level:02x}{level:02x}"


def color_for(theme: RenderTheme, ordered_ids: tuple[str, ...], model_id: str) -> str:
    if len(ordered_ids) > len(theme.palette):
        raise ThemeCapacityExceededError(
            f"{len(ordered_ids)} models exceed the palette of {len(theme.palette)}"
        )
    return theme.palette[ordered_ids.index(model_id)]


class _Svg:
    """Tiny element buffer; elements appear exactly in append order."""

    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self.parts: list[str] = []

    def add(self, tag: str, text: str | None = None, title: str | None = None, **attrs):
        rendered = " ".join(
            f'{name.replace("_", "-")}="{escape(str(value))}"'
            for name, value in attrs.items()
            if value is not None
        )
        if text is None and title is None:
            self.parts.append(f"<{tag} {rendered}/>")
        else:
            inner = ""
            if title is not None:
                inner += f"<title>{escape(title)}</title>"
            if text is not None:
                inner += escape(text)
            self.parts.append(f"<{tag} {rendered}>{inner}</{tag}>")

    def raw(self, markup: str):
        self.parts.append(markup)

    def to_bytes(self) -> bytes:
        body = "\n".join(self.parts)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{fnum(self.width)}" height="{fnum(self.height)}" '
            f'viewBox="0 0 {fnum(self.width)} {fnum(self.height)}">\n'
            f"{body}\n</svg>\n"
        ).encode("utf-8")


@dataclass
class _Frame:
    """Screen mapping for one polar plot: r in [r_lo, r_hi] onto radius_px."""

    cx: float
    cy: float
    radius_px: float
    r_lo: float
    r_hi: float
    theta_max: float

    def scale(self, r: float) -> float:
        span = self.r_hi - self.r_lo
        if span <= 0:
            return 0.0
        return max(0.0, (r - self.r_lo) / span) * self.radius_px

    def to_screen(self, r: float, theta: float) -> tuple[float, float]:
        rho = self.scale(r)
        return self.cx + rho * math.cos(theta), self.cy - rho * math.sin(theta)


def _make_frame(view_theta_max: float, theme: RenderTheme, *, width: float,
                height: float, r_lo: float, r_hi: float) -> _Frame:
    m = theme.margin
    if view_theta_max > math.pi / 2.0 + 1e-12:
        radius = min(width / 2.0 - m, height - 2.0 * m)
        return _Frame(width / 2.0, height - m, radius, r_lo, r_hi, view_theta_max)
    radius = min(width - 2.0 * m, height - 2.0 * m)
    return _Frame(m, height - m, radius, r_lo, r_hi, view_theta_max)


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * power
        if span / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(round(t / step) * step)
        t += step
    return ticks


def _wedge_path(frame: _Frame) -> str:
    """Closed path around the plot area (sector or half disc)."""
    r = frame.radius_px
    x0, y0 = frame.cx + r, frame.cy
    x1 = frame.cx + r * math.cos(frame.theta_max)
    y1 = frame.cy - r * math.sin(frame.theta_max)
    large = 1 if frame.theta_max > math.pi / 2.0 + 1e-12 else 0
    return (
        f"M {fnum(frame.cx)} {fnum(frame.cy)} L {fnum(x0)} {fnum(y0)} "
        f"A {fnum(r)} {fnum(r)} 0 {large} 0 {fnum(x1)} {fnum(y1)} Z"
    )


def _annulus_path(frame: _Frame, r0: float, r1: float) -> str:
    rho0, rho1 = frame.scale(r0), frame.scale(r1)
    large = 1 if frame.theta_max > math.pi / 2.0 + 1e-12 else 0
    ax0, ay0 = frame.cx + rho1, frame.cy
    ax1 = frame.cx + rho1 * math.cos(frame.theta_max)
    ay1 = frame.cy - rho1 * math.sin(frame.theta_max)
    bx1 = frame.cx + rho0 * math.cos(frame.theta_max)
    by1 = frame.cy - rho0 * math.sin(frame.theta_max)
    bx0, by0 = frame.cx + rho0, frame.cy
    return (
        f"M {fnum(ax0)} {fnum(ay0)} "
        f"A {fnum(rho1)} {fnum(rho1)} 0 {large} 0 {fnum(ax1)} {fnum(ay1)} "
        f"L {fnum(bx1)} {fnum(by1)} "
        f"A {fnum(rho0)} {fnum(rho0)} 0 {large} 1 {fnum(bx0)} {fnum(by0)} Z"
    )


def _arc_path(frame: _Frame, rho: float) -> str:
    x0, y0 = frame.cx + rho, frame.cy
    x1 = frame.cx + rho * math.cos(frame.theta_max)
    y1 = frame.cy - rho * math.sin(frame.theta_max)
    large = 1 if frame.theta_max > math.pi / 2.0 + 1e-12 else 0
    return f"M {fnum(x0)} {fnum(y0)} A {fnum(rho)} {fnum(rho)} 0 {large} 0 {fnum(x1)} {fnum(y1)}"


def _similarity_from_theta(kind: DiagramKind, tick: float) -> float:
    if kind is DiagramKind.TAYLOR or kind is DiagramKind.NMI:
        return math.acos(tick)
    return math.acos(2.0 * tick - 1.0)  # smi ticks


def _draw_axes(svg: _Svg, frame: _Frame, kind: DiagramKind, theme: RenderTheme,
               *, axis_color: str, with_grid: bool, clip_id: str | None = None):
    svg.add("path", d=_wedge_path(frame), fill="none", stroke=axis_color, stroke_width="1.5")
    ticks = [t for t in _nice_ticks(frame.r_lo, frame.r_hi) if frame.r_lo <= t <= frame.r_hi]
    for t in ticks:
        rho = frame.scale(t)
        if with_grid and 0 < rho < frame.radius_px:
            svg.add("path", d=_arc_path(frame, rho), fill="none",
                    stroke="#dddddd", stroke_width="0.75")
        svg.add("line", x1=fnum(frame.cx + rho), y1=fnum(frame.cy),
                x2=fnum(frame.cx + rho), y2=fnum(frame.cy + 5), stroke=axis_color,
                stroke_width="1")
        svg.add("text", text=fnum(t), x=fnum(frame.cx + rho), y=fnum(frame.cy + 18),
                text_anchor="middle", font_family=theme.font_family, font_size="11",
                fill=axis_color)
    # mirrored ticks on the negative x-axis for half-disc plots
    if frame.theta_max > math.pi / 2.0 + 1e-12:
        for t in ticks:
            rho = frame.scale(t)
            if rho > 0:
                svg.add("line", x1=fnum(frame.cx - rho), y1=fnum(frame.cy),
                        x2=fnum(frame.cx - rho), y2=fnum(frame.cy + 5),
                        stroke=axis_color, stroke_width="1")
    if with_grid:
        lo = -1.0 if frame.theta_max > math.pi / 2.0 + 1e-12 else 0.0
        sim_ticks = [s for s in _SIMILARITY_TICKS if s >= lo] if kind is not DiagramKind.SMI \
            else [s for s in _SIMILARITY_TICKS]
        for s in sim_ticks:
            theta = _similarity_from_theta(kind, s)
            if theta > frame.theta_max + 1e-9:
                continue
            x1, y1 = frame.to_screen(frame.r_hi, theta)
            svg.add("line", x1=fnum(frame.cx), y1=fnum(frame.cy), x2=fnum(x1), y2=fnum(y1),
                    stroke="#eeeeee", stroke_width="0.75")
            lx = frame.cx + (frame.radius_px + 14) * math.cos(theta)
            ly = frame.cy - (frame.radius_px + 14) * math.sin(theta)
            svg.add("text", text=fnum(s), x=fnum(lx), y=fnum(ly), text_anchor="middle",
                    font_family=theme.font_family, font_size="10", fill=axis_color)
        svg.add("text", text=_RADIAL_AXIS_LABEL[kind],
                x=fnum(frame.cx + frame.radius_px / 2.0), y=fnum(frame.cy + 34),
                text_anchor="middle", font_family=theme.font_family, font_size="12",
                fill=axis_color)
        mid = frame.theta_max / 2.0
        lx = frame.cx + (frame.radius_px + 30) * math.cos(mid)
        ly = frame.cy - (frame.radius_px + 30) * math.sin(mid)
        svg.add("text", text=_SIMILARITY_AXIS_LABEL[kind], x=fnum(lx), y=fnum(ly),
                text_anchor="middle", font_family=theme.font_family, font_size="12",
                fill=axis_color)


def _draw_distance_arcs(svg: _Svg, frame: _Frame, view: DiagramView,
                        theme: RenderTheme, clip_id: str):
    """Contours of constant distance measure, centered on the reference mark."""
    ref_x, ref_y = frame.to_screen(view.reference.r, 0.0)
    max_d = frame.radius_px + frame.scale(view.reference.r)
    unit = frame.radius_px / (frame.r_hi - frame.r_lo) if frame.r_hi > frame.r_lo else 0.0
    if unit <= 0:
        return
    for t in _nice_ticks(0.0, max_d / unit, 4):
        if t <= 0:
            continue
        svg.add("circle", cx=fnum(ref_x), cy=fnum(ref_y), r=fnum(t * unit),
                fill="none", stroke="#c8b98c", stroke_width="0.75",
                stroke_dasharray="4 3", clip_path=f"url(#{clip_id})")
    svg.add("text", text=f"{_DISTANCE_AXIS_LABEL[view.kind]} contours",
            x=fnum(ref_x), y=fnum(frame.cy - frame.radius_px - 8), text_anchor="middle",
            font_family=theme.font_family, font_size="10", fill="#a08a50")


def _metric_title(point: DiagramPoint) -> str:
    m = point.metrics
    if m is None:
        return point.model_id
    if hasattr(m, "crmse"):
        return (
            f"{point.model_id}: sd={fnum(m.sigma_model)}, R={fnum(m.correlation)}, "
            f"CRMSE={fnum(m.crmse)}"
        )
    return (
        f"{point.model_id}: H={fnum(m.h_model)}, SMI={fnum(m.smi)}, "
        f"NMI={fnum(m.nmi)}, VI={fnum(m.vi)}"
    )


def _draw_reference(svg: _Svg, frame: _Frame, reference: DiagramPoint, theme: RenderTheme):
    x, y = frame.to_screen(reference.r, 0.0)
    s = theme.base_mark_radius_px
    d = (
        f"M {fnum(x)} {fnum(y - s)} L {fnum(x + s)} {fnum(y)} "
        f"L {fnum(x)} {fnum(y + s)} L {fnum(x - s)} {fnum(y)} Z"
    )
    svg.add("path", d=d, fill="#222222", id="mark-reference",
            title=f"reference: r={fnum(reference.r)}")


def _draw_model_marks(svg: _Svg, frame: _Frame, view: DiagramView, theme: RenderTheme,
                      ordered_ids: tuple[str, ...]):
    for point in sorted(view.points, key=lambda p: p.model_id):
        x, y = frame.to_screen(point.r, point.theta)
        selected = point.model_id in view.selection
        svg.add(
            "circle",
            cx=fnum(x),
            cy=fnum(y),
            r=fnum(theme.base_mark_radius_px),
            fill=color_for(theme, ordered_ids, point.model_id),
            fill_opacity=fnum(theme.mark_alpha),
            stroke="#333333" if not selected else "#000000",
            stroke_width="2.5" if selected else "1",
            id=f"mark-model-{_slug(point.model_id)}",
            **{"class": "model-mark"},
            title=_metric_title(point),
        )


def render_view(view: DiagramView, theme: RenderTheme) -> bytes:
    if view.role is ViewRole.OVERVIEW:
        return _render_overview(view, theme)
    return _render_detail(view, theme)


def _render_detail(view: DiagramView, theme: RenderTheme) -> bytes:
    brushed = view.brush is not None
    r_lo, r_hi = view.brush if brushed else (0.0, view.radial_max)
    if r_hi <= r_lo:
        r_lo, r_hi = 0.0, view.radial_max  # degenerate point brush: keep full axis
    svg = _Svg(theme.canvas_width, theme.canvas_height)
    frame = _make_frame(view.theta_max, theme, width=theme.canvas_width,
                        height=theme.canvas_height, r_lo=r_lo, r_hi=r_hi)
    clip_id = "clip-detail"
    svg.raw(f'<clipPath id="{clip_id}"><path d="{_wedge_path(frame)}"/></clipPath>')
    axis_color = _gray(theme.highlight_gray) if brushed else "#444444"
    if brushed:
        svg.add("path", d=_wedge_path(frame), fill=_gray(theme.highlight_gray),
                fill_opacity="0.25", **{"class": "brush-sector"})
    _draw_axes(svg, frame, view.kind, theme, axis_color=axis_color, with_grid=True)
    if not brushed:
        _draw_distance_arcs(svg, frame, view, theme, clip_id)
    if frame.r_lo <= view.reference.r <= frame.r_hi:
        _draw_reference(svg, frame, view.reference, theme)
    ordered = tuple(sorted(p.model_id for p in view.points))
    _draw_model_marks(svg, frame, view, theme, ordered)
    return svg.to_bytes()


def _render_overview(view: DiagramView, theme: RenderTheme) -> bytes:
    legend_height = 96.0
    svg = _Svg(theme.canvas_width, theme.canvas_height + legend_height)
    frame = _make_frame(view.theta_max, theme, width=theme.canvas_width,
                        height=theme.canvas_height, r_lo=0.0, r_hi=view.radial_max)
    # simplified: outline only, no ticks, labels, or radial grid lines
    svg.add("path", d=_wedge_path(frame), fill="none", stroke="#444444",
            stroke_width="1.5")
    if view.brush is not None:
        svg.add("path", d=_annulus_path(frame, view.brush[0], view.brush[1]),
                fill=_gray(theme.highlight_gray), fill_opacity="0.35",
                **{"class": "brush-sector"})
    _draw_reference(svg, frame, view.reference, theme)
    for cluster in sorted(view.clusters, key=lambda c: c.cluster_id):
        x, y = frame.to_screen(cluster.centroid.r, cluster.centroid.theta)
        svg.add(
            "circle",
            cx=fnum(x),
            cy=fnum(y),
            r=fnum(cluster.mark_radius_px),
            fill="none",
            stroke=_gray(cluster.shade),
            stroke_width="2.5",
            id=f"mark-cluster-{cluster.cluster_id}",
            **{"class": "cluster-mark"},
            title=f"cluster {cluster.cluster_id}: {cluster.count} models",
        )
        svg.add("text", text=str(cluster.cluster_id), x=fnum(x),
                y=fnum(y + 4), text_anchor="middle",
                font_family=theme.font_family, font_size="11", fill="#222222")
    _draw_size_legend(svg, view, theme, top=theme.canvas_height + 8.0)
    return svg.to_bytes()


def _draw_size_legend(svg: _Svg, view: DiagramView, theme: RenderTheme, top: float):
    """Static mark-size scale for cluster counts 1 and the current maximum."""
    svg.add("text", text="cluster size", x=fnum(theme.margin), y=fnum(top + 14),
            font_family=theme.font_family, font_size="12", fill="#444444",
            **{"class": "size-legend"})
    max_count = max((c.count for c in view.clusters), default=1)
    entries = [1] if max_count == 1 else [1, max_count]
    x = theme.margin + 24.0
    for count in entries:
        if max_count > 1:
            radius = MARK_RADIUS_MIN_PX + (MARK_RADIUS_MAX_PX - MARK_RADIUS_MIN_PX) * math.sqrt(
                (count - 1) / (max_count - 1)
            )
        else:
            radius = MARK_RADIUS_MIN_PX
        cy = top + 24.0 + MARK_RADIUS_MAX_PX
        svg.add("circle", cx=fnum(x), cy=fnum(cy), r=fnum(radius), fill="none",
                stroke="#444444", stroke_width="2", **{"class": "size-legend-mark"})
        svg.add("text", text=str(count), x=fnum(x), y=fnum(cy + MARK_RADIUS_MAX_PX + 16),
                text_anchor="middle", font_family=theme.font_family, font_size="11",
                fill="#444444")
        x += 72.0


def render_linking(linking: LinkingAxes, theme: RenderTheme) -> bytes:
    axis_gap = 84.0
    height = axis_gap * 3 + theme.margin
    svg = _Svg(theme.canvas_width, height)
    x0 = theme.margin + 8.0
    x1 = theme.canvas_width - theme.margin
    all_ids = tuple(sorted({mid for axis in linking.axes for mid, _ in axis.entries}))
    for row, axis in enumerate(linking.axes):
        y = theme.margin + row * axis_gap + 36.0
        svg.add("text", text=axis.label, x=fnum(x0), y=fnum(y - 22.0),
                font_family=theme.font_family, font_size="12", fill="#444444")
        svg.add("line", x1=fnum(x0), y1=fnum(y), x2=fnum(x1), y2=fnum(y),
                stroke="#444444", stroke_width="1")
        if not axis.entries:
            continue
        values = [v for _, v in axis.entries]
        lo, hi = min(values), max(values)
        span = hi - lo if hi > lo else 1.0
        pad = span * 0.05
        lo, hi = lo - pad, hi + pad
        for anchor, value in ((x0, lo), (x1, hi)):
            svg.add("text", text=fnum(value), x=fnum(anchor), y=fnum(y + 22.0),
                    text_anchor="middle", font_family=theme.font_family,
                    font_size="10", fill="#777777")
        for model_id, value in sorted(axis.entries):
            px = x0 + (value - lo) / (hi - lo) * (x1 - x0)
            highlighted = model_id in linking.highlighted
            svg.add(
                "circle",
                cx=fnum(px),
                cy=fnum(y),
                r="5" if highlighted else "4",
                fill=color_for(theme, all_ids, model_id),
                fill_opacity=fnum(theme.mark_alpha),
                stroke="#000000" if highlighted else "#333333",
                stroke_width="2" if highlighted else "1",
                id=f"tick-{row}-{_slug(model_id)}",
                **{"class": "linking-tick"},
                title=f"{model_id}: {axis.label}={fnum(value)}",
            )
    return svg.to_bytes()


def render_grid(grid: GridLayout, theme: RenderTheme) -> bytes:
    if len(grid.model_ids) > len(theme.palette):
        raise ThemeCapacityExceededError(
            f"{len(grid.model_ids)} models exceed the palette of {len(theme.palette)}"
        )
    cell_w, cell_h = 380.0, 300.0
    pad = 16.0
    legend_height = 26.0 * len(grid.model_ids) + 40.0
    width = grid.cols * cell_w + (grid.cols + 1) * pad
    height = grid.rows * cell_h + (grid.rows + 1) * pad + legend_height
    svg = _Svg(width, height)
    ordered = tuple(sorted(grid.model_ids))
    small = RenderTheme(
        canvas_width=cell_w,
        canvas_height=cell_h,
        margin=30.0,
        font_family=theme.font_family,
        base_mark_radius_px=max(4.0, theme.base_mark_radius_px - 2.0),
        highlight_gray=theme.highlight_gray,
        mark_alpha=theme.mark_alpha,
        palette=theme.palette,
    )
    for index, cell in enumerate(grid.cells):
        row, col = divmod(index, grid.cols)
        ox = pad + col * (cell_w + pad)
        oy = pad + row * (cell_h + pad)
        svg.raw(f'<g transform="translate({fnum(ox)} {fnum(oy)})" class="grid-cell" '
                f'id="cell-{index}">')
        frame = _make_frame(cell.view.theta_max, small, width=cell_w, height=cell_h,
                            r_lo=0.0, r_hi=cell.view.radial_max)
        _draw_axes(svg, frame, grid.kind, small, axis_color="#444444", with_grid=True)
        _draw_reference(svg, frame, cell.view.reference, small)
        for model_id, start, end in sorted(cell.pairs, key=lambda p: p[0]):
            color = color_for(small, ordered, model_id)
            sx, sy = frame.to_screen(start.r, start.theta)
            ex, ey = frame.to_screen(end.r, end.theta)
            svg.add("line", x1=fnum(sx), y1=fnum(sy), x2=fnum(ex), y2=fnum(ey),
                    stroke=color, stroke_width="1", stroke_opacity="0.8",
                    **{"class": "pair-trail"})
            svg.add("circle", cx=fnum(sx), cy=fnum(sy), r=fnum(small.base_mark_radius_px),
                    fill="none", stroke=color, stroke_width="1.5",
                    id=f"mark-start-{index}-{_slug(model_id)}",
                    **{"class": "model-mark model-mark-start"},
                    title=f"{model_id} (earlier)")
            svg.add("circle", cx=fnum(ex), cy=fnum(ey), r=fnum(small.base_mark_radius_px),
                    fill=color, fill_opacity=fnum(small.mark_alpha), stroke=color,
                    stroke_width="1.5", id=f"mark-end-{index}-{_slug(model_id)}",
                    **{"class": "model-mark model-mark-end"},
                    title=f"{model_id} (later)")
        svg.add("text", text=cell.annotation, x=fnum(cell_w - 8.0), y=fnum(18.0),
                text_anchor="end", font_family=theme.font_family, font_size="12",
                fill="#222222", **{"class": "cell-annotation"})
        svg.raw("</g>")
    # shared legend below the bottom-left cell
    legend_x = pad
    legend_y = grid.rows * cell_h + (grid.rows + 1) * pad + 18.0
    svg.add("text", text="models", x=fnum(legend_x), y=fnum(legend_y),
            font_family=theme.font_family, font_size="12", fill="#444444")
    for i, model_id in enumerate(grid.model_ids):
        y = legend_y + 22.0 + i * 26.0
        svg.add("circle", cx=fnum(legend_x + 8.0), cy=fnum(y - 4.0), r="7",
                fill=color_for(theme, ordered, model_id),
                fill_opacity=fnum(theme.mark_alpha), stroke="#333333", stroke_width="1",
                **{"class": "legend-swatch"})
        svg.add("text", text=model_id, x=fnum(legend_x + 24.0), y=fnum(y),
                font_family=theme.font_family, font_size="12", fill="#222222")
    return svg.to_bytes()


def render(obj, theme: RenderTheme | None = None) -> bytes:
    """Render any view object to SVG 1.1 bytes (pure and deterministic)."""
    theme = theme or RenderTheme()
    if isinstance(obj, DiagramView):
        if obj.role is not ViewRole.OVERVIEW and len(obj.points) > len(theme.palette):
            raise ThemeCapacityExceededError(
                f"{len(obj.points)} marks exceed the palette of {len(theme.palette)}"
            )
        return render_view(obj, theme)
    if isinstance(obj, LinkingAxes):
        return render_linking(obj, theme)
    if isinstance(obj, GridLayout):
        return render_grid(obj, theme)
    raise InvariantError(f"cannot render object of type {type(obj).__name__}")
