// SVG DOM builders for the dashboard panels. Rendering is a pure function of
// the server payload plus the interaction handlers wired in by main.ts.

import {
  Frame,
  annulusPath,
  colorFor,
  formatAxisValue,
  makeFrame,
  niceTicks,
  scaleRadius,
  toScreen,
  tooltipLines,
  wedgePath,
} from './layout.js';
import { GridHighlight, isGridHighlighted } from './state.js';
import {
  GridResponse,
  LinkingPayload,
  PointPayload,
  ViewPayload,
  WarningPayload,
} from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const HIGHLIGHT_GRAY = '#a0a0a0';
const MARK_RADIUS = 7;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function canvas(width: number, height: number): SVGSVGElement {
  const svg = svgEl('svg', { viewBox: `0 0 ${width} ${height}` });
  svg.setAttribute('preserveAspectRatio', 'xMidYMid meet');
  return svg;
}

// ------------------------------------------------------------------ tooltip

let tooltipDiv: HTMLDivElement | null = null;

function tooltip(): HTMLDivElement {
  if (!tooltipDiv) {
    tooltipDiv = document.createElement('div');
    tooltipDiv.id = 'tooltip';
    tooltipDiv.hidden = true;
    document.body.appendChild(tooltipDiv);
  }
  return tooltipDiv;
}

export function showTooltip(lines: string[], clientX: number, clientY: number): void {
  const div = tooltip();
  div.replaceChildren(
    ...lines.map((line, i) => {
      const p = document.createElement('div');
      p.textContent = line;
      if (i === 0) {
        p.className = 'tooltip-title';
      }
      return p;
    }),
  );
  div.style.left = `${clientX + 12}px`;
  div.style.top = `${clientY + 12}px`;
  div.hidden = false;
}

export function hideTooltip(): void {
  tooltip().hidden = true;
}

function attachTooltip(node: SVGElement, lines: () => string[]): void {
  node.addEventListener('mousemove', (event) =>
    showTooltip(lines(), event.clientX, event.clientY),
  );
  node.addEventListener('mouseleave', hideTooltip);
}

// ------------------------------------------------------------------- panels

function drawAxes(
  svg: SVGSVGElement,
  frame: Frame,
  color: string,
  withTicks: boolean,
): void {
  svg.appendChild(
    svgEl('path', { d: wedgePath(frame), fill: 'none', stroke: color, 'stroke-width': 1.5 }),
  );
  if (!withTicks) {
    return;
  }
  for (const t of niceTicks(frame.rLo, frame.rHi)) {
    if (t < frame.rLo || t > frame.rHi) {
      continue;
    }
    const rho = scaleRadius(frame, t);
    if (rho > 0 && rho < frame.radiusPx) {
      const x1 = frame.cx + rho * Math.cos(frame.thetaMax);
      const y1 = frame.cy - rho * Math.sin(frame.thetaMax);
      const large = frame.thetaMax > Math.PI / 2 + 1e-12 ? 1 : 0;
      svg.appendChild(
        svgEl('path', {
          d: `M ${frame.cx + rho} ${frame.cy} A ${rho} ${rho} 0 ${large} 0 ${x1} ${y1}`,
          fill: 'none',
          stroke: '#dddddd',
          'stroke-width': 0.75,
        }),
      );
    }
    const label = svgEl('text', {
      x: frame.cx + rho,
      y: frame.cy + 16,
      'text-anchor': 'middle',
      'font-size': 10,
      fill: color,
    });
    label.textContent = formatAxisValue(t);
    svg.appendChild(label);
  }
}

function drawReference(svg: SVGSVGElement, frame: Frame, reference: PointPayload): void {
  const { x, y } = toScreen(frame, reference.r, 0);
  const s = MARK_RADIUS;
  const mark = svgEl('path', {
    d: `M ${x} ${y - s} L ${x + s} ${y} L ${x} ${y + s} L ${x - s} ${y} Z`,
    fill: '#222222',
    class: 'reference-mark',
  });
  attachTooltip(mark, () => ['reference', `radial value: ${formatAxisValue(reference.r)}`]);
  svg.appendChild(mark);
}

export interface OverviewHandlers {
  onBrushDrag: (
    start: { x: number; y: number },
    end: { x: number; y: number },
    frame: Frame,
  ) => void;
}

export function renderOverview(
  host: HTMLElement,
  view: ViewPayload,
  handlers: OverviewHandlers,
): void {
  const width = 360;
  const height = view.theta_max > Math.PI / 2 + 1e-12 ? 240 : 320;
  const svg = canvas(width, height);
  svg.classList.add('overview-svg');
  const frame = makeFrame(view, width, height, 28);

  // simplified: outline only, no ticks or radial grid
  drawAxes(svg, frame, '#444444', false);
  if (view.brush) {
    svg.appendChild(
      svgEl('path', {
        d: annulusPath(frame, view.brush[0], view.brush[1]),
        fill: HIGHLIGHT_GRAY,
        'fill-opacity': 0.35,
        class: 'brush-sector',
      }),
    );
  }
  drawReference(svg, frame, view.reference);
  for (const cluster of view.clusters) {
    const { x, y } = toScreen(frame, cluster.centroid.r, cluster.centroid.theta);
    const gray = cluster.shade.toString(16).padStart(2, '0');
    const circle = svgEl('circle', {
      cx: x,
      cy: y,
      r: cluster.mark_radius_px,
      fill: 'none',
      stroke: `#${gray}${gray}${gray}`,
      'stroke-width': 2.5,
      class: 'cluster-mark',
      'data-cluster': cluster.cluster_id,
    });
    attachTooltip(circle, () => [
      `cluster ${cluster.cluster_id}`,
      `${cluster.count} model${cluster.count === 1 ? '' : 's'}`,
      ...cluster.member_ids,
    ]);
    svg.appendChild(circle);
    const label = svgEl('text', {
      x,
      y: y + 4,
      'text-anchor': 'middle',
      'font-size': 11,
      fill: '#222222',
    });
    label.textContent = String(cluster.cluster_id);
    svg.appendChild(label);
  }

  // radial brush: drag anywhere on the overview
  let dragStart: { x: number; y: number } | null = null;
  const toLocal = (event: MouseEvent) => {
    const rect = svg.getBoundingClientRect();
    const sx = rect.width > 0 ? width / rect.width : 1;
    const sy = rect.height > 0 ? height / rect.height : 1;
    return { x: (event.clientX - rect.left) * sx, y: (event.clientY - rect.top) * sy };
  };
  svg.addEventListener('mousedown', (event) => {
    dragStart = toLocal(event);
    event.preventDefault();
  });
  svg.addEventListener('mouseup', (event) => {
    if (dragStart) {
      handlers.onBrushDrag(dragStart, toLocal(event), frame);
      dragStart = null;
    }
  });
  svg.addEventListener('mouseleave', () => {
    dragStart = null;
  });

  host.replaceChildren(svg);
}

export function renderDetail(
  host: HTMLElement,
  view: ViewPayload,
  orderedIds: string[],
): void {
  const width = 760;
  const height = view.theta_max > Math.PI / 2 + 1e-12 ? 470 : 620;
  const svg = canvas(width, height);
  svg.classList.add('detail-svg');
  const brushed = view.brush !== null;
  const frame = makeFrame(view, width, height, 48, true);
  if (brushed) {
    svg.appendChild(
      svgEl('path', {
        d: wedgePath(frame),
        fill: HIGHLIGHT_GRAY,
        'fill-opacity': 0.18,
        class: 'brush-sector',
      }),
    );
  }
  drawAxes(svg, frame, brushed ? HIGHLIGHT_GRAY : '#444444', true);
  if (view.reference.r >= frame.rLo && view.reference.r <= frame.rHi) {
    drawReference(svg, frame, view.reference);
  }
  const selected = new Set(view.selection);
  for (const point of [...view.points].sort((a, b) => a.model_id.localeCompare(b.model_id))) {
    const { x, y } = toScreen(frame, point.r, point.theta);
    const isSelected = selected.size > 0 && selected.has(point.model_id);
    const dimmed = selected.size > 0 && !isSelected;
    const mark = svgEl('circle', {
      cx: x,
      cy: y,
      r: MARK_RADIUS,
      fill: colorFor(orderedIds, point.model_id),
      'fill-opacity': dimmed ? 0.15 : 0.55,
      stroke: isSelected ? '#000000' : '#333333',
      'stroke-width': isSelected ? 2.5 : 1,
      class: 'model-mark',
      'data-model': point.model_id,
    });
    attachTooltip(mark, () => tooltipLines(point.model_id, point.metrics));
    svg.appendChild(mark);
  }
  host.replaceChildren(svg);
}

export function renderLinking(
  host: HTMLElement,
  linking: LinkingPayload,
  orderedIds: string[],
): void {
  const width = 360;
  const rowHeight = 64;
  const height = rowHeight * linking.axes.length + 12;
  const svg = canvas(width, height);
  svg.classList.add('linking-svg');
  const x0 = 16;
  const x1 = width - 16;
  const highlighted = new Set(linking.highlighted);
  linking.axes.forEach((axis, row) => {
    const y = row * rowHeight + 40;
    const label = svgEl('text', { x: x0, y: y - 18, 'font-size': 11, fill: '#444444' });
    label.textContent = axis.label;
    svg.appendChild(label);
    svg.appendChild(
      svgEl('line', { x1: x0, y1: y, x2: x1, y2: y, stroke: '#444444', 'stroke-width': 1 }),
    );
    if (axis.entries.length === 0) {
      return;
    }
    const values = axis.entries.map(([, v]) => v);
    let lo = Math.min(...values);
    let hi = Math.max(...values);
    const pad = (hi - lo || 1) * 0.05;
    lo -= pad;
    hi += pad;
    for (const [anchor, value] of [
      [x0, lo],
      [x1, hi],
    ] as [number, number][]) {
      const text = svgEl('text', {
        x: anchor,
        y: y + 18,
        'text-anchor': 'middle',
        'font-size': 9,
        fill: '#777777',
      });
      text.textContent = formatAxisValue(value);
      svg.appendChild(text);
    }
    for (const [modelId, value] of axis.entries) {
      const px = x0 + ((value - lo) / (hi - lo)) * (x1 - x0);
      const active = highlighted.size === 0 || highlighted.has(modelId);
      const tick = svgEl('circle', {
        cx: px,
        cy: y,
        r: highlighted.has(modelId) ? 5 : 4,
        fill: colorFor(orderedIds, modelId),
        'fill-opacity': active ? 0.6 : 0.12,
        stroke: highlighted.has(modelId) ? '#000000' : '#333333',
        'stroke-width': highlighted.has(modelId) ? 2 : 1,
        class: 'linking-tick',
        'data-model': modelId,
      });
      attachTooltip(tick, () => [modelId, `${axis.label}: ${formatAxisValue(value)}`]);
      svg.appendChild(tick);
    }
  });
  host.replaceChildren(svg);
}

export function renderSizeLegend(host: HTMLElement, view: ViewPayload): void {
  const counts = view.clusters.map((c) => c.count);
  const maxCount = counts.length > 0 ? Math.max(...counts) : 1;
  const entries = maxCount === 1 ? [1] : [1, maxCount];
  const byCount = new Map(view.clusters.map((c) => [c.count, c.mark_radius_px]));
  const radius = (count: number) => byCount.get(count) ?? 6;
  const svg = canvas(220, 64);
  svg.classList.add('size-legend-svg');
  const title = svgEl('text', { x: 4, y: 14, 'font-size': 11, fill: '#444444' });
  title.textContent = 'cluster size';
  svg.appendChild(title);
  entries.forEach((count, i) => {
    const cx = 40 + i * 70;
    svg.appendChild(
      svgEl('circle', {
        cx,
        cy: 36,
        r: radius(count),
        fill: 'none',
        stroke: '#444444',
        'stroke-width': 2,
        class: 'size-legend-mark',
      }),
    );
    const label = svgEl('text', {
      x: cx + radius(count) + 6,
      y: 40,
      'font-size': 11,
      fill: '#444444',
    });
    label.textContent = String(count);
    svg.appendChild(label);
  });
  host.replaceChildren(svg);
}

export interface LegendHandlers {
  onSingleClick: (modelId: string) => void;
  onDoubleClick: (modelId: string) => void;
}

/** Click/double-click discrimination window in milliseconds. */
const DOUBLE_CLICK_MS = 280;

export function renderLegend(
  host: HTMLElement,
  entries: { modelId: string; clusterId: number | null }[],
  orderedIds: string[],
  hidden: string[],
  selection: string[],
  handlers: LegendHandlers,
): void {
  const list = document.createElement('ul');
  list.className = 'legend-list';
  const hiddenSet = new Set(hidden);
  const selectedSet = new Set(selection);
  for (const entry of entries) {
    const item = document.createElement('li');
    item.className = 'legend-item';
    item.dataset.model = entry.modelId;
    if (hiddenSet.has(entry.modelId)) {
      item.classList.add('legend-hidden');
    }
    if (selectedSet.has(entry.modelId)) {
      item.classList.add('legend-selected');
    }
    const swatch = document.createElement('span');
    swatch.className = 'legend-swatch';
    swatch.style.backgroundColor = colorFor(orderedIds, entry.modelId);
    const name = document.createElement('span');
    name.textContent = entry.modelId;
    item.append(swatch, name);
    if (entry.clusterId !== null) {
      const badge = document.createElement('span');
      badge.className = 'legend-cluster';
      badge.textContent = String(entry.clusterId);
      item.appendChild(badge);
    }
    let pending: number | null = null;
    item.addEventListener('click', () => {
      if (pending !== null) {
        return;
      }
      pending = window.setTimeout(() => {
        pending = null;
        handlers.onSingleClick(entry.modelId);
      }, DOUBLE_CLICK_MS);
    });
    item.addEventListener('dblclick', () => {
      if (pending !== null) {
        window.clearTimeout(pending);
        pending = null;
      }
      handlers.onDoubleClick(entry.modelId);
    });
    list.appendChild(item);
  }
  host.replaceChildren(list);
}

export function renderWarnings(host: HTMLElement, warnings: WarningPayload[]): void {
  if (warnings.length === 0) {
    host.replaceChildren();
    host.hidden = true;
    return;
  }
  host.hidden = false;
  const title = document.createElement('strong');
  title.textContent = 'Warnings';
  const list = document.createElement('ul');
  for (const warning of warnings) {
    const item = document.createElement('li');
    item.dataset.code = warning.code;
    item.textContent = warning.message;
    list.appendChild(item);
  }
  host.replaceChildren(title, list);
}

export interface GridHandlers {
  onMarkSingleClick: (modelId: string) => void;
  onMarkDoubleClick: (modelId: string) => void;
}

export function renderGrid(
  host: HTMLElement,
  grid: GridResponse,
  highlight: GridHighlight,
  handlers: GridHandlers,
): void {
  const orderedIds = [...grid.model_ids].sort();
  const container = document.createElement('div');
  container.className = 'grid-sheet';
  container.style.gridTemplateColumns = `repeat(${grid.cols}, 1fr)`;
  for (const cell of grid.cells) {
    const cellDiv = document.createElement('div');
    cellDiv.className = 'grid-cell';
    const width = 340;
    const height = grid.theta_max > Math.PI / 2 + 1e-12 ? 220 : 280;
    const svg = canvas(width, height);
    const frame = makeFrame(
      { theta_max: grid.theta_max, radial_max: grid.radial_max, brush: null },
      width,
      height,
      26,
    );
    drawAxes(svg, frame, '#444444', true);
    drawReference(svg, frame, cell.view.reference);
    for (const pair of cell.pairs) {
      const color = colorFor(orderedIds, pair.model_id);
      const active = isGridHighlighted(highlight, pair.model_id);
      const s = toScreen(frame, pair.start.r, pair.start.theta);
      const e = toScreen(frame, pair.end.r, pair.end.theta);
      const opacity = active ? 0.8 : 0.1;
      svg.appendChild(
        svgEl('line', {
          x1: s.x,
          y1: s.y,
          x2: e.x,
          y2: e.y,
          stroke: color,
          'stroke-opacity': opacity,
          class: 'pair-trail',
        }),
      );
      const hollow = svgEl('circle', {
        cx: s.x,
        cy: s.y,
        r: 5,
        fill: 'none',
        stroke: color,
        'stroke-opacity': active ? 1 : 0.15,
        'stroke-width': 1.5,
        class: 'grid-mark grid-mark-start',
        'data-model': pair.model_id,
      });
      const filled = svgEl('circle', {
        cx: e.x,
        cy: e.y,
        r: 5,
        fill: color,
        'fill-opacity': active ? 0.6 : 0.08,
        stroke: color,
        'stroke-opacity': active ? 1 : 0.15,
        class: 'grid-mark grid-mark-end',
        'data-model': pair.model_id,
      });
      for (const mark of [hollow, filled]) {
        attachTooltip(mark, () => [
          pair.model_id,
          cell.annotation,
          mark === hollow ? 'earlier version' : 'later version',
        ]);
        let pending: number | null = null;
        mark.addEventListener('click', () => {
          if (pending !== null) {
            return;
          }
          pending = window.setTimeout(() => {
            pending = null;
            handlers.onMarkSingleClick(pair.model_id);
          }, DOUBLE_CLICK_MS);
        });
        mark.addEventListener('dblclick', () => {
          if (pending !== null) {
            window.clearTimeout(pending);
            pending = null;
          }
          handlers.onMarkDoubleClick(pair.model_id);
        });
      }
      svg.append(hollow, filled);
    }
    const annotation = document.createElement('div');
    annotation.className = 'grid-annotation';
    annotation.textContent = cell.annotation;
    cellDiv.append(annotation, svg);
    container.appendChild(cellDiv);
  }
  host.replaceChildren(container);
}
