// UiState and its pure transition functions. The state is serializable and is
// enough to reconstruct the displayed views through one /api/view or /api/grid
// call, which is what the round-trip tests assert.

import { ClusterPayload, DiagramKind } from './types.js';

export type Page = 'overview_detail' | 'small_multiples';

export interface UiState {
  datasetId: string;
  kind: DiagramKind;
  brush: [number, number] | null;
  hidden: string[];
  selectedCluster: number | null;
  page: Page;
}

export interface ViewRequestBody {
  dataset_id: string;
  kind: DiagramKind;
  brush: [number, number] | null;
  hidden: string[];
  selected_cluster: number | null;
}

export function initialState(datasetId: string, kind: DiagramKind): UiState {
  return {
    datasetId,
    kind,
    brush: null,
    hidden: [],
    selectedCluster: null,
    page: 'overview_detail',
  };
}

export function toViewRequest(ui: UiState): ViewRequestBody {
  return {
    dataset_id: ui.datasetId,
    kind: ui.kind,
    brush: ui.brush,
    hidden: [...ui.hidden].sort(),
    selected_cluster: ui.selectedCluster,
  };
}

export function serializeUiState(ui: UiState): string {
  return JSON.stringify(ui);
}

export function parseUiState(raw: string): UiState {
  const parsed = JSON.parse(raw) as UiState;
  return {
    datasetId: parsed.datasetId,
    kind: parsed.kind,
    brush: parsed.brush === null ? null : [parsed.brush[0], parsed.brush[1]],
    hidden: [...parsed.hidden],
    selectedCluster: parsed.selectedCluster,
    page: parsed.page,
  };
}

/** Drags shorter than this many pixels are accidental clicks, not brushes. */
export const MIN_DRAG_PX = 3;

/**
 * Map a drag on the overview to a radial interval. Distances are measured
 * from the polar origin; the interval is clamped to [0, radialMax].
 */
export function brushFromDrag(
  start: { x: number; y: number },
  end: { x: number; y: number },
  center: { x: number; y: number },
  pxPerUnit: number,
  radialMax: number,
): [number, number] | null {
  const dragPx = Math.hypot(end.x - start.x, end.y - start.y);
  if (dragPx < MIN_DRAG_PX || pxPerUnit <= 0) {
    return null;
  }
  const r0 = Math.hypot(start.x - center.x, start.y - center.y) / pxPerUnit;
  const r1 = Math.hypot(end.x - center.x, end.y - center.y) / pxPerUnit;
  const lo = Math.max(0, Math.min(r0, r1));
  const hi = Math.min(radialMax, Math.max(r0, r1));
  if (hi <= lo) {
    return null;
  }
  return [lo, hi];
}

export function applyBrush(ui: UiState, brush: [number, number] | null): UiState {
  return { ...ui, brush };
}

/** Legend single click on the overview+detail page: toggle model visibility. */
export function toggleHidden(ui: UiState, modelId: string): UiState {
  const hidden = ui.hidden.includes(modelId)
    ? ui.hidden.filter((m) => m !== modelId)
    : [...ui.hidden, modelId];
  return { ...ui, hidden };
}

/** Legend double click: select the whole cluster the model belongs to. */
export function selectClusterOf(
  ui: UiState,
  clusters: ClusterPayload[],
  modelId: string,
): UiState {
  const cluster = clusters.find((c) => c.member_ids.includes(modelId));
  if (!cluster) {
    return ui;
  }
  return { ...ui, selectedCluster: cluster.cluster_id };
}

/** The reset control: back to the unfiltered initial view. */
export function resetState(ui: UiState): UiState {
  return { ...ui, brush: null, hidden: [], selectedCluster: null };
}

export function switchDataset(ui: UiState, datasetId: string, versioned: boolean): UiState {
  return {
    ...initialState(datasetId, ui.kind),
    page: versioned ? 'small_multiples' : 'overview_detail',
  };
}

export function switchKind(ui: UiState, kind: DiagramKind): UiState {
  // measure space changes entirely, so interaction state is cleared
  return { ...initialState(ui.datasetId, kind), page: ui.page };
}

// -------------------------------------------------- small-multiples legend

export type GridHighlight = { mode: 'only' | 'except'; modelId: string } | null;

/** Grid page single click: highlight all marks except the clicked one. */
export function gridSingleClick(current: GridHighlight, modelId: string): GridHighlight {
  if (current && current.mode === 'except' && current.modelId === modelId) {
    return null;
  }
  return { mode: 'except', modelId };
}

/** Grid page double click: highlight the clicked mark across all cells. */
export function gridDoubleClick(current: GridHighlight, modelId: string): GridHighlight {
  if (current && current.mode === 'only' && current.modelId === modelId) {
    return null;
  }
  return { mode: 'only', modelId };
}

export function isGridHighlighted(highlight: GridHighlight, modelId: string): boolean {
  if (!highlight) {
    return true;
  }
  return highlight.mode === 'only'
    ? highlight.modelId === modelId
    : highlight.modelId !== modelId;
}

/** Models selected by a rectangular brush over a cell (closed rectangle). */
export function rectSelection(
  points: { model_id: string; x: number; y: number }[],
  rect: { x0: number; y0: number; x1: number; y1: number },
): string[] {
  const xLo = Math.min(rect.x0, rect.x1);
  const xHi = Math.max(rect.x0, rect.x1);
  const yLo = Math.min(rect.y0, rect.y1);
  const yHi = Math.max(rect.y0, rect.y1);
  const ids = points
    .filter((p) => p.x >= xLo && p.x <= xHi && p.y >= yLo && p.y <= yHi)
    .map((p) => p.model_id);
  return [...new Set(ids)].sort();
}
