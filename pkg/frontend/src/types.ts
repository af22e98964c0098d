// Payload types mirroring the server's published schema. The dashboard never
// computes metrics itself: every number shown on screen comes from these.

export type DiagramKind = 'taylor' | 'smi' | 'nmi';
export type ViewName = 'overview' | 'detail' | 'linking' | 'grid';

export interface TaylorMetricsPayload {
  flavor: 'taylor';
  sigma_ref: number;
  sigma_model: number;
  correlation: number;
  crmse: number;
}

export interface InfoMetricsPayload {
  flavor: 'info';
  h_ref: number;
  h_model: number;
  mi: number;
  smi: number;
  nmi: number;
  vi: number;
  rvi: number;
  degenerate: boolean;
}

export type MetricsPayload = TaylorMetricsPayload | InfoMetricsPayload;

export interface PointPayload {
  model_id: string;
  r: number;
  theta: number;
  x: number;
  y: number;
  metrics: MetricsPayload | null;
}

export interface ClusterPayload {
  cluster_id: number;
  member_ids: string[];
  centroid: PointPayload;
  count: number;
  shade: number;
  mark_radius_px: number;
}

export interface WarningPayload {
  code: 'occlusion' | 'model_cap' | 'grid_size' | 'degenerate_entropy';
  affected_ids: string[];
  message: string;
}

export interface ViewPayload {
  kind: DiagramKind;
  role: 'overview' | 'detail' | 'grid_cell';
  radial_max: number;
  theta_max: number;
  brush: [number, number] | null;
  selection: string[];
  reference: PointPayload;
  points: PointPayload[];
  clusters: ClusterPayload[];
  warnings: WarningPayload[];
}

export interface AxisPayload {
  label: string;
  entries: [string, number][];
}

export interface LinkingPayload {
  axes: AxisPayload[];
  highlighted: string[];
}

export interface ViewResponse {
  dataset_id: string | null;
  kind: DiagramKind;
  overview: ViewPayload;
  detail: ViewPayload;
  linking: LinkingPayload;
  warnings: WarningPayload[];
}

export interface GridCellPayload {
  annotation: string;
  view: ViewPayload;
  pairs: { model_id: string; start: PointPayload; end: PointPayload }[];
}

export interface GridResponse {
  dataset_id: string | null;
  kind: DiagramKind;
  rows: number;
  cols: number;
  radial_max: number;
  theta_max: number;
  model_ids: string[];
  warnings: WarningPayload[];
  cells: GridCellPayload[];
}

export interface DatasetSummary {
  id: string;
  title: string;
  provenance: string;
  model_count: number;
  versioned: boolean;
  available: boolean;
  error: string | null;
}

export interface ApiError {
  error: { code: string; message: string };
}
