// Pure presentation math shared by the panel renderers: polar frames, the
// model palette, and tick generation. No DOM access here, so it is testable.

import { DiagramKind, MetricsPayload, ViewPayload } from './types.js';

// Mirrors the server palette so exported SVGs and the live view agree.
export const PALETTE = [
  '#1f77b4', '#aec7e8', '#ff7f0e', '#ffbb78', '#2ca02c', '#98df8a',
  '#d62728', '#ff9896', '#9467bd', '#c5b0d5', '#8c564b', '#c49c94',
  '#e377c2', '#f7b6d2', '#7f7f7f', '#c7c7c7', '#bcbd22', '#dbdb8d',
  '#17becf', '#9edae5', '#8c6d31',
];

export function colorFor(orderedIds: string[], modelId: string): string {
  const index = orderedIds.indexOf(modelId);
  return PALETTE[index >= 0 ? index % PALETTE.length : 0];
}

export interface Frame {
  cx: number;
  cy: number;
  radiusPx: number;
  rLo: number;
  rHi: number;
  thetaMax: number;
}

export function makeFrame(
  view: { theta_max: number; radial_max: number; brush: [number, number] | null },
  width: number,
  height: number,
  margin: number,
  zoomToBrush = false,
): Frame {
  let rLo = 0;
  let rHi = view.radial_max;
  if (zoomToBrush && view.brush && view.brush[1] > view.brush[0]) {
    [rLo, rHi] = view.brush;
  }
  if (view.theta_max > Math.PI / 2 + 1e-12) {
    const radiusPx = Math.min(width / 2 - margin, height - 2 * margin);
    return { cx: width / 2, cy: height - margin, radiusPx, rLo, rHi, thetaMax: view.theta_max };
  }
  const radiusPx = Math.min(width - 2 * margin, height - 2 * margin);
  return { cx: margin, cy: height - margin, radiusPx, rLo, rHi, thetaMax: view.theta_max };
}

export function scaleRadius(frame: Frame, r: number): number {
  const span = frame.rHi - frame.rLo;
  if (span <= 0) {
    return 0;
  }
  return Math.max(0, (r - frame.rLo) / span) * frame.radiusPx;
}

export function toScreen(frame: Frame, r: number, theta: number): { x: number; y: number } {
  const rho = scaleRadius(frame, r);
  return { x: frame.cx + rho * Math.cos(theta), y: frame.cy - rho * Math.sin(theta) };
}

export function pxPerUnit(frame: Frame): number {
  const span = frame.rHi - frame.rLo;
  return span > 0 ? frame.radiusPx / span : 0;
}

export function niceTicks(lo: number, hi: number, target = 5): number[] {
  const span = hi - lo;
  if (span <= 0) {
    return [lo];
  }
  const raw = span / target;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    step = mult * power;
    if (span / step <= target) {
      break;
    }
  }
  const ticks: number[] = [];
  let t = Math.ceil(lo / step) * step;
  while (t <= hi + step * 1e-9) {
    ticks.push(Math.round(t / step) * step);
    t += step;
  }
  return ticks;
}

export function wedgePath(frame: Frame): string {
  const r = frame.radiusPx;
  const x1 = frame.cx + r * Math.cos(frame.thetaMax);
  const y1 = frame.cy - r * Math.sin(frame.thetaMax);
  const large = frame.thetaMax > Math.PI / 2 + 1e-12 ? 1 : 0;
  return `M ${frame.cx} ${frame.cy} L ${frame.cx + r} ${frame.cy} A ${r} ${r} 0 ${large} 0 ${x1} ${y1} Z`;
}

export function annulusPath(frame: Frame, r0: number, r1: number): string {
  const rho0 = scaleRadius(frame, r0);
  const rho1 = scaleRadius(frame, r1);
  const large = frame.thetaMax > Math.PI / 2 + 1e-12 ? 1 : 0;
  const ax1 = frame.cx + rho1 * Math.cos(frame.thetaMax);
  const ay1 = frame.cy - rho1 * Math.sin(frame.thetaMax);
  const bx1 = frame.cx + rho0 * Math.cos(frame.thetaMax);
  const by1 = frame.cy - rho0 * Math.sin(frame.thetaMax);
  return (
    `M ${frame.cx + rho1} ${frame.cy} A ${rho1} ${rho1} 0 ${large} 0 ${ax1} ${ay1} ` +
    `L ${bx1} ${by1} A ${rho0} ${rho0} 0 ${large} 1 ${frame.cx + rho0} ${frame.cy} Z`
  );
}

const KIND_TITLES: Record<DiagramKind, string> = {
  taylor: 'Taylor diagram',
  smi: 'Scaled mutual information diagram',
  nmi: 'Normalized mutual information diagram',
};

export function kindTitle(kind: DiagramKind): string {
  return KIND_TITLES[kind];
}

const fmt = (v: number) => Number(v.toPrecision(6)).toString();

/** Tooltip lines for one model mark: the exact metric triple from the server. */
export function tooltipLines(modelId: string, metrics: MetricsPayload | null): string[] {
  if (!metrics) {
    return [modelId];
  }
  if (metrics.flavor === 'taylor') {
    return [
      modelId,
      `standard deviation: ${fmt(metrics.sigma_model)}`,
      `correlation: ${fmt(metrics.correlation)}`,
      `CRMSE: ${fmt(metrics.crmse)}`,
    ];
  }
  return [
    modelId,
    `entropy: ${fmt(metrics.h_model)} bits`,
    `SMI: ${fmt(metrics.smi)}`,
    `NMI: ${fmt(metrics.nmi)}`,
    `VI: ${fmt(metrics.vi)} bits`,
  ];
}

export function formatAxisValue(value: number): string {
  return fmt(value);
}

export function orderedModelIds(view: ViewPayload): string[] {
  return view.points.map((p) => p.model_id).slice().sort();
}
