// Dashboard bootstrap: wires the API client, UiState transitions, and panel
// renderers together. Layout follows the rule of thirds: overview + size
// legend + linking plot in the first third, the detail diagram in the rest,
// with the interactive legend on the boundary.

import { ApiClient } from './api.js';
import { kindTitle, orderedModelIds } from './layout.js';
import {
  hideTooltip,
  renderDetail,
  renderGrid,
  renderLegend,
  renderLinking,
  renderOverview,
  renderSizeLegend,
  renderWarnings,
} from './render.js';
import {
  GridHighlight,
  UiState,
  applyBrush,
  brushFromDrag,
  gridDoubleClick,
  gridSingleClick,
  initialState,
  resetState,
  selectClusterOf,
  switchDataset,
  switchKind,
  toggleHidden,
} from './state.js';
import { DatasetSummary, DiagramKind, GridResponse, ViewName, ViewResponse } from './types.js';

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

class Dashboard {
  private readonly client = new ApiClient('');
  private datasets: DatasetSummary[] = [];
  private ui: UiState = initialState('', 'taylor');
  private view: ViewResponse | null = null;
  private grid: GridResponse | null = null;
  private gridHighlight: GridHighlight = null;
  private requestSeq = 0; // newer gestures supersede pending responses

  async start(): Promise<void> {
    this.datasets = await this.client.listDatasets();
    this.renderSidebar();
    this.wireHeader();
    const first = this.datasets.find((d) => d.available && !d.versioned) ?? this.datasets[0];
    if (first) {
      await this.selectDataset(first.id);
    }
  }

  private dataset(): DatasetSummary | undefined {
    return this.datasets.find((d) => d.id === this.ui.datasetId);
  }

  private wireHeader(): void {
    const selector = byId<HTMLSelectElement>('kind-select');
    selector.addEventListener('change', () => {
      this.ui = switchKind(this.ui, selector.value as DiagramKind);
      this.gridHighlight = null;
      void this.refresh();
    });
    byId<HTMLButtonElement>('reset-button').addEventListener('click', () => {
      this.ui = resetState(this.ui);
      void this.refresh();
    });
    byId<HTMLButtonElement>('nav-toggle').addEventListener('click', () => {
      byId('sidebar').classList.toggle('open');
    });
  }

  private renderSidebar(): void {
    const list = byId('dataset-list');
    list.replaceChildren(
      ...this.datasets.map((dataset) => {
        const item = document.createElement('li');
        item.className = 'dataset-item';
        if (!dataset.available) {
          item.classList.add('dataset-unavailable');
        }
        if (dataset.id === this.ui.datasetId) {
          item.classList.add('dataset-active');
        }
        const title = document.createElement('strong');
        title.textContent = dataset.title;
        const meta = document.createElement('small');
        meta.textContent = dataset.versioned
          ? `${dataset.model_count} models, versioned (small multiples)`
          : `${dataset.model_count} models`;
        const info = document.createElement('p');
        info.textContent = dataset.error ?? dataset.provenance;
        item.append(title, meta, info);
        if (dataset.available) {
          item.addEventListener('click', () => void this.selectDataset(dataset.id));
        }
        return item;
      }),
    );
  }

  private async selectDataset(datasetId: string): Promise<void> {
    const dataset = this.datasets.find((d) => d.id === datasetId);
    this.ui = switchDataset({ ...this.ui, datasetId }, datasetId, dataset?.versioned ?? false);
    this.gridHighlight = null;
    this.renderSidebar();
    await this.refresh();
  }

  private async refresh(): Promise<void> {
    const seq = ++this.requestSeq;
    hideTooltip();
    byId<HTMLSelectElement>('kind-select').value = this.ui.kind;
    byId('diagram-title').textContent = kindTitle(this.ui.kind);
    byId('dataset-title').textContent = this.dataset()?.title ?? '';
    byId('technique-title').textContent =
      this.ui.page === 'small_multiples' ? 'small multiples' : 'overview+detail';
    const overviewPage = byId('page-overview-detail');
    const gridPage = byId('page-grid');
    overviewPage.hidden = this.ui.page !== 'overview_detail';
    gridPage.hidden = this.ui.page !== 'small_multiples';
    try {
      if (this.ui.page === 'small_multiples') {
        const grid = await this.client.fetchGrid(this.ui.datasetId, this.ui.kind);
        if (seq !== this.requestSeq) {
          return; // a newer gesture superseded this response
        }
        this.grid = grid;
        this.renderGridPage();
      } else {
        const view = await this.client.fetchViewForState(this.ui);
        if (seq !== this.requestSeq) {
          return;
        }
        this.view = view;
        this.renderOverviewDetailPage();
      }
      byId('error-box').hidden = true;
    } catch (error) {
      const box = byId('error-box');
      box.hidden = false;
      box.textContent = error instanceof Error ? error.message : String(error);
    }
  }

  private renderOverviewDetailPage(): void {
    const view = this.view;
    if (!view) {
      return;
    }
    const allIds = orderedModelIds(view.overview);

    renderOverview(byId('overview-panel'), view.overview, {
      onBrushDrag: (start, end, frame) => {
        const span = frame.rHi - frame.rLo;
        const interval = brushFromDrag(
          start,
          end,
          { x: frame.cx, y: frame.cy },
          span > 0 ? frame.radiusPx / span : 0,
          view.overview.radial_max,
        );
        if (interval) {
          this.ui = applyBrush(this.ui, interval);
          void this.refresh();
        }
      },
    });
    renderSizeLegend(byId('size-legend-panel'), view.overview);
    renderDetail(byId('detail-panel'), view.detail, allIds);
    renderLinking(byId('linking-panel'), view.linking, allIds);

    const clusterOf = new Map<string, number>();
    for (const cluster of view.overview.clusters) {
      for (const member of cluster.member_ids) {
        clusterOf.set(member, cluster.cluster_id);
      }
    }
    renderLegend(
      byId('legend-panel'),
      view.overview.points.map((p) => ({
        modelId: p.model_id,
        clusterId: clusterOf.get(p.model_id) ?? null,
      })),
      allIds,
      this.ui.hidden,
      view.detail.selection,
      {
        onSingleClick: (modelId) => {
          this.ui = toggleHidden(this.ui, modelId);
          void this.refresh();
        },
        onDoubleClick: (modelId) => {
          this.ui = selectClusterOf(this.ui, view.overview.clusters, modelId);
          void this.refresh();
        },
      },
    );
    renderWarnings(byId('warning-box'), view.warnings);
    byId('brush-hint').textContent = view.overview.brush
      ? 'Brush active: detail is zoomed to the selected radial range. Reset restores the full view.'
      : 'Drag across the overview to brush a radial range; the detail view zooms to it.';
    this.wireDownloads(['overview', 'detail', 'linking']);
  }

  private renderGridPage(): void {
    const grid = this.grid;
    if (!grid) {
      return;
    }
    renderGrid(byId('grid-panel'), grid, this.gridHighlight, {
      onMarkSingleClick: (modelId) => {
        this.gridHighlight = gridSingleClick(this.gridHighlight, modelId);
        this.renderGridPage();
      },
      onMarkDoubleClick: (modelId) => {
        this.gridHighlight = gridDoubleClick(this.gridHighlight, modelId);
        this.renderGridPage();
      },
    });
    const highlightAsSelection =
      this.gridHighlight === null
        ? []
        : grid.model_ids.filter((m) =>
            this.gridHighlight!.mode === 'only'
              ? m === this.gridHighlight!.modelId
              : m !== this.gridHighlight!.modelId,
          );
    renderLegend(
      byId('grid-legend-panel'),
      grid.model_ids.map((modelId) => ({ modelId, clusterId: null })),
      [...grid.model_ids].sort(),
      [],
      highlightAsSelection,
      {
        onSingleClick: (modelId) => {
          this.gridHighlight = gridSingleClick(this.gridHighlight, modelId);
          this.renderGridPage();
        },
        onDoubleClick: (modelId) => {
          this.gridHighlight = gridDoubleClick(this.gridHighlight, modelId);
          this.renderGridPage();
        },
      },
    );
    renderWarnings(byId('grid-warning-box'), grid.warnings);
    this.wireDownloads(['grid']);
  }

  private wireDownloads(views: ViewName[]): void {
    for (const view of views) {
      const button = byId<HTMLButtonElement>(`download-${view}`);
      button.onclick = async () => {
        try {
          const blob = await this.client.downloadSvg(this.ui, view);
          const url = URL.createObjectURL(blob);
          const anchor = document.createElement('a');
          anchor.href = url;
          anchor.download = `${this.ui.datasetId}-${this.ui.kind}-${view}.svg`;
          anchor.click();
          URL.revokeObjectURL(url);
        } catch (error) {
          const box = byId('error-box');
          box.hidden = false;
          box.textContent = `download failed: ${
            error instanceof Error ? error.message : String(error)
          }`;
        }
      };
    }
  }
}

window.addEventListener('DOMContentLoaded', () => {
  void new Dashboard().start();
});
