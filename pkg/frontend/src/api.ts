// Typed client for the polarview HTTP API. fetch is injectable so tests can
// run against a recorded transport or a live server.

import { UiState, ViewRequestBody, toViewRequest } from './state.js';
import {
  ApiError,
  DatasetSummary,
  DiagramKind,
  GridResponse,
  ViewName,
  ViewResponse,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClientError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiClientError> {
  let code = 'error';
  let message = response.statusText;
  try {
    const body = (await response.json()) as ApiError;
    code = body.error.code;
    message = body.error.message;
  } catch {
    // non-JSON error body: keep the status text
  }
  return new ApiClientError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  listDatasets(): Promise<DatasetSummary[]> {
    return this.getJson('/api/datasets');
  }

  fetchView(request: ViewRequestBody): Promise<ViewResponse> {
    return this.postJson('/api/view', request);
  }

  fetchViewForState(ui: UiState): Promise<ViewResponse> {
    return this.fetchView(toViewRequest(ui));
  }

  fetchGrid(datasetId: string, kind: DiagramKind): Promise<GridResponse> {
    return this.postJson('/api/grid', { dataset_id: datasetId, kind });
  }

  exportUrl(ui: UiState, view: ViewName): string {
    const params = new URLSearchParams({
      dataset_id: ui.datasetId,
      kind: ui.kind,
      view,
    });
    if (ui.brush) {
      params.set('r0', String(ui.brush[0]));
      params.set('r1', String(ui.brush[1]));
    }
    if (ui.hidden.length > 0) {
      params.set('hidden', [...ui.hidden].sort().join(','));
    }
    if (ui.selectedCluster !== null) {
      params.set('selected_cluster', String(ui.selectedCluster));
    }
    return `${this.baseUrl}/api/export.svg?${params.toString()}`;
  }

  async downloadSvg(ui: UiState, view: ViewName): Promise<Blob> {
    const response = await this.fetchFn(this.exportUrl(ui, view));
    if (!response.ok) {
      throw await parseError(response);
    }
    return response.blob();
  }
}
