import { describe, expect, it } from 'vitest';

import { ApiClient, ApiClientError } from '../src/api.js';
import { applyBrush, initialState, toggleHidden } from '../src/state.js';

function fakeFetch(
  handler: (input: string, init?: RequestInit) => { status: number; body: unknown },
) {
  const calls: { input: string; init?: RequestInit }[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    calls.push({ input, init });
    const { status, body } = handler(input, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  };
  return { fetchFn, calls };
}

describe('ApiClient', () => {
  it('posts the full interaction state to /api/view', async () => {
    const { fetchFn, calls } = fakeFetch(() => ({ status: 200, body: { ok: true } }));
    const client = new ApiClient('http://srv', fetchFn);
    let ui = initialState('wine-samples', 'smi');
    ui = applyBrush(ui, [0.25, 1.5]);
    ui = toggleHidden(ui, 'm7');
    await client.fetchViewForState(ui);
    expect(calls).toHaveLength(1);
    expect(calls[0].input).toBe('http://srv/api/view');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      dataset_id: 'wine-samples',
      kind: 'smi',
      brush: [0.25, 1.5],
      hidden: ['m7'],
      selected_cluster: null,
    });
  });

  it('surfaces structured server errors', async () => {
    const { fetchFn } = fakeFetch(() => ({
      status: 422,
      body: { error: { code: 'invalid_interval', message: 'bad brush' } },
    }));
    const client = new ApiClient('', fetchFn);
    await expect(client.fetchView({
      dataset_id: 'x',
      kind: 'smi',
      brush: [2, 1],
      hidden: [],
      selected_cluster: null,
    })).rejects.toSatisfy((error: unknown) => {
      expect(error).toBeInstanceOf(ApiClientError);
      expect((error as ApiClientError).status).toBe(422);
      expect((error as ApiClientError).code).toBe('invalid_interval');
      return true;
    });
  });

  it('builds export URLs carrying the whole UiState', () => {
    const client = new ApiClient('');
    let ui = initialState('wine-samples', 'nmi');
    ui = applyBrush(ui, [0.5, 1.25]);
    ui = toggleHidden(ui, 'b');
    ui = toggleHidden(ui, 'a');
    ui = { ...ui, selectedCluster: 2 };
    const url = new URL(client.exportUrl(ui, 'detail'), 'http://localhost');
    expect(url.pathname).toBe('/api/export.svg');
    expect(url.searchParams.get('dataset_id')).toBe('wine-samples');
    expect(url.searchParams.get('kind')).toBe('nmi');
    expect(url.searchParams.get('view')).toBe('detail');
    expect(url.searchParams.get('r0')).toBe('0.5');
    expect(url.searchParams.get('r1')).toBe('1.25');
    expect(url.searchParams.get('hidden')).toBe('a,b');
    expect(url.searchParams.get('selected_cluster')).toBe('2');
  });

  it('omits optional parameters from clean states', () => {
    const client = new ApiClient('');
    const url = new URL(
      client.exportUrl(initialState('wine-samples', 'smi'), 'overview'),
      'http://localhost',
    );
    expect(url.searchParams.has('r0')).toBe(false);
    expect(url.searchParams.has('hidden')).toBe(false);
    expect(url.searchParams.has('selected_cluster')).toBe(false);
  });
});
