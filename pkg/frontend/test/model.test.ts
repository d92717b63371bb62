/**
 * Session-model invariants over a scripted fetch: one POST per
 * decision, conflicts refetch instead of resubmitting, and a network
 * failure leaves the model exactly as it was with a retry affordance.
 */

import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiClient, StateView } from '../src/api.js';
import { ClientSessionModel } from '../src/model.js';
import { gogView } from './fixtures.js';

interface Recorded {
  url: string;
  method: string;
  body: Record<string, unknown> | null;
}

type Handler = (request: Recorded) => Response | Promise<Response>;

interface FetchScript {
  requests: Recorded[];
  expect: (handler: Handler) => void;
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

function scriptFetch(): FetchScript {
  const requests: Recorded[] = [];
  const queue: Handler[] = [];
  vi.stubGlobal('fetch', async (input: unknown, init?: RequestInit): Promise<Response> => {
    const recorded: Recorded = {
      url: String(input),
      method: init?.method ?? 'GET',
      body:
        typeof init?.body === 'string' ? (JSON.parse(init.body) as Record<string, unknown>) : null,
    };
    requests.push(recorded);
    const handler = queue.shift();
    if (!handler) throw new Error(`unscripted request: ${recorded.method} ${recorded.url}`);
    return handler(recorded);
  });
  return { requests, expect: (handler) => queue.push(handler) };
}

async function loadedModel(
  script: FetchScript,
  view: StateView = gogView(),
): Promise<ClientSessionModel> {
  const model = new ClientSessionModel(new ApiClient('http://unit.test'), 's1', [0]);
  script.expect(() => json(200, view));
  await model.refresh();
  return model;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('submitting moves', () => {
  it('sends one POST with the held version and applies the result', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    script.expect((request) => {
      expect(request.url).toBe('http://unit.test/sessions/s1/moves');
      expect(request.body).toEqual({ seat: 0, expected_version: 3, move_id: 0 });
      return json(200, {
        version: 4,
        events: [{ kind: 'hack_resolved', payload: { success: true }, sequence: 7 }],
        view: gogView({ version: 4 }),
      });
    });

    await expect(model.submitMove(0)).resolves.toBe(true);

    expect(model.currentVersion).toBe(4);
    expect(model.events.map((event) => event.sequence)).toEqual([7]);
    expect(model.pendingMove).toBe(false);
    expect(model.retryableMoveId).toBeNull();
    expect(script.requests.filter((request) => request.method === 'POST')).toHaveLength(1);
  });

  it('refuses a move id the current view does not offer, without any request', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);

    await expect(model.submitMove(99)).rejects.toThrow(/not offered/);

    expect(script.requests).toHaveLength(1);
  });

  it('refuses to submit before a view is loaded', async () => {
    const script = scriptFetch();
    const model = new ClientSessionModel(new ApiClient('http://unit.test'), 's1', [0]);

    await expect(model.submitMove(0)).rejects.toThrow(/no view/);

    expect(script.requests).toHaveLength(0);
  });

  it('allows only one move in flight at a time', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    let release!: (response: Response) => void;
    script.expect(
      () =>
        new Promise<Response>((resolve) => {
          release = resolve;
        }),
    );

    const first = model.submitMove(0);
    expect(model.pendingMove).toBe(true);
    await expect(model.submitMove(3)).rejects.toThrow(/already in flight/);

    release(json(200, { version: 4, events: [], view: gogView({ version: 4 }) }));
    await expect(first).resolves.toBe(true);
    expect(script.requests.filter((request) => request.method === 'POST')).toHaveLength(1);
  });
});

describe('version conflicts', () => {
  it('refetches the view and never resubmits the move', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    script.expect(() => json(409, { error: 'version_conflict', version: 5 }));
    script.expect(() => json(200, gogView({ version: 5, week: 3 })));

    await expect(model.submitMove(0)).resolves.toBe(false);

    expect(model.currentVersion).toBe(5);
    expect((model.currentView as { week: number }).week).toBe(3);
    expect(model.pendingMove).toBe(false);
    expect(script.requests.filter((request) => request.method === 'POST')).toHaveLength(1);
    const last = script.requests[script.requests.length - 1]!;
    expect(last.method).toBe('GET');
    expect(last.url).toContain('/sessions/s1/view?seat=0');
  });
});

describe('network failures', () => {
  it('leaves the model untouched and keeps the move retryable', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    const before = model.currentView;
    script.expect(() => {
      throw new TypeError('fetch failed');
    });

    await expect(model.submitMove(1)).rejects.toThrow('fetch failed');

    expect(model.currentView).toBe(before);
    expect(model.currentVersion).toBe(3);
    expect(model.pendingMove).toBe(false);
    expect(model.retryableMoveId).toBe(1);
    expect(model.error).toContain('fetch failed');
  });

  it('retries the failed move and clears the affordance on success', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    script.expect(() => {
      throw new TypeError('fetch failed');
    });
    await expect(model.submitMove(1)).rejects.toThrow('fetch failed');

    script.expect((request) => {
      expect(request.body).toEqual({ seat: 0, expected_version: 3, move_id: 1 });
      return json(200, { version: 4, events: [], view: gogView({ version: 4 }) });
    });

    await expect(model.retry()).resolves.toBe(true);

    expect(model.retryableMoveId).toBeNull();
    expect(model.currentVersion).toBe(4);
    expect(model.error).toBeNull();
  });

  it('refuses to retry when nothing failed', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);

    await expect(model.retry()).rejects.toThrow(/nothing to retry/);
  });
});

describe('event bookkeeping', () => {
  it('orders events by sequence and drops overlap with ones already held', async () => {
    const script = scriptFetch();
    const model = await loadedModel(script);
    script.expect(() =>
      json(200, {
        version: 3,
        outcome: gogView().outcome,
        events: [
          { kind: 'b', payload: {}, sequence: 2 },
          { kind: 'a', payload: {}, sequence: 0 },
          { kind: 'c', payload: {}, sequence: 1 },
        ],
      }),
    );
    await model.loadEvents();
    expect(model.events.map((event) => event.sequence)).toEqual([0, 1, 2]);

    script.expect(() =>
      json(200, {
        version: 4,
        events: [
          { kind: 'c', payload: {}, sequence: 1 },
          { kind: 'b', payload: {}, sequence: 2 },
          { kind: 'd', payload: {}, sequence: 3 },
        ],
        view: gogView({ version: 4 }),
      }),
    );
    await model.submitMove(0);

    expect(model.events.map((event) => event.sequence)).toEqual([0, 1, 2, 3]);
    expect(model.events.map((event) => event.kind)).toEqual(['a', 'c', 'b', 'd']);
  });
});

describe('hot-seat seats', () => {
  it('switches only to held seats and refetches as that seat', async () => {
    const script = scriptFetch();
    const model = new ClientSessionModel(new ApiClient('http://unit.test'), 's1', [0, 1]);
    script.expect(() => json(200, gogView()));
    await model.refresh();

    await expect(model.switchSeat(2)).rejects.toThrow(/not held/);

    script.expect((request) => {
      expect(request.url).toContain('seat=1');
      return json(200, gogView({ seat: 1 }));
    });
    await model.switchSeat(1);
    expect(model.seat).toBe(1);
  });
});
