/**
 * Browser entry point.
 *
 * The whole client state lives in the URL so reloads and shared links
 * just work: ?api=<service base>&session=<id>&seat=<n>. Without a
 * session parameter the page shows a create/join form.
 */

import { ApiClient, CreateSessionRequest } from './api.js';
import { ClientSessionModel } from './model.js';
import { renderEvents, renderView } from './render.js';

const SPECIALTIES = [
  'search_engine_optimization',
  'email_marketing',
  'social_media_marketing',
  'public_relations',
  'product_development',
  'display_advertising',
  'content_marketing',
  'search_engine_marketing',
];

function params(): URLSearchParams {
  return new URLSearchParams(window.location.search);
}

function apiBase(): string {
  return params().get('api') ?? window.location.origin;
}

function navigateToSession(sessionId: string, seat: number): void {
  const next = params();
  next.set('session', sessionId);
  next.set('seat', String(seat));
  window.location.search = next.toString();
}

function setupForm(root: HTMLElement, api: ApiClient): void {
  const doc = root.ownerDocument;
  const form = doc.createElement('div');
  form.className = 'setup';
  form.innerHTML = `
    <h1>growthlab</h1>
    <p>Create a session, or open an existing one.</p>
    <label>Game
      <select id="game">
        <option value="game_of_growth">The Game of Growth (co-op)</option>
        <option value="growthopoly">Growthopoly (2-8 players)</option>
      </select>
    </label>
    <label>Seed <input id="seed" type="number" value="0"></label>
    <label id="players-row">Players (growthopoly) <input id="players" type="number" min="2" max="8" value="2"></label>
    <label id="startup-row">Startup type
      <select id="startup">
        <option>tech</option><option>service</option><option>entertainment</option>
      </select>
    </label>
    <button id="create">Create session</button>
    <h2>Open sessions</h2>
    <ul id="sessions"></ul>
  `;
  root.replaceChildren(form);

  const gameSelect = form.querySelector('#game') as HTMLSelectElement;
  const createButton = form.querySelector('#create') as HTMLButtonElement;
  createButton.addEventListener('click', async () => {
    createButton.disabled = true;
    try {
      const game = gameSelect.value;
      const request: CreateSessionRequest = {
        game,
        seed: Number((form.querySelector('#seed') as HTMLInputElement).value) || 0,
      };
      if (game === 'growthopoly') {
        const count = Math.max(2, Math.min(8, Number((form.querySelector('#players') as HTMLInputElement).value) || 2));
        request.players = Array.from({ length: count }, (_, i) => ({
          name: `Player ${i + 1}`,
          specialty: SPECIALTIES[i % SPECIALTIES.length]!,
        }));
      } else {
        request.startup_type = (form.querySelector('#startup') as HTMLSelectElement).value;
      }
      const created = await api.createSession(request);
      navigateToSession(created.session_id, created.seats[0] ?? 0);
    } catch (error) {
      alert(String(error));
      createButton.disabled = false;
    }
  });

  void api.listSessions().then((sessions) => {
    const list = form.querySelector('#sessions') as HTMLUListElement;
    for (const session of sessions) {
      const item = doc.createElement('li');
      for (const seat of session.seats) {
        const link = doc.createElement('a');
        const query = params();
        query.set('session', session.session_id);
        query.set('seat', String(seat));
        link.href = `?${query.toString()}`;
        link.textContent = `${session.game} ${session.session_id.slice(0, 8)} seat ${seat} (${session.outcome.status})`;
        item.appendChild(link);
        item.appendChild(doc.createTextNode(' '));
      }
      list.appendChild(item);
    }
  });
}

async function playScreen(root: HTMLElement, api: ApiClient, sessionId: string, seat: number): Promise<void> {
  const doc = root.ownerDocument;
  const sessions = await api.listSessions();
  const summary = sessions.find((session) => session.session_id === sessionId);
  const seats = summary?.seats ?? [seat];

  const layout = doc.createElement('div');
  layout.className = 'layout';
  const viewRoot = doc.createElement('div');
  viewRoot.className = 'view-root';
  const side = doc.createElement('aside');
  side.className = 'side';
  const seatBar = doc.createElement('div');
  seatBar.className = 'seat-bar';
  const eventRoot = doc.createElement('div');
  eventRoot.className = 'event-root';
  side.appendChild(seatBar);
  side.appendChild(eventRoot);
  layout.appendChild(viewRoot);
  layout.appendChild(side);
  root.replaceChildren(layout);

  const model = new ClientSessionModel(api, sessionId, seats);
  if (seats.includes(seat)) await model.switchSeat(seat);

  for (const heldSeat of seats) {
    const link = doc.createElement('a');
    const query = params();
    query.set('seat', String(heldSeat));
    link.href = `?${query.toString()}`;
    link.textContent = `seat ${heldSeat}`;
    if (heldSeat === model.seat) link.className = 'active-seat';
    seatBar.appendChild(link);
    seatBar.appendChild(doc.createTextNode(' '));
  }

  const rerender = (): void => {
    const view = model.currentView;
    if (!view) return;
    try {
      renderView(viewRoot, view, {
        onMove: (moveId) => void model.submitMove(moveId).catch(() => undefined),
        onRetry: () => void model.retry().catch(() => undefined),
        pendingMove: model.pendingMove,
        retryableMoveId: model.retryableMoveId,
        notice: model.error,
      });
    } catch {
      return;
    }
    renderEvents(eventRoot, model.events);
  };

  model.onChange(rerender);
  await model.refresh();
  await model.loadEvents();
  void model.startPolling();
  window.addEventListener('beforeunload', () => model.stopPolling());
}

export async function boot(root: HTMLElement): Promise<void> {
  const api = new ApiClient(apiBase());
  const sessionId = params().get('session');
  const seat = Number(params().get('seat') ?? '0');
  if (!sessionId) {
    setupForm(root, api);
    return;
  }
  try {
    await playScreen(root, api, sessionId, seat);
  } catch (error) {
    const banner = root.ownerDocument.createElement('div');
    banner.className = 'banner error-banner';
    banner.textContent = String(error);
    root.replaceChildren(banner);
  }
}

const appRoot = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (appRoot) void boot(appRoot);
