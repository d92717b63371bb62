/**
 * End-to-end contract against a live service process.
 *
 * A scripted full ten-week campaign is played entirely through the
 * rendered screen: at every step the set of buttons must equal the
 * set of served legal moves, and every click is traced back to the
 * move id it submitted. A second, two-seat session is then audited
 * for hidden-card leakage: no response fetched for one seat, and no
 * screen rendered from it, may contain another seat's stored cards.
 */

import { type ChildProcess, spawn } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { ApiClient, type GogView, type GrowthopolyView } from '../src/api.js';
import { ClientSessionModel } from '../src/model.js';
import { renderEvents, renderView } from '../src/render.js';
import { auditControls, makeDom } from './fixtures.js';
import { campaignPack, privacyPack, privacySolutionLabels } from './packs.js';

const port = 18100 + (process.pid % 10000);
const base = `http://127.0.0.1:${port}`;
let service: ChildProcess;
let sessionsDir: string;

async function waitForHealth(): Promise<void> {
  const deadline = Date.now() + 60_000;
  for (;;) {
    try {
      const response = await fetch(`${base}/healthz`);
      if (response.ok) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) throw new Error(`no healthy service on ${base}`);
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
}

beforeAll(async () => {
  sessionsDir = mkdtempSync(join(tmpdir(), 'growthlab-contract-'));
  service = spawn(
    'python3',
    [
      '-m',
      'growthlab.cli',
      'serve',
      '--host',
      '127.0.0.1',
      '--port',
      String(port),
      '--sessions-dir',
      sessionsDir,
    ],
    { stdio: 'ignore' },
  );
  await waitForHealth();
});

afterAll(() => {
  service?.kill();
  rmSync(sessionsDir, { recursive: true, force: true });
});

/** Render the model's view, check controls == served moves, click the
 * first control of the wanted kind, and submit what the click chose. */
async function clickThrough(
  root: HTMLElement,
  model: ClientSessionModel,
  kind: string,
  clicks: { kind: string; moveId: number }[],
): Promise<void> {
  const view = model.currentView;
  expect(view).not.toBeNull();
  let clickedId: number | null = null;
  renderView(root, view!, { onMove: (moveId) => void (clickedId = moveId) });

  const servedIds = view!.legal_moves.map((move) => move.move_id);
  auditControls(root, servedIds);
  const buttons = [...root.querySelectorAll('button[data-move-id]')] as HTMLButtonElement[];
  expect(buttons.length).toBe(servedIds.length);

  const target = buttons.find((button) => button.dataset['moveKind'] === kind);
  expect(target, `no rendered control of kind ${kind}`).toBeDefined();
  target!.click();
  expect(clickedId).not.toBeNull();
  expect(servedIds).toContain(clickedId!);
  clicks.push({ kind, moveId: clickedId! });
  await expect(model.submitMove(clickedId!)).resolves.toBe(true);
}

describe('scripted full campaign over a live service', () => {
  it('plays ten weeks through rendered controls, every click a served move', async () => {
    const api = new ApiClient(base);
    const created = await api.createSession({
      game: 'game_of_growth',
      pack: campaignPack,
      seed: 7,
      startup_type: 'tech',
    });
    const model = new ClientSessionModel(api, created.session_id, created.seats);
    await model.refresh();
    await model.loadEvents();
    const { root } = makeDom();
    const clicks: { kind: string; moveId: number }[] = [];

    for (let week = 1; week <= 10; week++) {
      let view = model.currentView as GogView;
      expect(view.week).toBe(week);
      expect(view.phase).toBe('upkeep');
      await clickThrough(root, model, 'draw_event', clicks);

      view = model.currentView as GogView;
      expect(view.phase).toBe('hacks');
      expect(view.hand.length).toBe(3);
      expect(view.active_event).not.toBeNull();
      await clickThrough(root, model, 'play_hack', clicks);
      await clickThrough(root, model, 'play_hack', clicks);
      await clickThrough(root, model, 'play_hack', clicks);

      view = model.currentView as GogView;
      expect(view.phase).toBe('employee');
      await clickThrough(root, model, 'reveal_employee', clicks);
      expect((model.currentView as GogView).pending_employee).not.toBeNull();
      await clickThrough(root, model, 'refuse', clicks);
      await clickThrough(root, model, 'end_turn', clicks);
    }

    const final = model.currentView as GogView;
    expect(final.outcome.status).toBe('lost');
    expect(final.outcome.loss_reason).toBe('turns_exhausted');
    expect(final.legal_moves).toEqual([]);

    renderView(root, final, {});
    expect(root.querySelector('.loss-banner')).not.toBeNull();
    auditControls(root, []);
    expect(root.querySelectorAll('button[data-move-id]').length).toBe(0);

    expect(clicks.length).toBe(70);
    const byKind = new Map<string, number>();
    for (const click of clicks) byKind.set(click.kind, (byKind.get(click.kind) ?? 0) + 1);
    expect(byKind.get('draw_event')).toBe(10);
    expect(byKind.get('play_hack')).toBe(30);
    expect(byKind.get('reveal_employee')).toBe(10);
    expect(byKind.get('refuse')).toBe(10);
    expect(byKind.get('end_turn')).toBe(10);

    // Event panel order matches the server's sequence numbering with
    // no gaps: every event of the session, exactly once, in order.
    const sequences = model.events.map((event) => event.sequence);
    expect(sequences).toEqual([...Array(sequences.length).keys()]);
    const { root: eventRoot } = makeDom();
    renderEvents(eventRoot, [...model.events]);
    const listed = [...eventRoot.querySelectorAll('li[data-sequence]')].map((item) =>
      Number((item as HTMLElement).dataset['sequence']),
    );
    expect(listed).toEqual(sequences);
    expect(model.events.some((event) => event.kind === 'game_ended')).toBe(true);
  });
});

describe('seat privacy over a live service', () => {
  it('never leaks one seat\'s stored cards into another seat\'s responses or screen', async () => {
    const api = new ApiClient(base);
    const created = await api.createSession({
      game: 'growthopoly',
      pack: privacyPack,
      seed: 1,
      players: [
        { name: 'Ada', specialty: 'search_engine_optimization' },
        { name: 'Bo', specialty: 'email_marketing' },
      ],
    });
    expect(created.seats).toEqual([0, 1]);

    const tabs = [0, 1].map((seat) => ({
      seat,
      model: new ClientSessionModel(api, created.session_id, [seat]),
      root: makeDom().root,
    }));
    await tabs[0]!.model.refresh();
    await tabs[1]!.model.refresh();

    let stepsWithHiddenCards = 0;
    for (let step = 0; step < 60; step++) {
      const shared = tabs[0]!.model.currentView as GrowthopolyView;
      if (shared.outcome.status !== 'ongoing') break;

      // Whoever the server says is acting clicks, through their own
      // rendered screen; card sales are skipped so every stored card
      // stays hidden from the other seat.
      const tab = tabs[shared.acting_seat]!;
      const view = tab.model.currentView as GrowthopolyView;
      let clickedId: number | null = null;
      renderView(tab.root, view, { onMove: (moveId) => void (clickedId = moveId) });
      auditControls(tab.root, view.legal_moves.map((move) => move.move_id));
      const buttons = [...tab.root.querySelectorAll('button[data-move-id]')] as HTMLButtonElement[];
      expect(buttons.length).toBe(view.legal_moves.length);
      const target = buttons.find((button) => button.dataset['moveKind'] !== 'propose_trade');
      expect(target).toBeDefined();
      target!.click();
      expect(clickedId).not.toBeNull();
      await expect(tab.model.submitMove(clickedId!)).resolves.toBe(true);
      await tabs[1 - shared.acting_seat]!.model.refresh();

      // Audit seat 0's perspective: the raw response body, the parsed
      // entry for the other player, and the rendered screen.
      const response = await fetch(`${base}/sessions/${created.session_id}/view?seat=0`);
      expect(response.ok).toBe(true);
      const rawBody = await response.text();
      const parsed = JSON.parse(rawBody) as GrowthopolyView;
      const opponent = parsed.players.find((player) => !player.yours)!;
      expect('solutions' in opponent).toBe(false);
      expect(opponent.solution_count).toBeGreaterThanOrEqual(0);

      const opponentOwn = (tabs[1]!.model.currentView as GrowthopolyView).players.find(
        (player) => player.yours,
      )!;
      const hiddenLabels = (opponentOwn.solutions ?? []).map((solution) => solution.label);
      for (const label of hiddenLabels) {
        expect(privacySolutionLabels).toContain(label);
        expect(rawBody.includes(label)).toBe(false);
      }

      renderView(tabs[0]!.root, tabs[0]!.model.currentView!, {});
      const screenText = tabs[0]!.root.textContent ?? '';
      for (const label of hiddenLabels) {
        expect(screenText.includes(label)).toBe(false);
      }
      if (hiddenLabels.length > 0) stepsWithHiddenCards += 1;
    }

    // The audit is vacuous unless the other seat actually held cards.
    expect(stepsWithHiddenCards).toBeGreaterThan(0);
  }, 180_000);
});
