/**
 * DOM rendering for both games.
 *
 * renderView replaces the root's children with a full screen for the
 * given view. Controls are generated exclusively from the view's
 * legal_moves list: every <button> carries the move_id the server
 * offered, and nothing else in the UI can submit a move. A malformed
 * view renders an error banner and nothing else.
 */

import {
  BoardSpace,
  GameEvent,
  GogView,
  GrowthopolyView,
  LegalMove,
  StateView,
} from './api.js';

export interface RenderOptions {
  /** Called with the served move_id when a control is activated. */
  onMove?: (moveId: number) => void;
  /** Called by the retry affordance after a network failure. */
  onRetry?: () => void;
  /** Disables every control while a submission is in flight. */
  pendingMove?: boolean;
  /** Move id of a network-failed submission, shown as a retry button. */
  retryableMoveId?: number | null;
  /** Error line to surface without discarding the rendered state. */
  notice?: string | null;
}

const TOKEN_COLORS = ['#e05252', '#4a90d9', '#51a351', '#c49a2a', '#9b59b6', '#2ab3a6', '#d9784a', '#7f8c8d'];

function assertViewShape(view: StateView): void {
  if (!view || typeof view !== 'object') throw new Error('view is not an object');
  if (view.game !== 'growthopoly' && view.game !== 'game_of_growth') {
    throw new Error(`unknown game ${String((view as { game?: unknown }).game)}`);
  }
  if (!Array.isArray(view.legal_moves)) throw new Error('view has no legal_moves list');
  if (!view.outcome || typeof view.outcome.status !== 'string') {
    throw new Error('view has no outcome');
  }
  for (const move of view.legal_moves) {
    if (typeof move.move_id !== 'number' || typeof move.kind !== 'string') {
      throw new Error('legal move entry is malformed');
    }
  }
  if (view.game === 'growthopoly' && !Array.isArray(view.players)) {
    throw new Error('growthopoly view has no players');
  }
  if (view.game === 'game_of_growth' && !Array.isArray(view.hand)) {
    throw new Error('campaign view has no hand');
  }
}

/** Tracks which served moves have been turned into controls. */
class MoveControls {
  private remaining: Map<number, LegalMove>;
  private readonly doc: Document;
  private readonly options: RenderOptions;

  constructor(doc: Document, view: StateView, options: RenderOptions) {
    this.doc = doc;
    this.options = options;
    this.remaining = new Map(view.legal_moves.map((move) => [move.move_id, move]));
  }

  /** The first unconsumed move matching the predicate, if any. */
  claim(predicate: (move: LegalMove) => boolean): LegalMove | null {
    for (const move of this.remaining.values()) {
      if (predicate(move)) {
        this.remaining.delete(move.move_id);
        return move;
      }
    }
    return null;
  }

  claimAll(predicate: (move: LegalMove) => boolean): LegalMove[] {
    const claimed: LegalMove[] = [];
    let move;
    while ((move = this.claim(predicate)) !== null) claimed.push(move);
    return claimed;
  }

  unclaimed(): LegalMove[] {
    return [...this.remaining.values()];
  }

  button(move: LegalMove, text?: string): HTMLButtonElement {
    const button = this.doc.createElement('button');
    button.textContent = text ?? move.label;
    button.dataset['moveId'] = String(move.move_id);
    button.dataset['moveKind'] = move.kind;
    if (this.options.pendingMove) button.disabled = true;
    button.addEventListener('click', () => this.options.onMove?.(move.move_id));
    return button;
  }
}

function el(doc: Document, tag: string, className?: string, text?: string): HTMLElement {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function outcomeBanner(doc: Document, view: StateView): HTMLElement | null {
  const { outcome } = view;
  if (outcome.status === 'won') {
    const name =
      view.game === 'growthopoly' && outcome.winner !== null
        ? view.players[outcome.winner]?.name ?? `player ${outcome.winner}`
        : 'The team';
    return el(doc, 'div', 'banner victory-banner', `${name} wins!`);
  }
  if (outcome.status === 'lost') {
    return el(doc, 'div', 'banner loss-banner', `Game over: ${outcome.loss_reason ?? 'lost'}`);
  }
  return null;
}

function waitingIndicator(doc: Document, view: StateView): HTMLElement {
  const who =
    view.game === 'growthopoly'
      ? `${view.players[view.acting_player]?.name ?? 'another player'} to move`
      : 'another seat to act';
  return el(doc, 'div', 'waiting', `Waiting for ${who}`);
}

/** Perimeter coordinates for n spaces on a w x h ring, clockwise from top-left. */
export function ringLayout(count: number): { col: number; row: number }[] {
  // Ring perimeter 2w+2h-4 is always even; odd counts just leave one cell unused.
  const width = Math.max(3, Math.ceil(count / 4) + 1);
  let height = Math.max(3, Math.ceil((count + 4 - 2 * width) / 2));
  while (2 * width + 2 * height - 4 < count) height += 1;
  const cells: { col: number; row: number }[] = [];
  for (let c = 1; c <= width; c++) cells.push({ col: c, row: 1 });
  for (let r = 2; r <= height - 1; r++) cells.push({ col: width, row: r });
  for (let c = width; c >= 1; c--) cells.push({ col: c, row: height });
  for (let r = height - 1; r >= 2; r--) cells.push({ col: 1, row: r });
  return cells.slice(0, count);
}

function spaceCaption(space: BoardSpace): string {
  switch (space.kind) {
    case 'skill':
      return `${(space.category ?? '').replace(/_/g, ' ')} L${space.level}`;
    case 'trade_fair':
      return `trade fair ${space.followers_granted} for ${space.price}`;
    case 'start':
      return 'start';
    case 'bonus':
      return 'bonus';
    case 'prob_solve':
      return 'problem / solution';
    case 'slush':
      return 'slush pile';
    default:
      return space.kind;
  }
}

function renderBoard(doc: Document, view: GrowthopolyView, options: RenderOptions): HTMLElement {
  const board = el(doc, 'div', 'board');
  const layout = ringLayout(view.board.length);
  const height = Math.max(...layout.map((cell) => cell.row));
  const width = Math.max(...layout.map((cell) => cell.col));
  board.style.display = 'grid';
  board.style.gridTemplateColumns = `repeat(${width}, minmax(4.5rem, 1fr))`;

  view.board.forEach((space, index) => {
    const cell = layout[index]!;
    const node = el(doc, 'div', `board-space space-${space.kind}`);
    node.style.gridColumn = String(cell.col);
    node.style.gridRow = String(cell.row);
    node.appendChild(el(doc, 'div', 'space-caption', spaceCaption(space)));

    for (const player of view.players) {
      const remaining = player.skills[String(index)];
      if (remaining !== undefined) {
        const badge = el(
          doc,
          'span',
          remaining === 0 ? 'owner-badge' : 'owner-badge studying',
          remaining === 0 ? player.name[0] ?? '?' : `${player.name[0] ?? '?'}·${remaining}`,
        );
        badge.title =
          remaining === 0
            ? `owned by ${player.name}`
            : `${player.name} studying, ${remaining} turns left`;
        badge.style.borderColor = TOKEN_COLORS[player.index % TOKEN_COLORS.length]!;
        node.appendChild(badge);
      }
    }

    const tokens = el(doc, 'div', 'tokens');
    for (const player of view.players) {
      if (player.position === index) {
        const token = el(doc, 'span', 'player-token', '●');
        token.title = player.name;
        token.style.color = TOKEN_COLORS[player.index % TOKEN_COLORS.length]!;
        tokens.appendChild(token);
      }
    }
    node.appendChild(tokens);
    board.appendChild(node);
  });

  const center = el(doc, 'div', 'board-center');
  center.style.gridColumn = `2 / ${width}`;
  center.style.gridRow = `2 / ${height}`;
  center.appendChild(el(doc, 'h2', 'center-title', `First to ${view.win_threshold} followers`));
  for (const player of view.players) {
    const row = el(doc, 'div', player.yours ? 'player-row yours' : 'player-row');
    const swatch = el(doc, 'span', 'swatch', '■');
    swatch.style.color = TOKEN_COLORS[player.index % TOKEN_COLORS.length]!;
    row.appendChild(swatch);
    row.appendChild(el(doc, 'span', 'player-name', player.name));
    row.appendChild(el(doc, 'span', 'player-followers', `${player.followers} followers`));
    row.appendChild(el(doc, 'span', 'player-money', `$${player.money}`));
    row.appendChild(el(doc, 'span', 'player-specialty', player.specialty.replace(/_/g, ' ')));
    const held = player.solutions
      ? player.solutions.map((solution) => solution.label).join(', ')
      : `${player.solution_count} held`;
    row.appendChild(el(doc, 'span', 'player-solutions', `solutions: ${held || 'none'}`));
    if (player.slush_remaining !== null) {
      row.appendChild(el(doc, 'span', 'player-slush', `in the slush pile (${player.slush_remaining})`));
    }
    center.appendChild(row);
  }
  board.appendChild(center);
  return board;
}

function renderGrowthopoly(
  doc: Document,
  view: GrowthopolyView,
  controls: MoveControls,
  options: RenderOptions,
): HTMLElement[] {
  const header = el(doc, 'div', 'status-bar');
  header.appendChild(el(doc, 'span', 'phase-indicator', view.sub_phase.replace(/_/g, ' ')));
  header.appendChild(el(doc, 'span', 'turn-counter', `turn ${view.turn_number}`));
  header.appendChild(
    el(doc, 'span', 'acting', `acting: ${view.players[view.acting_player]?.name ?? '?'}`),
  );

  const nodes: HTMLElement[] = [header, renderBoard(doc, view, options)];

  if (view.pending_trade) {
    const trade = el(doc, 'div', 'pending-trade');
    trade.appendChild(el(doc, 'h3', undefined, 'Trade on the table'));
    const proposer = view.players[Number(view.pending_trade['proposer'])]?.name ?? '?';
    trade.appendChild(el(doc, 'p', undefined, `${proposer} proposes a deal`));
    nodes.push(trade);
  }

  const bar = el(doc, 'div', 'controls');
  for (const move of controls.unclaimed()) bar.appendChild(controls.button(move));
  nodes.push(bar);
  return nodes;
}

function renderGog(
  doc: Document,
  view: GogView,
  controls: MoveControls,
  options: RenderOptions,
): HTMLElement[] {
  const header = el(doc, 'div', 'status-bar');
  header.appendChild(el(doc, 'span', 'phase-indicator', view.phase));
  header.appendChild(el(doc, 'span', 'week-counter', `week ${view.week}/${view.total_weeks}`));
  header.appendChild(el(doc, 'span', 'money-counter', `$${view.money}`));
  header.appendChild(
    el(doc, 'span', 'follower-counter', `${view.followers}/${view.win_threshold} followers`),
  );

  const nodes: HTMLElement[] = [header];

  if (view.active_event) {
    const event = el(doc, 'div', 'active-event');
    event.appendChild(el(doc, 'h3', undefined, `This week: ${view.active_event.label}`));
    const effects: string[] = [];
    if (view.active_event.hack_cost_multiplier !== 1) {
      effects.push(`hack costs x${view.active_event.hack_cost_multiplier}`);
    }
    if (view.active_event.follower_gain_multiplier !== 1) {
      effects.push(`hack gains x${view.active_event.follower_gain_multiplier}`);
    }
    if (view.active_event.hiring_cost_multiplier !== 1) {
      effects.push(`hiring x${view.active_event.hiring_cost_multiplier}`);
    }
    if (view.active_event.salaries_waived) effects.push('salaries waived');
    event.appendChild(el(doc, 'p', 'event-effects', effects.join(', ') || 'no modifiers'));
    nodes.push(event);
  }

  const hand = el(doc, 'div', 'hand');
  for (const card of view.hand) {
    const node = el(doc, 'div', 'hand-card');
    node.appendChild(el(doc, 'h4', undefined, card.label));
    const costText =
      card.effective_cost === card.cost
        ? `$${card.cost}`
        : `$${card.effective_cost} (was $${card.cost})`;
    node.appendChild(el(doc, 'p', 'card-cost', costText));
    node.appendChild(
      el(doc, 'p', 'card-odds', `succeeds on ${card.success_threshold}+, +${card.follower_gain}`),
    );
    const move = controls.claim(
      (candidate) => candidate.kind === 'play_hack' && candidate['index'] === card.hand_index,
    );
    if (move) node.appendChild(controls.button(move, 'Play'));
    hand.appendChild(node);
  }
  nodes.push(hand);

  const roster = el(doc, 'div', 'roster');
  roster.appendChild(el(doc, 'h3', undefined, `Team (${view.roster.length})`));
  view.roster.forEach((entry, slot) => {
    const node = el(doc, 'div', 'roster-entry');
    const ability =
      entry.ability.kind === 'passive_followers'
        ? `+${entry.ability.amount} followers weekly`
        : entry.ability.kind === 'hack_discount'
          ? `${entry.ability.amount}% off hacks`
          : 'one free reroll per week';
    node.appendChild(
      el(doc, 'span', undefined, `${entry.label}: salary $${entry.salary}, ${ability}`),
    );
    const move = controls.claim(
      (candidate) => candidate.kind === 'fire' && candidate['index'] === slot,
    );
    if (move) node.appendChild(controls.button(move, 'Fire'));
    roster.appendChild(node);
  });
  nodes.push(roster);

  if (view.pending_employee) {
    const candidatePanel = el(doc, 'div', 'candidate');
    candidatePanel.appendChild(el(doc, 'h3', undefined, `Candidate: ${view.pending_employee.label}`));
    candidatePanel.appendChild(
      el(
        doc,
        'p',
        undefined,
        `hire for $${view.pending_employee.effective_hire_cost}, salary $${view.pending_employee.salary}`,
      ),
    );
    const hire = controls.claim((candidate) => candidate.kind === 'hire');
    if (hire) candidatePanel.appendChild(controls.button(hire));
    const refuse = controls.claim((candidate) => candidate.kind === 'refuse');
    if (refuse) candidatePanel.appendChild(controls.button(refuse));
    nodes.push(candidatePanel);
  }

  const bar = el(doc, 'div', 'controls');
  for (const move of controls.unclaimed()) bar.appendChild(controls.button(move));
  nodes.push(bar);
  return nodes;
}

/**
 * Render a full screen for the view into root, replacing whatever was
 * there. Throws after rendering an error banner if the view is
 * malformed; never leaves a partial screen behind.
 */
export function renderView(root: HTMLElement, view: StateView, options: RenderOptions = {}): void {
  const doc = root.ownerDocument;
  const screen = el(doc, 'div', 'screen');
  try {
    assertViewShape(view);
    const banner = outcomeBanner(doc, view);
    if (banner) screen.appendChild(banner);
    if (options.notice) screen.appendChild(el(doc, 'div', 'notice', options.notice));
    if (options.retryableMoveId !== null && options.retryableMoveId !== undefined) {
      const retry = el(doc, 'button', 'retry', 'Retry last move') as HTMLButtonElement;
      retry.dataset['retry'] = String(options.retryableMoveId);
      retry.addEventListener('click', () => options.onRetry?.());
      screen.appendChild(retry);
    }
    const controls = new MoveControls(doc, view, options);
    const nodes =
      view.game === 'growthopoly'
        ? renderGrowthopoly(doc, view, controls, options)
        : renderGog(doc, view, controls, options);
    for (const node of nodes) screen.appendChild(node);
    if (view.legal_moves.length === 0 && view.outcome.status === 'ongoing') {
      screen.appendChild(waitingIndicator(doc, view));
    }
  } catch (error) {
    root.replaceChildren(
      el(doc, 'div', 'banner error-banner', `Cannot render view: ${String(error)}`),
    );
    throw error;
  }
  root.replaceChildren(screen);
}

/** Append-only event log panel; entries stay in server sequence order. */
export function renderEvents(root: HTMLElement, events: readonly GameEvent[]): void {
  const doc = root.ownerDocument;
  const list = el(doc, 'ol', 'event-log');
  const ordered = [...events].sort((a, b) => a.sequence - b.sequence);
  for (const event of ordered) {
    const item = el(doc, 'li', `event event-${event.kind}`);
    item.dataset['sequence'] = String(event.sequence);
    item.textContent = `#${event.sequence} ${event.kind} ${summarizePayload(event)}`;
    list.appendChild(item);
  }
  root.replaceChildren(list);
}

function summarizePayload(event: GameEvent): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(event.payload)) {
    if (value === null || typeof value === 'object') continue;
    parts.push(`${key}=${String(value)}`);
    if (parts.length >= 4) break;
  }
  return parts.join(' ');
}
