/** Shared test fixtures: a DOM window and hand-built view objects. */

import { Window } from 'happy-dom';
import { GogView, GrowthopolyView } from '../src/api.js';

export function makeDom(): { window: Window; root: HTMLElement } {
  const window = new Window();
  const root = window.document.createElement('div') as unknown as HTMLElement;
  window.document.body.appendChild(root as never);
  return { window, root };
}

export function gogView(overrides: Partial<GogView> = {}): GogView {
  return {
    game: 'game_of_growth',
    seat: 0,
    version: 3,
    win_threshold: 5000,
    total_weeks: 10,
    startup_type: 'tech',
    week: 2,
    phase: 'hacks',
    money: 4200,
    followers: 800,
    hand: [
      { hand_index: 0, card: 0, label: 'Sure thing', cost: 100, effective_cost: 100, success_threshold: 2, follower_gain: 500 },
      { hand_index: 1, card: 1, label: 'Long shot', cost: 50, effective_cost: 50, success_threshold: 6, follower_gain: 1000 },
      { hand_index: 2, card: 3, label: 'Free play', cost: 0, effective_cost: 0, success_threshold: 3, follower_gain: 200 },
    ],
    roster: [
      { card: 2, label: 'Tinkerer', hire_cost: 100, salary: 80, ability: { kind: 'reroll_once_per_turn' } },
    ],
    active_event: {
      card: 1,
      label: 'Surge',
      hack_cost_multiplier: 1,
      follower_gain_multiplier: 1.5,
      hiring_cost_multiplier: 1,
      salaries_waived: false,
    },
    pending_employee: null,
    hack_discount_percent: 0,
    decks: {
      event: { draw: 3, discard: 1 },
      hack: { draw: 1, discard: 0 },
      employee: { draw: 2, discard: 0 },
    },
    outcome: { status: 'ongoing', winner: null, loss_reason: null, turns_elapsed: 1 },
    legal_moves: [
      { kind: 'play_hack', index: 0, move_id: 0, label: 'Run Sure thing (cost 100, succeeds on 2+, +500)' },
      { kind: 'play_hack', index: 1, move_id: 1, label: 'Run Long shot (cost 50, succeeds on 6+, +1000)' },
      { kind: 'play_hack', index: 2, move_id: 2, label: 'Run Free play (cost 0, succeeds on 3+, +200)' },
      { kind: 'skip_remaining_hacks', move_id: 3, label: 'Stop hacking this week' },
    ],
    ...overrides,
  };
}

export function growthopolyView(overrides: Partial<GrowthopolyView> = {}): GrowthopolyView {
  return {
    game: 'growthopoly',
    seat: 0,
    version: 5,
    win_threshold: 5000,
    board: [
      { index: 0, kind: 'start' },
      { index: 1, kind: 'skill', category: 'search_engine_optimization', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 2, kind: 'bonus' },
      { index: 3, kind: 'trade_fair', price: 250, followers_granted: 250 },
      { index: 4, kind: 'prob_solve' },
      { index: 5, kind: 'slush' },
      { index: 6, kind: 'skill', category: 'email_marketing', level: 2, study_cost: 150, follower_reward: 120 },
      { index: 7, kind: 'skill', category: 'social_media_marketing', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 8, kind: 'skill', category: 'public_relations', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 9, kind: 'skill', category: 'product_development', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 10, kind: 'skill', category: 'display_advertising', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 11, kind: 'skill', category: 'content_marketing', level: 1, study_cost: 100, follower_reward: 100 },
      { index: 12, kind: 'skill', category: 'search_engine_marketing', level: 3, study_cost: 400, follower_reward: 300 },
      { index: 13, kind: 'prob_solve' },
    ],
    players: [
      {
        index: 0, name: 'Ada', specialty: 'public_relations', money: 900, followers: 350,
        position: 3, skills: { '8': 0 }, solution_count: 1,
        solutions: [{ card: 2, label: 'Runbook', counters_tags: ['outage'] }],
        slush_remaining: null, yours: true,
      },
      {
        index: 1, name: 'Bo', specialty: 'email_marketing', money: 1100, followers: 250,
        position: 6, skills: { '6': 1 }, solution_count: 2,
        slush_remaining: null, yours: false,
      },
    ],
    turn_number: 7,
    sub_phase: 'trade_fair_decision',
    current_player: 0,
    acting_player: 0,
    acting_seat: 0,
    pending_trade: null,
    pending_problem: null,
    decks: {
      bonus: { draw: 2, discard: 0 },
      prob_solve: { draw: 3, discard: 1 },
    },
    outcome: { status: 'ongoing', winner: null, loss_reason: null, turns_elapsed: 7 },
    legal_moves: [
      { kind: 'buy_followers', move_id: 0, label: 'Buy 250 followers for 250' },
      { kind: 'decline_trade_fair', move_id: 1, label: 'Leave the trade fair' },
    ],
    ...overrides,
  };
}

/** Every control in the tree must map onto a served legal move. */
export function auditControls(root: HTMLElement, servedIds: number[]): void {
  const buttons = [...root.querySelectorAll('button[data-move-id]')];
  const rendered = buttons.map((button) => Number((button as HTMLElement).dataset['moveId']));
  const served = new Set(servedIds);
  for (const id of rendered) {
    if (!served.has(id)) throw new Error(`control with move_id ${id} was never served`);
  }
  if (new Set(rendered).size !== rendered.length) {
    throw new Error('duplicate controls for one move');
  }
}
