/**
 * Client-side session state: one model per (session, held seats).
 *
 * The model owns the invariants the UI depends on:
 *  - a move can only be submitted if it is present, by move_id, in
 *    the view the model is currently holding;
 *  - one move in flight at a time;
 *  - a version conflict always triggers a refetch of the view and
 *    never a silent resubmit of the same move;
 *  - a network failure leaves the model exactly as it was, with the
 *    failed move id kept as a retry affordance.
 */

import { ApiClient, GameEvent, StateView } from './api.js';

export type ModelListener = (model: ClientSessionModel) => void;

export class ClientSessionModel {
  readonly api: ApiClient;
  readonly sessionId: string;
  readonly seats: number[];

  private activeSeat: number;
  private view: StateView | null = null;
  private version = -1;
  private eventLog: GameEvent[] = [];
  private moveInFlight = false;
  private failedMoveId: number | null = null;
  private lastError: string | null = null;
  private listeners: ModelListener[] = [];
  private polling = false;

  constructor(api: ApiClient, sessionId: string, seats: number[]) {
    if (seats.length === 0) throw new Error('a session model needs at least one seat');
    this.api = api;
    this.sessionId = sessionId;
    this.seats = [...seats];
    this.activeSeat = this.seats[0]!;
  }

  get seat(): number {
    return this.activeSeat;
  }

  get currentView(): StateView | null {
    return this.view;
  }

  get currentVersion(): number {
    return this.version;
  }

  /** All events seen so far, in server sequence order. */
  get events(): readonly GameEvent[] {
    return this.eventLog;
  }

  get pendingMove(): boolean {
    return this.moveInFlight;
  }

  /** Move id of the last submission that failed on the network, if any. */
  get retryableMoveId(): number | null {
    return this.failedMoveId;
  }

  get error(): string | null {
    return this.lastError;
  }

  onChange(listener: ModelListener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }

  /** Hot-seat support: switch which held seat the UI acts as. */
  async switchSeat(seat: number): Promise<void> {
    if (!this.seats.includes(seat)) throw new Error(`seat ${seat} is not held by this client`);
    this.activeSeat = seat;
    await this.refresh();
  }

  /** Refetch the active seat's view; the one recovery path for conflicts. */
  async refresh(): Promise<void> {
    const view = await this.api.view(this.sessionId, this.activeSeat);
    this.view = view;
    this.version = view.version;
    this.lastError = null;
    this.notify();
  }

  private absorbEvents(events: GameEvent[]): void {
    const last = this.eventLog.length ? this.eventLog[this.eventLog.length - 1]!.sequence : -1;
    for (const event of events) {
      if (event.sequence > last) this.eventLog.push(event);
    }
    this.eventLog.sort((a, b) => a.sequence - b.sequence);
  }

  /** Pull the full event backlog once (used on load and by tests). */
  async loadEvents(): Promise<void> {
    const batch = await this.api.events(this.sessionId, 0);
    this.eventLog = [];
    this.absorbEvents(batch.events);
    this.notify();
  }

  /**
   * Submit a move the current view offers. Returns true when the
   * move applied, false when it was rejected by a version conflict
   * (in which case the view has already been refreshed).
   */
  async submitMove(moveId: number): Promise<boolean> {
    if (this.moveInFlight) throw new Error('a move is already in flight');
    const view = this.view;
    if (!view) throw new Error('no view loaded');
    const offered = view.legal_moves.some((move) => move.move_id === moveId);
    if (!offered) throw new Error(`move_id ${moveId} is not offered by the current view`);

    this.moveInFlight = true;
    this.notify();
    let result;
    try {
      result = await this.api.submitMove(this.sessionId, this.activeSeat, this.version, moveId);
    } catch (error) {
      this.moveInFlight = false;
      this.failedMoveId = moveId;
      this.lastError = error instanceof Error ? error.message : String(error);
      this.notify();
      throw error;
    }
    this.moveInFlight = false;
    this.failedMoveId = null;
    if (!result.ok) {
      await this.refresh();
      return false;
    }
    this.view = result.view;
    this.version = result.version;
    this.lastError = null;
    this.absorbEvents(result.events);
    this.notify();
    return true;
  }

  /** Retry the last network-failed submission, if still offered. */
  async retry(): Promise<boolean> {
    const moveId = this.failedMoveId;
    if (moveId === null) throw new Error('nothing to retry');
    this.failedMoveId = null;
    return this.submitMove(moveId);
  }

  /**
   * Long-poll the events endpoint until stopPolling is called. Any
   * batch that advances the version refreshes the view, so a second
   * client's moves show up without user action.
   */
  async startPolling(): Promise<void> {
    if (this.polling) return;
    this.polling = true;
    while (this.polling) {
      const since = this.eventLog.length
        ? this.eventLog[this.eventLog.length - 1]!.sequence + 1
        : 0;
      try {
        const batch = await this.api.events(this.sessionId, since, 25);
        if (!this.polling) break;
        if (batch.events.length > 0) {
          this.absorbEvents(batch.events);
          if (batch.version !== this.version) await this.refresh();
          else this.notify();
        }
      } catch {
        if (!this.polling) break;
        await new Promise((resolve) => setTimeout(resolve, 2000));
      }
    }
  }

  stopPolling(): void {
    this.polling = false;
  }
}
