/**
 * Typed client for the growthlab session service.
 *
 * Every method maps to one endpoint and returns the parsed body.
 * Version conflicts on move submission are part of the normal flow,
 * so submitMove reports them as a value instead of throwing; every
 * other non-2xx response becomes an ApiError carrying the server's
 * detail string.
 */

export interface Outcome {
  status: 'ongoing' | 'won' | 'lost';
  winner: number | null;
  loss_reason: string | null;
  turns_elapsed: number;
}

export interface LegalMove {
  kind: string;
  move_id: number;
  label: string;
  [field: string]: unknown;
}

export interface GameEvent {
  kind: string;
  payload: Record<string, unknown>;
  sequence: number;
}

interface ViewBase {
  game: string;
  seat: number;
  version: number;
  win_threshold: number;
  outcome: Outcome;
  legal_moves: LegalMove[];
  decks: Record<string, { draw: number; discard: number }>;
}

export interface BoardSpace {
  index: number;
  kind: string;
  category?: string;
  level?: number;
  study_cost?: number;
  follower_reward?: number;
  price?: number;
  followers_granted?: number;
}

export interface SolutionCard {
  card: number;
  label: string;
  counters_tags: string[];
}

export interface PlayerEntry {
  index: number;
  name: string;
  specialty: string;
  money: number;
  followers: number;
  position: number;
  skills: Record<string, number>;
  solution_count: number;
  /** Expanded card objects, present only on your own entry. */
  solutions?: SolutionCard[];
  slush_remaining: number | null;
  yours: boolean;
}

export interface GrowthopolyView extends ViewBase {
  game: 'growthopoly';
  board: BoardSpace[];
  players: PlayerEntry[];
  turn_number: number;
  sub_phase: string;
  current_player: number;
  acting_player: number;
  acting_seat: number;
  pending_trade: Record<string, unknown> | null;
  pending_problem: Record<string, unknown> | null;
}

export interface HandCard {
  hand_index: number;
  card: number;
  label: string;
  cost: number;
  effective_cost: number;
  success_threshold: number;
  follower_gain: number;
}

export interface RosterEntry {
  card: number;
  label: string;
  hire_cost: number;
  salary: number;
  ability: { kind: string; amount?: number };
}

export interface ActiveEvent {
  card: number;
  label: string;
  hack_cost_multiplier: number;
  follower_gain_multiplier: number;
  hiring_cost_multiplier: number;
  salaries_waived: boolean;
}

export interface GogView extends ViewBase {
  game: 'game_of_growth';
  startup_type: string;
  week: number;
  total_weeks: number;
  phase: string;
  money: number;
  followers: number;
  hand: HandCard[];
  roster: RosterEntry[];
  active_event: ActiveEvent | null;
  pending_employee: (RosterEntry & { effective_hire_cost: number }) | null;
  hack_discount_percent: number;
}

export type StateView = GrowthopolyView | GogView;

export interface SessionSummary {
  session_id: string;
  game: string;
  version: number;
  outcome: Outcome;
  seats: number[];
}

export interface CreatedSession {
  session_id: string;
  game: string;
  version: number;
  seats: number[];
  acting_seat: number;
}

export interface CreateSessionRequest {
  game: string;
  pack?: string | Record<string, unknown>;
  seed?: number;
  players?: { name: string; specialty: string }[];
  startup_type?: string;
  seats?: Record<string, number[]>;
}

export interface EventBatch {
  version: number;
  events: GameEvent[];
  outcome: Outcome;
}

export type MoveResult =
  | { ok: true; version: number; events: GameEvent[]; view: StateView }
  | { ok: false; conflict: true; version: number };

/** A non-2xx response other than a move version conflict. */
export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = 'ApiError';
    this.status = status;
  }
}

async function parseBody(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : null;
  } catch {
    throw new ApiError(response.status, `unparseable response: ${text.slice(0, 120)}`);
  }
}

function detailOf(body: unknown, status: number): string {
  if (body && typeof body === 'object' && 'detail' in body) {
    return String((body as { detail: unknown }).detail);
  }
  return `request failed with status ${status}`;
}

export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
  }

  private async get(path: string): Promise<unknown> {
    const response = await fetch(this.baseUrl + path);
    const body = await parseBody(response);
    if (!response.ok) throw new ApiError(response.status, detailOf(body, response.status));
    return body;
  }

  async health(): Promise<{ status: string }> {
    return (await this.get('/healthz')) as { status: string };
  }

  async listPacks(): Promise<string[]> {
    const body = (await this.get('/packs')) as { packs: string[] };
    return body.packs;
  }

  async listSessions(): Promise<SessionSummary[]> {
    const body = (await this.get('/sessions')) as { sessions: SessionSummary[] };
    return body.sessions;
  }

  async createSession(request: CreateSessionRequest): Promise<CreatedSession> {
    const response = await fetch(this.baseUrl + '/sessions', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(request),
    });
    const body = await parseBody(response);
    if (!response.ok) throw new ApiError(response.status, detailOf(body, response.status));
    return body as CreatedSession;
  }

  async view(sessionId: string, seat: number): Promise<StateView> {
    return (await this.get(`/sessions/${sessionId}/view?seat=${seat}`)) as StateView;
  }

  async pack(sessionId: string): Promise<Record<string, unknown>> {
    return (await this.get(`/sessions/${sessionId}/pack`)) as Record<string, unknown>;
  }

  /**
   * Fetch events with sequence >= since. With waitSeconds the server
   * long-polls: the request returns early as soon as a move lands.
   */
  async events(sessionId: string, since: number, waitSeconds?: number): Promise<EventBatch> {
    const wait = waitSeconds === undefined ? '' : `&wait=${waitSeconds}`;
    return (await this.get(`/sessions/${sessionId}/events?since=${since}${wait}`)) as EventBatch;
  }

  /**
   * Submit a move by id under optimistic concurrency. A 409 comes
   * back as {ok: false, conflict: true, version}; the caller is
   * expected to refetch the view and re-decide, never to retry the
   * same move blindly.
   */
  async submitMove(
    sessionId: string,
    seat: number,
    expectedVersion: number,
    moveId: number,
  ): Promise<MoveResult> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/moves`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ seat, expected_version: expectedVersion, move_id: moveId }),
    });
    const body = await parseBody(response);
    if (response.status === 409) {
      const conflict = body as { error: string; version: number };
      return { ok: false, conflict: true, version: conflict.version };
    }
    if (!response.ok) throw new ApiError(response.status, detailOf(body, response.status));
    const result = body as { version: number; events: GameEvent[]; view: StateView };
    return { ok: true, ...result };
  }
}
