"""Monte Carlo batches for balance analysis.

Determinism contract: game i of a batch draws from stream i and its
policies from stream POLICY_STREAM_BASE + i, both derived from the
batch's master seed, so results do not depend on execution order or
worker count. Aggregation keeps exact integer totals per game and
reduces them in game-index order; floats appear only in the final
report, so a batch serializes byte-identically however it ran.

Policies choose among the engine's legal moves only:
    uniform_random     every legal move equally likely
    greedy_followers   maximize the move's immediate expected follower
                       gain; ties broken by lower money cost, then by
                       position in the legal-move list
    thrifty            greedy_followers, but never spends below a cash
                       reserve (THRIFTY_RESERVE) when a free move exists
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from growthlab import gog, growthopoly
from growthlab.core import RngStream, derive_stream
from growthlab.packs.model import (
    ABILITY_PASSIVE_FOLLOWERS,
    GAME_OF_GROWTH,
    GROWTHOPOLY,
    ContentPack,
    HackCardDef,
    scale_cost,
)
from growthlab.runner import default_players

# Policy streams live far above game streams so the two families never
# collide for any realistic batch size.
POLICY_STREAM_BASE = 2**32
THRIFTY_RESERVE = 500

Policy = Callable[[Any, list[Any], RngStream], Any]


def hack_card_ev(card: HackCardDef, follower_multiplier: Fraction = Fraction(1)) -> Fraction:
    """Expected followers from one play of a hack card, exact."""
    gain = scale_cost(card.follower_gain, follower_multiplier)
    return card.success_probability * gain


def _move_value(state: Any, move: Any) -> tuple[Fraction, int]:
    """(expected immediate follower gain, money cost) of a move."""
    if isinstance(state, gog.GogState):
        content = state.pack.game_of_growth
        assert content is not None
        kind = move.kind
        if kind == "play_hack":
            card = state.hand[move.index]
            return (
                hack_card_ev(content.hack_deck[card], state.event_card().follower_gain_multiplier),
                state.effective_hack_cost(card),
            )
        passive_total = Fraction(0)
        for slot in state.roster:
            ability = content.employee_deck[slot.card].ability
            if ability.kind == ABILITY_PASSIVE_FOLLOWERS:
                passive_total += ability.amount
        if kind == "end_turn":
            return passive_total, 0
        if kind == "hire":
            card = state.pending_employee
            assert card is not None
            ability = content.employee_deck[card].ability
            gain = Fraction(ability.amount) if ability.kind == ABILITY_PASSIVE_FOLLOWERS else Fraction(0)
            return passive_total + gain, state.effective_hire_cost(card)
        if kind == "fire":
            slot = state.roster[move.index]
            ability = content.employee_deck[slot.card].ability
            lost = Fraction(ability.amount) if ability.kind == ABILITY_PASSIVE_FOLLOWERS else Fraction(0)
            return passive_total - lost, 0
        if kind == "refuse":
            return passive_total, 0
        return Fraction(0), 0

    content = state.pack.growthopoly
    assert content is not None
    kind = move.kind
    player = state.players[state.current_player]
    if kind == "buy_followers":
        space = content.board[player.position]
        return Fraction(space.followers_granted or 0), space.price or 0
    if kind == "begin_study":
        space = content.board[move.space]
        # Studying pays off on later landings, not now.
        return Fraction(0), space.study_cost or 0
    if kind == "play_solution":
        problem = content.prob_solve_deck[state.pending_problem]
        return Fraction(problem.follower_penalty), 0
    if kind == "respond_trade":
        return Fraction(0), 0 if not move.accept else state.pending_trade.price
    if kind == "propose_trade":
        return Fraction(0), 0
    return Fraction(0), 0


def uniform_random(state: Any, moves: list[Any], rng: RngStream) -> Any:
    return moves[rng.next_below(len(moves))]


def greedy_followers(state: Any, moves: list[Any], rng: RngStream) -> Any:
    best = None
    best_key: tuple[Fraction, int, int] | None = None
    for index, move in enumerate(moves):
        value, cost = _move_value(state, move)
        key = (-value, cost, index)
        if best_key is None or key < best_key:
            best_key = key
            best = move
    assert best is not None
    return best


def thrifty(state: Any, moves: list[Any], rng: RngStream) -> Any:
    money = state.money if isinstance(state, gog.GogState) else state.players[state.current_player].money
    affordable = []
    for move in moves:
        _, cost = _move_value(state, move)
        if cost == 0 or money - cost >= THRIFTY_RESERVE:
            affordable.append(move)
    pool = affordable or moves
    return greedy_followers(state, pool, rng)


POLICIES: dict[str, Policy] = {
    "uniform_random": uniform_random,
    "greedy_followers": greedy_followers,
    "thrifty": thrifty,
}


@dataclass(frozen=True, slots=True)
class SimConfig:
    """One batch: num_games games of one setup, policies per seat (a
    single entry steers every seat; growthopoly seats are players)."""

    game: str
    num_games: int
    master_seed: int
    policies: tuple[str, ...] = ("greedy_followers",)
    num_players: int = 2
    startup_type: str = "tech"
    max_turns: int = 200

    def policy_label(self) -> str:
        return "+".join(self.policies)

    def validate(self) -> None:
        if self.game not in (GROWTHOPOLY, GAME_OF_GROWTH):
            raise ValueError(f"unknown game {self.game!r}")
        if self.num_games < 1:
            raise ValueError("num_games must be at least 1")
        if self.max_turns < 1:
            raise ValueError("max_turns must be at least 1")
        for name in self.policies:
            if name not in POLICIES:
                raise ValueError(f"unknown policy {name!r}")
        if self.game == GROWTHOPOLY and len(self.policies) not in (1, self.num_players):
            raise ValueError("give one policy or one per player")


@dataclass(slots=True)
class GameStats:
    """Exact per-game integers, the unit of aggregation."""

    index: int
    status: str
    winner: int | None
    loss_reason: str | None
    turns: int
    final_money: int
    final_followers: int
    digest: str
    # card -> [offered, played, succeeded, cost_paid, followers_gained]
    card_counters: dict[int, list[int]] = field(default_factory=dict)


def _collect_card_stats(counters: dict[int, list[int]], events: list) -> None:
    for event in events:
        if event.kind == "card_drawn" and event.payload.get("deck") == gog.DECK_HACK:
            row = counters.setdefault(event.payload["card"], [0, 0, 0, 0, 0])
            row[0] += 1
        elif event.kind == "hack_resolved":
            row = counters.setdefault(event.payload["card"], [0, 0, 0, 0, 0])
            row[1] += 1
            row[2] += 1 if event.payload["success"] else 0
            row[3] += event.payload["cost"]
            row[4] += event.payload["followers_gained"]


def run_game(pack: ContentPack, config: SimConfig, index: int) -> GameStats:
    """Play game `index` of the batch to completion (or the turn cap)."""
    policy_rng = derive_stream(config.master_seed, POLICY_STREAM_BASE + index)
    counters: dict[int, list[int]] = {}

    if config.game == GAME_OF_GROWTH:
        policy = POLICIES[config.policies[0]]
        state, _ = gog.new_game(pack, config.startup_type, config.master_seed, index)
        while not state.outcome.is_over:
            moves = gog.legal_moves(state)
            state, events = gog.apply_move(state, policy(state, moves, policy_rng))
            _collect_card_stats(counters, events)
        return GameStats(
            index=index,
            status=state.outcome.status,
            winner=state.outcome.winner,
            loss_reason=state.outcome.loss_reason,
            turns=state.outcome.turns_elapsed,
            final_money=state.money,
            final_followers=state.followers,
            digest=state.digest(),
            card_counters=counters,
        )

    players = default_players(config.num_players)
    names = list(config.policies)
    if len(names) == 1:
        names = names * config.num_players
    seat_policies = [POLICIES[name] for name in names]
    state, _ = growthopoly.new_game(pack, players, config.master_seed, index)
    while not state.outcome.is_over and state.turn_number <= config.max_turns:
        moves = growthopoly.legal_moves(state)
        policy = seat_policies[growthopoly.acting_player(state)]
        state, _ = growthopoly.apply_move(state, policy(state, moves, policy_rng))
    outcome = state.outcome
    return GameStats(
        index=index,
        status=outcome.status,
        winner=outcome.winner,
        loss_reason=outcome.loss_reason,
        turns=outcome.turns_elapsed if outcome.is_over else state.turn_number - 1,
        final_money=sum(p.money for p in state.players),
        final_followers=sum(p.followers for p in state.players),
        digest=state.digest(),
        card_counters=counters,
    )


@dataclass(slots=True)
class SimReport:
    config: SimConfig
    games: list[GameStats]

    @property
    def wins(self) -> int:
        return sum(1 for g in self.games if g.status == "won")

    @property
    def win_rate(self) -> float:
        return self.wins / len(self.games)

    @property
    def mean_turns(self) -> float:
        return sum(g.turns for g in self.games) / len(self.games)

    @property
    def mean_final_money(self) -> float:
        return sum(g.final_money for g in self.games) / len(self.games)

    @property
    def mean_final_followers(self) -> float:
        return sum(g.final_followers for g in self.games) / len(self.games)

    def card_totals(self) -> dict[int, list[int]]:
        """Exact totals per hack card, merged in game-index order."""
        totals: dict[int, list[int]] = {}
        for game in self.games:
            for card, row in sorted(game.card_counters.items()):
                bucket = totals.setdefault(card, [0, 0, 0, 0, 0])
                for i, value in enumerate(row):
                    bucket[i] += value
        return totals

    def digests(self) -> list[str]:
        return [g.digest for g in self.games]


def run_batch(pack: ContentPack, config: SimConfig, workers: int = 1) -> SimReport:
    """Run the whole batch, optionally on a thread pool. Results are
    ordered by game index, so the report is identical for any worker
    count."""
    config.validate()
    indices = range(config.num_games)
    if workers <= 1:
        games = [run_game(pack, config, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            games = list(pool.map(lambda i: run_game(pack, config, i), indices))
    games.sort(key=lambda g: g.index)
    return SimReport(config=config, games=games)


def export_csv(report: SimReport, pack: ContentPack) -> str:
    """Summary row plus one row per hack card that ever showed up."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    config = report.config
    writer.writerow(
        [
            "game",
            "policy",
            "seed",
            "games",
            "wins",
            "win_rate",
            "mean_turns",
            "mean_final_money",
            "mean_final_followers",
        ]
    )
    writer.writerow(
        [
            config.game,
            config.policy_label(),
            config.master_seed,
            len(report.games),
            report.wins,
            f"{report.win_rate:.6f}",
            f"{report.mean_turns:.6f}",
            f"{report.mean_final_money:.6f}",
            f"{report.mean_final_followers:.6f}",
        ]
    )
    totals = report.card_totals()
    if totals:
        writer.writerow([])
        writer.writerow(
            ["card", "times_offered", "times_played", "times_succeeded", "cost_paid", "followers_gained"]
        )
        content = pack.game_of_growth
        assert content is not None
        for card in sorted(totals):
            offered, played, succeeded, cost, gained = totals[card]
            writer.writerow([content.hack_deck[card].label, offered, played, succeeded, cost, gained])
    return out.getvalue()


def export_text(report: SimReport, pack: ContentPack) -> str:
    """Human-readable summary of the same numbers."""
    config = report.config
    lines = [
        f"game:            {config.game}",
        f"policy:          {config.policy_label()}",
        f"seed:            {config.master_seed}",
        f"games:           {len(report.games)}",
        f"wins:            {report.wins}",
        f"win rate:        {report.win_rate:.4f}",
        f"mean turns:      {report.mean_turns:.2f}",
        f"mean money:      {report.mean_final_money:.2f}",
        f"mean followers:  {report.mean_final_followers:.2f}",
    ]
    totals = report.card_totals()
    if totals:
        content = pack.game_of_growth
        assert content is not None
        lines.append("")
        lines.append(f"{'hack card':<26} {'offered':>8} {'played':>7} {'success':>8} {'gain':>9}")
        for card in sorted(totals):
            offered, played, succeeded, _, gained = totals[card]
            label = content.hack_deck[card].label
            lines.append(f"{label:<26} {offered:>8} {played:>7} {succeeded:>8} {gained:>9}")
    return "\n".join(lines) + "\n"
