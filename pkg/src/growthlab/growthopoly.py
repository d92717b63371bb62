"""Engine for the competitive board game.

Rules enforced here:
    - 2..8 players race to WIN_FOLLOWERS followers; first to cross
      wins on the spot, mid-resolution.
    - A turn: roll the die, advance clockwise, resolve the space
      landed on, end the turn. Passing or landing on start pays that
      lap's reward once.
    - Skill spaces can be studied by the player who lands there, for
      the printed cost, if no one else has claimed the space. Studying
      takes level turns (one fewer on the player's specialty, floored
      at zero) during which the player neither moves nor trades. Once
      a space is learned, anyone landing on it pays its owner the
      printed follower reward, doubled when the space matches the
      owner's specialty. The owner landing on their own space collects
      the same trigger.
    - Bonus spaces draw a strictly positive windfall card.
    - Trade fairs sell followers for money, take it or leave it.
    - Problem cards hurt immediately unless the lander holds a
      countering solution and chooses to spend it; solution cards are
      stored for later. Solutions can also be traded: before rolling,
      the current player may offer a held solution to another player
      for a fixed price or in a one-for-one swap, capped per turn.
    - The slush space holds a player for up to SLUSH_TURNS turns; each
      own turn they roll instead of moving and collect the slush
      reward while the roll clears the pack's threshold, leaving on
      the first miss or after the last roll.

Money never goes negative: purchases require funds to be legal, and
penalties collect only what the player has. Follower penalties clamp
at zero the same way.

Every state change flows through State.apply_event, so folding the
emitted events over the initial state reproduces any final state
exactly. Draws and shuffles record the stream cursor after use, which
makes replay a pure lookup instead of a re-roll.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from growthlab.core import (
    WON,
    Event,
    GameOutcome,
    IllegalMoveError,
    RngStream,
    derive_stream,
    roll_die,
    shuffle_indices,
    state_digest,
)
from growthlab.packs.model import (
    GROWTHOPOLY,
    SKILL_CATEGORIES,
    SOLUTION,
    SPACE_BONUS,
    SPACE_PROB_SOLVE,
    SPACE_SKILL,
    SPACE_SLUSH,
    SPACE_TRADE_FAIR,
    ContentPack,
    study_duration,
)

WIN_FOLLOWERS = 5000
MIN_PLAYERS = 2
MAX_PLAYERS = 8
SLUSH_TURNS = 3
TRADE_PROPOSALS_PER_TURN = 3
# Flat price for selling a solution card to another player. Trades are
# quantized to single-card offers so the legal-move list stays finite.
SOLUTION_SALE_PRICE = 100

PHASE_AWAITING_ROLL = "awaiting_roll"
PHASE_TRADE_PENDING = "trade_pending"
PHASE_SKILL_DECISION = "skill_decision"
PHASE_TRADE_FAIR_DECISION = "trade_fair_decision"
PHASE_PROBLEM_DECISION = "problem_decision"
PHASE_AWAITING_END = "awaiting_end"
PHASE_ENDED = "ended"

DECK_BONUS = "bonus"
DECK_PROB_SOLVE = "prob_solve"


@dataclass(frozen=True, slots=True)
class Move:
    """One player decision.

    kind            one of roll_and_move, begin_study, decline_study,
                    buy_followers, decline_trade_fair, play_solution,
                    propose_trade, respond_trade, end_turn
    space           begin_study: board index to study
    card            play_solution: solution card; propose_trade: card
                    offered by the proposer
    counterparty    propose_trade: player asked to respond
    price           propose_trade: money wanted for the card
    accept          respond_trade: take the offer or not

    Trades only ever name the proposer's own card: stored solutions
    are hidden from the other seats, so there is nothing else a
    proposal could legitimately refer to.
    """

    kind: str
    space: int | None = None
    card: int | None = None
    counterparty: int | None = None
    price: int = 0
    accept: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.space is not None:
            data["space"] = self.space
        if self.card is not None:
            data["card"] = self.card
        if self.counterparty is not None:
            data["counterparty"] = self.counterparty
        if self.price:
            data["price"] = self.price
        if self.accept is not None:
            data["accept"] = self.accept
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Move:
        return cls(
            kind=data["kind"],
            space=data.get("space"),
            card=data.get("card"),
            counterparty=data.get("counterparty"),
            price=data.get("price", 0),
            accept=data.get("accept"),
        )


@dataclass(frozen=True, slots=True)
class TradeOffer:
    proposer: int
    counterparty: int
    card: int
    price: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "proposer": self.proposer,
            "counterparty": self.counterparty,
            "card": self.card,
            "price": self.price,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TradeOffer:
        return cls(data["proposer"], data["counterparty"], data["card"], data["price"])


@dataclass(slots=True)
class DeckState:
    """Draw pile and discard pile of card indices into the pack."""

    draw: list[int] = field(default_factory=list)
    discard: list[int] = field(default_factory=list)

    def clone(self) -> DeckState:
        return DeckState(list(self.draw), list(self.discard))

    def to_dict(self) -> dict[str, list[int]]:
        return {"draw": list(self.draw), "discard": list(self.discard)}


@dataclass(slots=True)
class PlayerState:
    name: str
    specialty: str
    position: int
    money: int
    followers: int
    # board index -> turns of study left; 0 means learned.
    skills: dict[int, int] = field(default_factory=dict)
    # pack card indices, kept ascending so states digest canonically.
    solutions: list[int] = field(default_factory=list)
    slush_remaining: int | None = None
    trades_this_turn: int = 0

    @property
    def studying_space(self) -> int | None:
        for space, remaining in self.skills.items():
            if remaining > 0:
                return space
        return None

    def clone(self) -> PlayerState:
        return PlayerState(
            name=self.name,
            specialty=self.specialty,
            position=self.position,
            money=self.money,
            followers=self.followers,
            skills=dict(self.skills),
            solutions=list(self.solutions),
            slush_remaining=self.slush_remaining,
            trades_this_turn=self.trades_this_turn,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "specialty": self.specialty,
            "position": self.position,
            "money": self.money,
            "followers": self.followers,
            "skills": {str(space): left for space, left in sorted(self.skills.items())},
            "solutions": list(self.solutions),
            "slush_remaining": self.slush_remaining,
            "trades_this_turn": self.trades_this_turn,
        }


@dataclass(slots=True)
class GrowthopolyState:
    pack: ContentPack
    pack_digest: str
    players: list[PlayerState]
    current_player: int
    turn_number: int
    sub_phase: str
    pending_problem: int | None
    pending_trade: TradeOffer | None
    bonus_deck: DeckState
    prob_solve_deck: DeckState
    rng: RngStream
    outcome: GameOutcome = field(default_factory=GameOutcome)
    next_sequence: int = 0

    def clone(self) -> GrowthopolyState:
        return GrowthopolyState(
            pack=self.pack,
            pack_digest=self.pack_digest,
            players=[p.clone() for p in self.players],
            current_player=self.current_player,
            turn_number=self.turn_number,
            sub_phase=self.sub_phase,
            pending_problem=self.pending_problem,
            pending_trade=self.pending_trade,
            bonus_deck=self.bonus_deck.clone(),
            prob_solve_deck=self.prob_solve_deck.clone(),
            rng=self.rng.clone(),
            outcome=self.outcome,
            next_sequence=self.next_sequence,
        )

    def to_dict(self) -> dict[str, Any]:
        """Canonical snapshot; excludes the event log and its counter
        (see docs/state-format.md)."""
        return {
            "game": GROWTHOPOLY,
            "pack_digest": self.pack_digest,
            "players": [p.to_dict() for p in self.players],
            "current_player": self.current_player,
            "turn_number": self.turn_number,
            "sub_phase": self.sub_phase,
            "pending_problem": self.pending_problem,
            "pending_trade": None if self.pending_trade is None else self.pending_trade.to_dict(),
            "decks": {
                DECK_BONUS: self.bonus_deck.to_dict(),
                DECK_PROB_SOLVE: self.prob_solve_deck.to_dict(),
            },
            "rng": self.rng.to_dict(),
            "outcome": self.outcome.to_dict(),
        }

    def digest(self) -> str:
        return state_digest(self.to_dict())

    def _deck(self, name: str) -> DeckState:
        if name == DECK_BONUS:
            return self.bonus_deck
        if name == DECK_PROB_SOLVE:
            return self.prob_solve_deck
        raise ValueError(f"unknown deck {name!r}")

    def apply_event(self, event: Event) -> None:
        """Advance this state by one event. The only mutation path."""
        if event.sequence != self.next_sequence:
            raise ValueError(
                f"event out of order: got {event.sequence}, expected {self.next_sequence}"
            )
        self.next_sequence = event.sequence + 1
        kind = event.kind
        p = event.payload

        if kind == "game_started":
            pass
        elif kind == "turn_started":
            self.current_player = p["player"]
            self.turn_number = p["turn_number"]
            self.players[p["player"]].trades_this_turn = 0
        elif kind == "phase":
            self.sub_phase = p["to"]
        elif kind == "die_rolled":
            self.rng.cursor = p["rng_cursor"]
        elif kind == "moved":
            self.players[p["player"]].position = p["to"]
        elif kind == "gained_money":
            self.players[p["player"]].money += p["amount"]
        elif kind == "paid":
            player = self.players[p["player"]]
            player.money -= p["amount"]
            if player.money < 0:
                raise ValueError("paid event drove money negative")
        elif kind == "gained_followers":
            self.players[p["player"]].followers += p["amount"]
        elif kind == "lost_followers":
            player = self.players[p["player"]]
            player.followers -= p["amount"]
            if player.followers < 0:
                raise ValueError("lost_followers event drove followers negative")
        elif kind == "deck_shuffled":
            deck = self._deck(p["deck"])
            deck.draw = list(p["order"])
            deck.discard = []
            self.rng.cursor = p["rng_cursor"]
        elif kind == "card_drawn":
            deck = self._deck(p["deck"])
            if not deck.draw or deck.draw[0] != p["card"]:
                raise ValueError("card_drawn does not match the draw pile")
            deck.draw.pop(0)
        elif kind == "card_discarded":
            self._deck(p["deck"]).discard.append(p["card"])
            if p["deck"] == DECK_PROB_SOLVE and self.pending_problem == p["card"]:
                self.pending_problem = None
        elif kind == "deck_exhausted":
            pass
        elif kind == "solution_stored":
            insort(self.players[p["player"]].solutions, p["card"])
        elif kind == "solution_spent":
            self.players[p["player"]].solutions.remove(p["card"])
            self.prob_solve_deck.discard.append(p["card"])
        elif kind == "problem_pending":
            self.pending_problem = p["card"]
        elif kind == "skill_study_started":
            self.players[p["player"]].skills[p["space"]] = p["duration"]
        elif kind == "skill_study_progress":
            self.players[p["player"]].skills[p["space"]] = p["remaining"]
        elif kind == "skill_learned":
            self.players[p["player"]].skills[p["space"]] = 0
        elif kind == "slush_entered":
            self.players[p["player"]].slush_remaining = p["remaining"]
        elif kind == "slush_progress":
            self.players[p["player"]].slush_remaining = p["remaining"]
        elif kind == "slush_left":
            self.players[p["player"]].slush_remaining = None
        elif kind == "trade_proposed":
            self.pending_trade = TradeOffer(
                p["proposer"], p["counterparty"], p["card"], p["price"]
            )
            self.players[p["proposer"]].trades_this_turn += 1
        elif kind == "trade_accepted":
            self.pending_trade = None
        elif kind == "trade_rejected":
            self.pending_trade = None
        elif kind == "solution_transferred":
            giver = self.players[p["from"]]
            giver.solutions.remove(p["card"])
            insort(self.players[p["to"]].solutions, p["card"])
        elif kind == "money_transferred":
            payer = self.players[p["from"]]
            payer.money -= p["amount"]
            if payer.money < 0:
                raise ValueError("money_transferred drove money negative")
            self.players[p["to"]].money += p["amount"]
        elif kind == "turn_ended":
            pass
        elif kind == "game_ended":
            self.outcome = GameOutcome(
                status=p["status"],
                winner=p.get("winner"),
                loss_reason=p.get("loss_reason"),
                turns_elapsed=p["turns_elapsed"],
            )
            self.sub_phase = PHASE_ENDED
        else:
            raise ValueError(f"unknown event kind {kind!r}")


def replay_events(initial: GrowthopolyState, events: Iterable[Event]) -> GrowthopolyState:
    """Fold events over a copy of the initial state."""
    state = initial.clone()
    for event in events:
        state.apply_event(event)
    return state


class _Emit:
    """Applies each event to the state as it is emitted, so engine code
    always reads post-event values."""

    __slots__ = ("state", "events")

    def __init__(self, state: GrowthopolyState) -> None:
        self.state = state
        self.events: list[Event] = []

    def __call__(self, kind: str, **payload: Any) -> None:
        event = Event(self.state.next_sequence, kind, payload)
        self.state.apply_event(event)
        self.events.append(event)


def new_game(
    pack: ContentPack,
    players: Sequence[tuple[str, str]],
    master_seed: int,
    stream_index: int = 0,
) -> tuple[GrowthopolyState, list[Event]]:
    """Start a game. players is a sequence of (name, specialty).

    Both decks are shuffled during construction (bonus first, then
    problems and solutions), so the returned state is the replay
    baseline and the log holds a single game_started event.
    """
    content = pack.growthopoly
    if pack.game != GROWTHOPOLY or content is None:
        raise ValueError("pack does not carry growthopoly content")
    if not (MIN_PLAYERS <= len(players) <= MAX_PLAYERS):
        raise ValueError(f"player count must be {MIN_PLAYERS}..{MAX_PLAYERS}")
    for name, specialty in players:
        if specialty not in SKILL_CATEGORIES:
            raise ValueError(f"unknown specialty {specialty!r} for player {name!r}")
        if not name:
            raise ValueError("player names must be non-empty")

    rng = derive_stream(master_seed, stream_index)
    bonus_deck = DeckState(draw=shuffle_indices(rng, len(content.bonus_deck)))
    prob_deck = DeckState(draw=shuffle_indices(rng, len(content.prob_solve_deck)))
    start = content.start_index
    state = GrowthopolyState(
        pack=pack,
        pack_digest=pack.digest(),
        players=[
            PlayerState(
                name=name,
                specialty=specialty,
                position=start,
                money=content.starting_money,
                followers=content.starting_followers,
            )
            for name, specialty in players
        ],
        current_player=0,
        turn_number=1,
        sub_phase=PHASE_AWAITING_ROLL,
        pending_problem=None,
        pending_trade=None,
        bonus_deck=bonus_deck,
        prob_solve_deck=prob_deck,
        rng=rng,
    )
    emit = _Emit(state)
    emit(
        "game_started",
        game=GROWTHOPOLY,
        players=[name for name, _ in players],
        specialties=[specialty for _, specialty in players],
        master_seed=master_seed,
        stream_index=stream_index,
        pack_digest=state.pack_digest,
    )
    return state, emit.events


def _space_owner(state: GrowthopolyState, space: int) -> tuple[int, bool] | None:
    """(player index, learned) for the player who claimed the space."""
    for i, player in enumerate(state.players):
        if space in player.skills:
            return i, player.skills[space] == 0
    return None


def legal_moves(state: GrowthopolyState) -> list[Move]:
    """Every move apply_move would accept, in a deterministic order."""
    if state.outcome.is_over:
        return []
    phase = state.sub_phase
    content = state.pack.growthopoly
    assert content is not None

    if phase == PHASE_TRADE_PENDING:
        offer = state.pending_trade
        assert offer is not None
        responder = state.players[offer.counterparty]
        moves = []
        if responder.money >= offer.price:
            moves.append(Move(kind="respond_trade", accept=True))
        moves.append(Move(kind="respond_trade", accept=False))
        return moves

    player = state.players[state.current_player]
    if phase == PHASE_AWAITING_ROLL:
        # Proposals reference only the proposer's own cards: the other
        # players' stored solutions are hidden, so enumerating against
        # them would hand the proposer information no seat may have.
        moves = [Move(kind="roll_and_move")]
        if player.trades_this_turn < TRADE_PROPOSALS_PER_TURN and player.solutions:
            for counterparty in range(len(state.players)):
                if counterparty == state.current_player:
                    continue
                other = state.players[counterparty]
                if other.money < SOLUTION_SALE_PRICE:
                    continue
                for card in sorted(set(player.solutions)):
                    moves.append(
                        Move(
                            kind="propose_trade",
                            counterparty=counterparty,
                            card=card,
                            price=SOLUTION_SALE_PRICE,
                        )
                    )
        return moves
    if phase == PHASE_SKILL_DECISION:
        return [Move(kind="begin_study", space=player.position), Move(kind="decline_study")]
    if phase == PHASE_TRADE_FAIR_DECISION:
        return [Move(kind="buy_followers"), Move(kind="decline_trade_fair")]
    if phase == PHASE_PROBLEM_DECISION:
        problem = content.prob_solve_deck[state.pending_problem]  # type: ignore[index]
        moves = [
            Move(kind="play_solution", card=card)
            for card in sorted(set(player.solutions))
            if content.prob_solve_deck[card].counters(problem)
        ]
        moves.append(Move(kind="end_turn"))
        return moves
    if phase == PHASE_AWAITING_END:
        return [Move(kind="end_turn")]
    raise AssertionError(f"unexpected sub_phase {phase!r}")


def acting_player(state: GrowthopolyState) -> int:
    """Whose decision the next move is."""
    if state.pending_trade is not None and state.sub_phase == PHASE_TRADE_PENDING:
        return state.pending_trade.counterparty
    return state.current_player


def apply_move(state: GrowthopolyState, move: Move) -> tuple[GrowthopolyState, list[Event]]:
    """Apply one legal move, returning the successor state and the
    events that produced it. Raises IllegalMoveError otherwise."""
    if state.outcome.is_over:
        raise IllegalMoveError("the game is over")
    if move not in legal_moves(state):
        raise IllegalMoveError(f"move {move.kind!r} is not legal in sub_phase {state.sub_phase!r}")

    next_state = state.clone()
    emit = _Emit(next_state)
    kind = move.kind

    if kind == "roll_and_move":
        _roll_and_move(next_state, emit)
    elif kind == "propose_trade":
        emit(
            "trade_proposed",
            proposer=next_state.current_player,
            counterparty=move.counterparty,
            card=move.card,
            price=move.price,
        )
        emit("phase", to=PHASE_TRADE_PENDING)
    elif kind == "respond_trade":
        _respond_trade(next_state, emit, bool(move.accept))
    elif kind == "begin_study":
        _begin_study(next_state, emit)
    elif kind == "decline_study":
        emit("phase", to=PHASE_AWAITING_END)
    elif kind == "buy_followers":
        _buy_followers(next_state, emit)
    elif kind == "decline_trade_fair":
        emit("phase", to=PHASE_AWAITING_END)
    elif kind == "play_solution":
        player = next_state.current_player
        problem = next_state.pending_problem
        emit("solution_spent", player=player, card=move.card)
        emit("card_discarded", deck=DECK_PROB_SOLVE, card=problem)
        emit("phase", to=PHASE_AWAITING_END)
    elif kind == "end_turn":
        if next_state.sub_phase == PHASE_PROBLEM_DECISION:
            # Declining to counter: the problem bites on the way out.
            _suffer_problem(next_state, emit)
        if not next_state.outcome.is_over:
            _finish_turn(next_state, emit)
    else:
        raise IllegalMoveError(f"unknown move kind {kind!r}")
    return next_state, emit.events


def _gain_followers(
    state: GrowthopolyState, emit: _Emit, player: int, amount: int, source: str, **extra: Any
) -> bool:
    """Credit followers and settle the win condition. Returns True when
    the game just ended, in which case resolution must stop."""
    if amount > 0:
        emit("gained_followers", player=player, amount=amount, source=source, **extra)
        if state.players[player].followers >= WIN_FOLLOWERS:
            emit(
                "game_ended",
                status=WON,
                winner=player,
                turns_elapsed=state.turn_number,
            )
            return True
    return False


def _draw_card(state: GrowthopolyState, emit: _Emit, deck_name: str) -> int | None:
    """Draw from a deck, recycling the discard pile when the draw pile
    runs dry. None when there is nothing left anywhere."""
    deck = state._deck(deck_name)
    if not deck.draw:
        if not deck.discard:
            emit("deck_exhausted", deck=deck_name)
            return None
        rng = state.rng.clone()
        order = [deck.discard[j] for j in shuffle_indices(rng, len(deck.discard))]
        emit("deck_shuffled", deck=deck_name, order=order, rng_cursor=rng.cursor)
    card = state._deck(deck_name).draw[0]
    emit("card_drawn", deck=deck_name, card=card, player=state.current_player)
    return card


def _roll_and_move(state: GrowthopolyState, emit: _Emit) -> None:
    content = state.pack.growthopoly
    assert content is not None
    player_idx = state.current_player
    player = state.players[player_idx]

    rng = state.rng.clone()
    value = roll_die(rng)
    emit("die_rolled", player=player_idx, value=value, context="move", rng_cursor=rng.cursor)

    size = len(content.board)
    start = content.start_index
    origin = player.position
    destination = (origin + value) % size
    passed_start = any((origin + step) % size == start for step in range(1, value + 1))
    emit("moved", player=player_idx, origin=origin, to=destination, passed_start=passed_start)

    if passed_start:
        if content.start_reward_money > 0:
            emit(
                "gained_money",
                player=player_idx,
                amount=content.start_reward_money,
                source="start",
            )
        if _gain_followers(state, emit, player_idx, content.start_reward_followers, "start"):
            return
    _resolve_landing(state, emit, destination)


def _resolve_landing(state: GrowthopolyState, emit: _Emit, space_idx: int) -> None:
    content = state.pack.growthopoly
    assert content is not None
    space = content.board[space_idx]
    player_idx = state.current_player
    player = state.players[player_idx]

    if space.kind == SPACE_SKILL:
        owner = _space_owner(state, space_idx)
        if owner is not None:
            owner_idx, learned = owner
            if learned:
                reward = space.follower_reward or 0
                if space.category == state.players[owner_idx].specialty:
                    reward *= 2
                if _gain_followers(
                    state, emit, owner_idx, reward, "skill_space", space=space_idx
                ):
                    return
            emit("phase", to=PHASE_AWAITING_END)
            return
        if space.study_cost is not None and player.money >= space.study_cost:
            emit("phase", to=PHASE_SKILL_DECISION)
        else:
            emit("phase", to=PHASE_AWAITING_END)
        return

    if space.kind == SPACE_BONUS:
        card = _draw_card(state, emit, DECK_BONUS)
        if card is not None:
            definition = content.bonus_deck[card]
            if definition.money_delta > 0:
                emit(
                    "gained_money",
                    player=player_idx,
                    amount=definition.money_delta,
                    source="bonus",
                    card=card,
                )
            ended = _gain_followers(
                state, emit, player_idx, definition.follower_delta, "bonus", card=card
            )
            if ended:
                return
            emit("card_discarded", deck=DECK_BONUS, card=card)
        emit("phase", to=PHASE_AWAITING_END)
        return

    if space.kind == SPACE_TRADE_FAIR:
        if space.price is not None and player.money >= space.price:
            emit("phase", to=PHASE_TRADE_FAIR_DECISION)
        else:
            emit("phase", to=PHASE_AWAITING_END)
        return

    if space.kind == SPACE_PROB_SOLVE:
        card = _draw_card(state, emit, DECK_PROB_SOLVE)
        if card is None:
            emit("phase", to=PHASE_AWAITING_END)
            return
        definition = content.prob_solve_deck[card]
        if definition.kind == SOLUTION:
            emit("solution_stored", player=player_idx, card=card)
            emit("phase", to=PHASE_AWAITING_END)
            return
        has_counter = any(
            content.prob_solve_deck[held].counters(definition) for held in player.solutions
        )
        if has_counter:
            emit("problem_pending", card=card)
            emit("phase", to=PHASE_PROBLEM_DECISION)
        else:
            _apply_problem_penalties(state, emit, card)
            emit("card_discarded", deck=DECK_PROB_SOLVE, card=card)
            emit("phase", to=PHASE_AWAITING_END)
        return

    if space.kind == SPACE_SLUSH:
        emit("slush_entered", player=player_idx, remaining=SLUSH_TURNS)
        emit("phase", to=PHASE_AWAITING_END)
        return

    # Start: the lap reward was already granted by the move itself.
    emit("phase", to=PHASE_AWAITING_END)


def _apply_problem_penalties(state: GrowthopolyState, emit: _Emit, card: int) -> None:
    content = state.pack.growthopoly
    assert content is not None
    definition = content.prob_solve_deck[card]
    player_idx = state.current_player
    player = state.players[player_idx]
    # Penalties collect only what the player actually has.
    money_hit = min(definition.money_penalty, player.money)
    if money_hit > 0:
        emit("paid", player=player_idx, amount=money_hit, reason="problem", card=card)
    follower_hit = min(definition.follower_penalty, player.followers)
    if follower_hit > 0:
        emit("lost_followers", player=player_idx, amount=follower_hit, reason="problem", card=card)


def _suffer_problem(state: GrowthopolyState, emit: _Emit) -> None:
    card = state.pending_problem
    assert card is not None
    _apply_problem_penalties(state, emit, card)
    emit("card_discarded", deck=DECK_PROB_SOLVE, card=card)


def _begin_study(state: GrowthopolyState, emit: _Emit) -> None:
    content = state.pack.growthopoly
    assert content is not None
    player_idx = state.current_player
    player = state.players[player_idx]
    space_idx = player.position
    space = content.board[space_idx]
    assert space.study_cost is not None and space.level is not None
    emit("paid", player=player_idx, amount=space.study_cost, reason="study", space=space_idx)
    duration = study_duration(space.level, space.category == player.specialty)
    emit("skill_study_started", player=player_idx, space=space_idx, duration=duration)
    if duration == 0:
        emit("skill_learned", player=player_idx, space=space_idx)
    emit("phase", to=PHASE_AWAITING_END)


def _buy_followers(state: GrowthopolyState, emit: _Emit) -> None:
    content = state.pack.growthopoly
    assert content is not None
    player_idx = state.current_player
    space = content.board[state.players[player_idx].position]
    assert space.price is not None and space.followers_granted is not None
    emit("paid", player=player_idx, amount=space.price, reason="trade_fair")
    if _gain_followers(state, emit, player_idx, space.followers_granted, "trade_fair"):
        return
    emit("phase", to=PHASE_AWAITING_END)


def _respond_trade(state: GrowthopolyState, emit: _Emit, accept: bool) -> None:
    offer = state.pending_trade
    assert offer is not None
    if accept:
        emit("solution_transferred", **{"from": offer.proposer, "to": offer.counterparty}, card=offer.card)
        if offer.price > 0:
            emit(
                "money_transferred",
                **{"from": offer.counterparty, "to": offer.proposer},
                amount=offer.price,
            )
        emit("trade_accepted", proposer=offer.proposer, counterparty=offer.counterparty)
    else:
        emit("trade_rejected", proposer=offer.proposer, counterparty=offer.counterparty)
    emit("phase", to=PHASE_AWAITING_ROLL)


def _finish_turn(state: GrowthopolyState, emit: _Emit) -> None:
    emit("turn_ended", player=state.current_player)
    next_player = (state.current_player + 1) % len(state.players)
    next_turn = state.turn_number + (1 if next_player == 0 else 0)
    emit("turn_started", player=next_player, turn_number=next_turn)
    _run_turn_automatics(state, emit)


def _run_turn_automatics(state: GrowthopolyState, emit: _Emit) -> None:
    """Forced turn-start effects: study progress or the slush roll.
    Either one consumes the movement phase of the turn."""
    content = state.pack.growthopoly
    assert content is not None
    player_idx = state.current_player
    player = state.players[player_idx]

    studying = player.studying_space
    if studying is not None:
        remaining = player.skills[studying] - 1
        emit("skill_study_progress", player=player_idx, space=studying, remaining=remaining)
        if remaining == 0:
            emit("skill_learned", player=player_idx, space=studying)
        emit("phase", to=PHASE_AWAITING_END)
        return

    if player.slush_remaining is not None:
        rng = state.rng.clone()
        value = roll_die(rng)
        emit(
            "die_rolled", player=player_idx, value=value, context="slush", rng_cursor=rng.cursor
        )
        if value >= content.slush_success_threshold:
            remaining = player.slush_remaining - 1
            emit("slush_progress", player=player_idx, remaining=remaining)
            ended = _gain_followers(
                state, emit, player_idx, content.slush_follower_reward, "slush"
            )
            if ended:
                return
            if remaining == 0:
                emit("slush_left", player=player_idx)
        else:
            emit("slush_left", player=player_idx)
        emit("phase", to=PHASE_AWAITING_END)
        return

    emit("phase", to=PHASE_AWAITING_ROLL)
