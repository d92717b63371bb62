"""Engine for the cooperative startup game.

One team runs a startup of a chosen type (tech, service, or
entertainment; the type filters the decks) for TOTAL_WEEKS weekly
turns, starting with STARTING_MONEY. The team wins the moment it
reaches WIN_FOLLOWERS followers and loses when the weeks run out or
when upkeep salaries exceed the cash on hand.

A week runs through three phases:
    upkeep    pay every employee's salary (skipped entirely when a
              waiver is armed; unpayable salaries end the game with no
              partial payment), then draw the week's event card, whose
              modifiers apply for this week only, then draw a hand of
              up to HAND_SIZE hack cards.
    hacks     play any affordable hacks one at a time, or stop; a
              played hack pays its effective cost, rolls the die, and
              on success credits its follower gain scaled by the
              event's follower multiplier. A rerolling teammate
              automatically rerolls the first failed roll each week.
              The whole hand is discarded by the end of the week.
    employee  reveal the top candidate, then hire them (effective
              cost = hire cost scaled by the event's hiring
              multiplier) or pass; optionally fire teammates; then end
              the week. Passive teammates credit their followers when
              the week ends. Fired and refused candidates go to the
              employee discard pile.

Cost arithmetic is integer floor math: the event multiplier is applied
first, then the summed hack discounts of the roster, flooring after
each step.

All mutation flows through State.apply_event; folding the event log
over the initial state reproduces the final state exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from growthlab.core import (
    LOST,
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
    ABILITY_HACK_DISCOUNT,
    ABILITY_PASSIVE_FOLLOWERS,
    ABILITY_REROLL,
    GAME_OF_GROWTH,
    ContentPack,
    EventCardDef,
    scale_cost,
)

WIN_FOLLOWERS = 5000
STARTING_MONEY = 5000
TOTAL_WEEKS = 10
HAND_SIZE = 3

LOSS_TURNS_EXHAUSTED = "turns_exhausted"
LOSS_BANKRUPT = "bankrupt"

PHASE_UPKEEP = "upkeep"
PHASE_EVENT = "event"  # transient: passed through while resolving draw_event
PHASE_HACKS = "hacks"
PHASE_EMPLOYEE = "employee"
PHASE_ENDED = "ended"

DECK_EVENT = "event"
DECK_HACK = "hack"
DECK_EMPLOYEE = "employee"

_NO_EVENT = EventCardDef(label="none")


@dataclass(frozen=True, slots=True)
class Move:
    """kind is one of draw_event, play_hack, skip_remaining_hacks,
    reveal_employee, hire, refuse, fire, end_turn. index is the hand
    position for play_hack and the roster position for fire."""

    kind: str
    index: int | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.index is not None:
            data["index"] = self.index
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Move:
        return cls(kind=data["kind"], index=data.get("index"))


@dataclass(frozen=True, slots=True)
class RosterSlot:
    card: int
    hired_week: int

    def to_dict(self) -> dict[str, int]:
        return {"card": self.card, "hired_week": self.hired_week}


@dataclass(slots=True)
class DeckState:
    draw: list[int] = field(default_factory=list)
    discard: list[int] = field(default_factory=list)

    def clone(self) -> DeckState:
        return DeckState(list(self.draw), list(self.discard))

    def to_dict(self) -> dict[str, list[int]]:
        return {"draw": list(self.draw), "discard": list(self.discard)}


@dataclass(slots=True)
class GogState:
    pack: ContentPack
    pack_digest: str
    startup_type: str
    money: int
    followers: int
    week: int
    phase: str
    active_event: int | None
    waive_next_salaries: bool
    hand: list[int]
    roster: list[RosterSlot]
    pending_employee: int | None
    employee_revealed: bool
    reroll_used: bool
    event_deck: DeckState
    hack_deck: DeckState
    employee_deck: DeckState
    rng: RngStream
    outcome: GameOutcome = field(default_factory=GameOutcome)
    next_sequence: int = 0

    def clone(self) -> GogState:
        return GogState(
            pack=self.pack,
            pack_digest=self.pack_digest,
            startup_type=self.startup_type,
            money=self.money,
            followers=self.followers,
            week=self.week,
            phase=self.phase,
            active_event=self.active_event,
            waive_next_salaries=self.waive_next_salaries,
            hand=list(self.hand),
            roster=list(self.roster),
            pending_employee=self.pending_employee,
            employee_revealed=self.employee_revealed,
            reroll_used=self.reroll_used,
            event_deck=self.event_deck.clone(),
            hack_deck=self.hack_deck.clone(),
            employee_deck=self.employee_deck.clone(),
            rng=self.rng.clone(),
            outcome=self.outcome,
            next_sequence=self.next_sequence,
        )

    def to_dict(self) -> dict[str, Any]:
        """Canonical snapshot; excludes the event log and its counter
        (see docs/state-format.md)."""
        return {
            "game": GAME_OF_GROWTH,
            "pack_digest": self.pack_digest,
            "startup_type": self.startup_type,
            "money": self.money,
            "followers": self.followers,
            "week": self.week,
            "phase": self.phase,
            "active_event": self.active_event,
            "waive_next_salaries": self.waive_next_salaries,
            "hand": list(self.hand),
            "roster": [slot.to_dict() for slot in self.roster],
            "pending_employee": self.pending_employee,
            "employee_revealed": self.employee_revealed,
            "reroll_used": self.reroll_used,
            "decks": {
                DECK_EVENT: self.event_deck.to_dict(),
                DECK_HACK: self.hack_deck.to_dict(),
                DECK_EMPLOYEE: self.employee_deck.to_dict(),
            },
            "rng": self.rng.to_dict(),
            "outcome": self.outcome.to_dict(),
        }

    def digest(self) -> str:
        return state_digest(self.to_dict())

    def _deck(self, name: str) -> DeckState:
        if name == DECK_EVENT:
            return self.event_deck
        if name == DECK_HACK:
            return self.hack_deck
        if name == DECK_EMPLOYEE:
            return self.employee_deck
        raise ValueError(f"unknown deck {name!r}")

    def event_card(self) -> EventCardDef:
        """The modifiers in force this week (identity when no event)."""
        if self.active_event is None:
            return _NO_EVENT
        content = self.pack.game_of_growth
        assert content is not None
        return content.event_deck[self.active_event]

    def hack_discount_percent(self) -> int:
        content = self.pack.game_of_growth
        assert content is not None
        total = 0
        for slot in self.roster:
            ability = content.employee_deck[slot.card].ability
            if ability.kind == ABILITY_HACK_DISCOUNT:
                total += ability.amount
        return min(total, 100)

    def effective_hack_cost(self, card: int) -> int:
        content = self.pack.game_of_growth
        assert content is not None
        cost = scale_cost(content.hack_deck[card].cost, self.event_card().hack_cost_multiplier)
        discount = self.hack_discount_percent()
        return (cost * (100 - discount)) // 100

    def effective_hire_cost(self, card: int) -> int:
        content = self.pack.game_of_growth
        assert content is not None
        return scale_cost(
            content.employee_deck[card].hire_cost, self.event_card().hiring_cost_multiplier
        )

    def has_reroller(self) -> bool:
        content = self.pack.game_of_growth
        assert content is not None
        return any(
            content.employee_deck[slot.card].ability.kind == ABILITY_REROLL
            for slot in self.roster
        )

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
            self.week = p["week"]
        elif kind == "phase":
            self.phase = p["to"]
        elif kind == "paid":
            self.money -= p["amount"]
            if self.money < 0:
                raise ValueError("paid event drove money negative")
        elif kind == "salaries_waived":
            self.waive_next_salaries = False
        elif kind == "waiver_armed":
            self.waive_next_salaries = True
        elif kind == "deck_shuffled":
            deck = self._deck(p["deck"])
            deck.draw = list(p["order"])
            deck.discard = []
            self.rng.cursor = p["rng_cursor"]
        elif kind == "card_drawn":
            name = p["deck"]
            deck = self._deck(name)
            if not deck.draw or deck.draw[0] != p["card"]:
                raise ValueError("card_drawn does not match the draw pile")
            deck.draw.pop(0)
            if name == DECK_EVENT:
                self.active_event = p["card"]
            elif name == DECK_HACK:
                self.hand.append(p["card"])
            else:
                self.pending_employee = p["card"]
                self.employee_revealed = True
        elif kind == "card_discarded":
            name = p["deck"]
            if name == DECK_EVENT:
                self.active_event = None
            elif name == DECK_HACK:
                self.hand.remove(p["card"])
            else:
                if self.pending_employee != p["card"]:
                    raise ValueError("discarded employee is not the pending candidate")
                self.pending_employee = None
            self._deck(name).discard.append(p["card"])
        elif kind == "deck_exhausted":
            pass
        elif kind == "die_rolled":
            self.rng.cursor = p["rng_cursor"]
        elif kind == "reroll_used":
            self.reroll_used = True
        elif kind == "hack_resolved":
            pass
        elif kind == "gained_followers":
            self.followers += p["amount"]
        elif kind == "employee_hired":
            self.pending_employee = None
            self.roster.append(RosterSlot(card=p["card"], hired_week=p["week"]))
        elif kind == "employee_fired":
            slot = self.roster.pop(p["roster_index"])
            if slot.card != p["card"]:
                raise ValueError("fired card does not match the roster slot")
            self.employee_deck.discard.append(slot.card)
        elif kind == "turn_ended":
            self.reroll_used = False
            self.employee_revealed = False
        elif kind == "week_advanced":
            self.week = p["week"]
        elif kind == "game_ended":
            self.outcome = GameOutcome(
                status=p["status"],
                winner=p.get("winner"),
                loss_reason=p.get("loss_reason"),
                turns_elapsed=p["turns_elapsed"],
            )
            self.phase = PHASE_ENDED
        else:
            raise ValueError(f"unknown event kind {kind!r}")


def replay_events(initial: GogState, events: Iterable[Event]) -> GogState:
    """Fold events over a copy of the initial state."""
    state = initial.clone()
    for event in events:
        state.apply_event(event)
    return state


class _Emit:
    __slots__ = ("state", "events")

    def __init__(self, state: GogState) -> None:
        self.state = state
        self.events: list[Event] = []

    def __call__(self, kind: str, **payload: Any) -> None:
        event = Event(self.state.next_sequence, kind, payload)
        self.state.apply_event(event)
        self.events.append(event)


def new_game(
    pack: ContentPack,
    startup_type: str,
    master_seed: int,
    stream_index: int = 0,
) -> tuple[GogState, list[Event]]:
    """Start a campaign. The startup type's exclusions are applied and
    the three decks shuffled (event, hack, employee, in that order)
    during construction, so the returned state is the replay baseline
    and the log holds a single game_started event."""
    content = pack.game_of_growth
    if pack.game != GAME_OF_GROWTH or content is None:
        raise ValueError("pack does not carry game_of_growth content")
    try:
        flavour = content.startup_type(startup_type)
    except KeyError:
        raise ValueError(f"unknown startup type {startup_type!r}") from None

    rng = derive_stream(master_seed, stream_index)

    def filtered_deck(cards: tuple, excluded: tuple[str, ...]) -> DeckState:
        banned = set(excluded)
        allowed = [i for i, card in enumerate(cards) if card.label not in banned]
        return DeckState(draw=[allowed[j] for j in shuffle_indices(rng, len(allowed))])

    event_deck = filtered_deck(content.event_deck, flavour.excluded_events)
    hack_deck = filtered_deck(content.hack_deck, flavour.excluded_hacks)
    employee_deck = filtered_deck(content.employee_deck, flavour.excluded_employees)

    state = GogState(
        pack=pack,
        pack_digest=pack.digest(),
        startup_type=startup_type,
        money=STARTING_MONEY,
        followers=0,
        week=1,
        phase=PHASE_UPKEEP,
        active_event=None,
        waive_next_salaries=False,
        hand=[],
        roster=[],
        pending_employee=None,
        employee_revealed=False,
        reroll_used=False,
        event_deck=event_deck,
        hack_deck=hack_deck,
        employee_deck=employee_deck,
        rng=rng,
    )
    emit = _Emit(state)
    emit(
        "game_started",
        game=GAME_OF_GROWTH,
        startup_type=startup_type,
        master_seed=master_seed,
        stream_index=stream_index,
        pack_digest=state.pack_digest,
    )
    return state, emit.events


def legal_moves(state: GogState) -> list[Move]:
    """Every move apply_move would accept, in a deterministic order."""
    if state.outcome.is_over:
        return []
    if state.phase == PHASE_UPKEEP:
        return [Move(kind="draw_event")]
    if state.phase == PHASE_HACKS:
        moves = [
            Move(kind="play_hack", index=i)
            for i in range(len(state.hand))
            if state.effective_hack_cost(state.hand[i]) <= state.money
        ]
        moves.append(Move(kind="skip_remaining_hacks"))
        return moves
    if state.phase == PHASE_EMPLOYEE:
        if state.pending_employee is not None:
            moves = []
            if state.effective_hire_cost(state.pending_employee) <= state.money:
                moves.append(Move(kind="hire"))
            moves.append(Move(kind="refuse"))
            return moves
        deck = state.employee_deck
        if not state.employee_revealed and (deck.draw or deck.discard):
            return [Move(kind="reveal_employee")]
        moves = [Move(kind="fire", index=i) for i in range(len(state.roster))]
        moves.append(Move(kind="end_turn"))
        return moves
    raise AssertionError(f"unexpected phase {state.phase!r}")


def acting_player(state: GogState) -> int:
    """The team acts as a single seat."""
    return 0


def apply_move(state: GogState, move: Move) -> tuple[GogState, list[Event]]:
    """Apply one legal move, returning the successor state and the
    events that produced it. Raises IllegalMoveError otherwise."""
    if state.outcome.is_over:
        raise IllegalMoveError("the game is over")
    if move not in legal_moves(state):
        raise IllegalMoveError(f"move {move.kind!r} is not legal in phase {state.phase!r}")

    next_state = state.clone()
    emit = _Emit(next_state)
    kind = move.kind

    if kind == "draw_event":
        _start_week(next_state, emit)
    elif kind == "play_hack":
        assert move.index is not None
        _play_hack(next_state, emit, move.index)
    elif kind == "skip_remaining_hacks":
        _discard_hand(next_state, emit)
        emit("phase", to=PHASE_EMPLOYEE)
    elif kind == "reveal_employee":
        card = _draw_card(next_state, emit, DECK_EMPLOYEE)
        assert card is not None  # legal only when a card is available
    elif kind == "hire":
        card = next_state.pending_employee
        assert card is not None
        cost = next_state.effective_hire_cost(card)
        if cost > 0:
            emit("paid", amount=cost, reason="hire", card=card)
        emit("employee_hired", card=card, week=next_state.week, roster_index=len(next_state.roster))
    elif kind == "refuse":
        emit("card_discarded", deck=DECK_EMPLOYEE, card=next_state.pending_employee)
    elif kind == "fire":
        index = move.index
        assert index is not None
        emit("employee_fired", roster_index=index, card=next_state.roster[index].card)
    elif kind == "end_turn":
        _end_week(next_state, emit)
    else:
        raise IllegalMoveError(f"unknown move kind {kind!r}")
    return next_state, emit.events


def _gain_followers(state: GogState, emit: _Emit, amount: int, source: str, **extra: Any) -> bool:
    """Credit followers and settle the win condition. Returns True when
    the game just ended."""
    if amount > 0:
        emit("gained_followers", amount=amount, source=source, **extra)
        if state.followers >= WIN_FOLLOWERS:
            emit("game_ended", status=WON, winner=0, turns_elapsed=state.week)
            return True
    return False


def _draw_card(state: GogState, emit: _Emit, deck_name: str) -> int | None:
    deck = state._deck(deck_name)
    if not deck.draw:
        if not deck.discard:
            emit("deck_exhausted", deck=deck_name)
            return None
        rng = state.rng.clone()
        order = [deck.discard[j] for j in shuffle_indices(rng, len(deck.discard))]
        emit("deck_shuffled", deck=deck_name, order=order, rng_cursor=rng.cursor)
    card = state._deck(deck_name).draw[0]
    emit("card_drawn", deck=deck_name, card=card)
    return card


def _start_week(state: GogState, emit: _Emit) -> None:
    content = state.pack.game_of_growth
    assert content is not None
    emit("turn_started", week=state.week)

    if state.waive_next_salaries:
        emit("salaries_waived", week=state.week)
    else:
        total = sum(content.employee_deck[slot.card].salary for slot in state.roster)
        if total > state.money:
            # Payroll cannot be met: the startup folds with no partial
            # payment taken.
            emit(
                "game_ended",
                status=LOST,
                loss_reason=LOSS_BANKRUPT,
                turns_elapsed=state.week,
            )
            return
        for i, slot in enumerate(state.roster):
            salary = content.employee_deck[slot.card].salary
            if salary > 0:
                emit("paid", amount=salary, reason="salary", card=slot.card, roster_index=i)

    emit("phase", to=PHASE_EVENT)
    card = _draw_card(state, emit, DECK_EVENT)
    if card is not None and content.event_deck[card].salaries_waived:
        emit("waiver_armed")

    emit("phase", to=PHASE_HACKS)
    for _ in range(HAND_SIZE):
        if _draw_card(state, emit, DECK_HACK) is None:
            break


def _play_hack(state: GogState, emit: _Emit, hand_index: int) -> None:
    content = state.pack.game_of_growth
    assert content is not None
    card = state.hand[hand_index]
    definition = content.hack_deck[card]

    cost = state.effective_hack_cost(card)
    if cost > 0:
        emit("paid", amount=cost, reason="hack", card=card)

    rng = state.rng.clone()
    value = roll_die(rng)
    emit("die_rolled", value=value, context="hack", card=card, rng_cursor=rng.cursor)
    rolls = [value]
    success = value >= definition.success_threshold
    if not success and not state.reroll_used and state.has_reroller():
        emit("reroll_used")
        rng = state.rng.clone()
        value = roll_die(rng)
        emit("die_rolled", value=value, context="hack_reroll", card=card, rng_cursor=rng.cursor)
        rolls.append(value)
        success = value >= definition.success_threshold

    gain = 0
    if success:
        # The event's follower multiplier scales hack gains only;
        # passive employee gains are unscaled.
        gain = scale_cost(definition.follower_gain, state.event_card().follower_gain_multiplier)
    emit(
        "hack_resolved",
        card=card,
        cost=cost,
        rolls=rolls,
        success=success,
        followers_gained=gain,
    )
    emit("card_discarded", deck=DECK_HACK, card=card)
    if _gain_followers(state, emit, gain, "hack", card=card):
        return
    if not state.hand:
        emit("phase", to=PHASE_EMPLOYEE)


def _discard_hand(state: GogState, emit: _Emit) -> None:
    for card in list(state.hand):
        emit("card_discarded", deck=DECK_HACK, card=card)


def _end_week(state: GogState, emit: _Emit) -> None:
    content = state.pack.game_of_growth
    assert content is not None
    for slot in list(state.roster):
        ability = content.employee_deck[slot.card].ability
        if ability.kind == ABILITY_PASSIVE_FOLLOWERS:
            if _gain_followers(state, emit, ability.amount, "employee", card=slot.card):
                return
    if state.active_event is not None:
        emit("card_discarded", deck=DECK_EVENT, card=state.active_event)
    emit("turn_ended", week=state.week)
    if state.week >= TOTAL_WEEKS:
        emit(
            "game_ended",
            status=LOST,
            loss_reason=LOSS_TURNS_EXHAUSTED,
            turns_elapsed=state.week,
        )
        return
    emit("week_advanced", week=state.week + 1)
    emit("phase", to=PHASE_UPKEEP)
