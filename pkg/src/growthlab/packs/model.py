"""Typed card and board definitions for both games.

A ContentPack is an immutable bundle of definitions loaded from a JSON
document (see docs/pack-format.md). Engines index cards by their
position in the deck tuples, so a pack document is also the card id
space for logs and digests.

Multipliers on event cards are stored as exact fractions. JSON numbers
are converted through their decimal string form, so 0.5 means exactly
1/2 and 0.1 means exactly 1/10; cost arithmetic in the engines is
integer floor math on these fractions and never touches binary floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

GROWTHOPOLY = "growthopoly"
GAME_OF_GROWTH = "game_of_growth"
GAMES = (GROWTHOPOLY, GAME_OF_GROWTH)

SCHEMA_VERSION = 1

SKILL_CATEGORIES: tuple[str, ...] = (
    "search_engine_optimization",
    "email_marketing",
    "social_media_marketing",
    "public_relations",
    "product_development",
    "display_advertising",
    "content_marketing",
    "search_engine_marketing",
)

SPACE_START = "start"
SPACE_SKILL = "skill"
SPACE_BONUS = "bonus"
SPACE_TRADE_FAIR = "trade_fair"
SPACE_PROB_SOLVE = "prob_solve"
SPACE_SLUSH = "slush"
SPACE_KINDS = (
    SPACE_START,
    SPACE_SKILL,
    SPACE_BONUS,
    SPACE_TRADE_FAIR,
    SPACE_PROB_SOLVE,
    SPACE_SLUSH,
)

MIN_BOARD_SPACES = 12
MIN_SKILL_LEVEL = 1
MAX_SKILL_LEVEL = 3

# Die thresholds outside this range make success automatic or
# impossible, which defeats the point of rolling.
MIN_SUCCESS_THRESHOLD = 2
MAX_SUCCESS_THRESHOLD = 6

ABILITY_PASSIVE_FOLLOWERS = "passive_followers"
ABILITY_HACK_DISCOUNT = "hack_discount"
ABILITY_REROLL = "reroll_once_per_turn"
ABILITY_KINDS = (ABILITY_PASSIVE_FOLLOWERS, ABILITY_HACK_DISCOUNT, ABILITY_REROLL)

STARTUP_TYPE_NAMES = ("tech", "service", "entertainment")

PROBLEM = "problem"
SOLUTION = "solution"


def parse_ratio(raw: Any) -> Fraction | None:
    """Exact fraction from a JSON number or a "p/q" / decimal string.

    Floats go through str() so the author's written decimal is what is
    kept, not the nearest binary float. Returns None when raw is not a
    usable non-negative ratio.
    """
    if isinstance(raw, bool):
        return None
    try:
        if isinstance(raw, int):
            value = Fraction(raw)
        elif isinstance(raw, float):
            value = Fraction(str(raw))
        elif isinstance(raw, str):
            value = Fraction(raw.strip())
        else:
            return None
    except (ValueError, ZeroDivisionError):
        return None
    return value if value >= 0 else None


def ratio_to_json(value: Fraction) -> int | float | str:
    """Inverse of parse_ratio, preferring the friendliest exact form."""
    if value.denominator == 1:
        return value.numerator
    as_float = float(value)
    if Fraction(str(as_float)) == value:
        return as_float
    return f"{value.numerator}/{value.denominator}"


def scale_cost(amount: int, multiplier: Fraction) -> int:
    """Apply a fractional multiplier to a money amount, flooring."""
    return (amount * multiplier.numerator) // multiplier.denominator


def study_duration(level: int, is_specialty: bool) -> int:
    """Turns a player spends studying a skill space of the given level.

    A specialty skill takes one turn fewer, floored at zero; a zero
    duration means the skill is learned the moment studying begins.
    """
    duration = level - (1 if is_specialty else 0)
    return duration if duration > 0 else 0


@dataclass(frozen=True, slots=True)
class SpaceDef:
    """One board space. Fields besides kind apply only to some kinds:
    category/level/study_cost/follower_reward to skill spaces,
    price/followers_granted to trade fairs."""

    kind: str
    category: str | None = None
    level: int | None = None
    study_cost: int | None = None
    follower_reward: int | None = None
    price: int | None = None
    followers_granted: int | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.kind == SPACE_SKILL:
            data.update(
                category=self.category,
                level=self.level,
                study_cost=self.study_cost,
                follower_reward=self.follower_reward,
            )
        elif self.kind == SPACE_TRADE_FAIR:
            data.update(price=self.price, followers_granted=self.followers_granted)
        return data


@dataclass(frozen=True, slots=True)
class BonusCardDef:
    """Always-positive windfall: non-negative deltas, positive total."""

    label: str
    money_delta: int = 0
    follower_delta: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "money_delta": self.money_delta,
            "follower_delta": self.follower_delta,
        }


@dataclass(frozen=True, slots=True)
class ProbSolveCardDef:
    """A problem (penalties, tagged) or a solution (counters tags)."""

    kind: str
    label: str
    tag: str | None = None
    money_penalty: int = 0
    follower_penalty: int = 0
    counters_tags: tuple[str, ...] = ()

    def counters(self, problem: ProbSolveCardDef) -> bool:
        return self.kind == SOLUTION and problem.tag in self.counters_tags

    def to_dict(self) -> dict[str, Any]:
        if self.kind == PROBLEM:
            return {
                "kind": self.kind,
                "label": self.label,
                "tag": self.tag,
                "money_penalty": self.money_penalty,
                "follower_penalty": self.follower_penalty,
            }
        return {"kind": self.kind, "label": self.label, "counters_tags": list(self.counters_tags)}


@dataclass(frozen=True, slots=True)
class HackCardDef:
    """A growth experiment: pay cost, roll a die, succeed on threshold
    or higher."""

    label: str
    cost: int
    success_threshold: int
    follower_gain: int

    @property
    def success_probability(self) -> Fraction:
        return Fraction(7 - self.success_threshold, 6)

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "cost": self.cost,
            "success_threshold": self.success_threshold,
            "follower_gain": self.follower_gain,
        }


@dataclass(frozen=True, slots=True)
class EventCardDef:
    """Week-scoped modifiers. At least one field must differ from the
    defaults for the card to do anything."""

    label: str
    hiring_cost_multiplier: Fraction = Fraction(1)
    hack_cost_multiplier: Fraction = Fraction(1)
    salaries_waived: bool = False
    follower_gain_multiplier: Fraction = Fraction(1)

    @property
    def is_noop(self) -> bool:
        return (
            self.hiring_cost_multiplier == 1
            and self.hack_cost_multiplier == 1
            and not self.salaries_waived
            and self.follower_gain_multiplier == 1
        )

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"label": self.label}
        if self.hiring_cost_multiplier != 1:
            data["hiring_cost_multiplier"] = ratio_to_json(self.hiring_cost_multiplier)
        if self.hack_cost_multiplier != 1:
            data["hack_cost_multiplier"] = ratio_to_json(self.hack_cost_multiplier)
        if self.salaries_waived:
            data["salaries_waived"] = True
        if self.follower_gain_multiplier != 1:
            data["follower_gain_multiplier"] = ratio_to_json(self.follower_gain_multiplier)
        return data


@dataclass(frozen=True, slots=True)
class EmployeeAbility:
    """kind is one of ABILITY_KINDS; amount is followers per turn for
    passive_followers, a percent in 1..100 for hack_discount, unused
    for reroll_once_per_turn."""

    kind: str
    amount: int = 0

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.kind != ABILITY_REROLL:
            data["amount"] = self.amount
        return data


@dataclass(frozen=True, slots=True)
class EmployeeCardDef:
    """Hireable teammate: one-off hire cost plus a per-turn salary.
    Never free in both dimensions."""

    label: str
    hire_cost: int
    salary: int
    ability: EmployeeAbility

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "hire_cost": self.hire_cost,
            "salary": self.salary,
            "ability": self.ability.to_dict(),
        }


@dataclass(frozen=True, slots=True)
class StartupTypeDef:
    """Deck filter for one startup flavour: listed labels are removed
    from the matching decks before play."""

    name: str
    excluded_hacks: tuple[str, ...] = ()
    excluded_events: tuple[str, ...] = ()
    excluded_employees: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "excluded_hacks": list(self.excluded_hacks),
            "excluded_events": list(self.excluded_events),
            "excluded_employees": list(self.excluded_employees),
        }


@dataclass(frozen=True, slots=True)
class GrowthopolyContent:
    """Board plus decks plus the numeric knobs of the competitive game."""

    board: tuple[SpaceDef, ...]
    bonus_deck: tuple[BonusCardDef, ...]
    prob_solve_deck: tuple[ProbSolveCardDef, ...]
    starting_money: int
    starting_followers: int
    start_reward_money: int
    start_reward_followers: int
    slush_success_threshold: int
    slush_follower_reward: int

    @property
    def start_index(self) -> int:
        return next(i for i, s in enumerate(self.board) if s.kind == SPACE_START)

    @property
    def slush_index(self) -> int:
        return next(i for i, s in enumerate(self.board) if s.kind == SPACE_SLUSH)

    def to_dict(self) -> dict[str, Any]:
        return {
            "starting_money": self.starting_money,
            "starting_followers": self.starting_followers,
            "start_reward": {
                "money": self.start_reward_money,
                "followers": self.start_reward_followers,
            },
            "slush": {
                "success_threshold": self.slush_success_threshold,
                "follower_reward": self.slush_follower_reward,
            },
            "board": [s.to_dict() for s in self.board],
            "bonus_deck": [c.to_dict() for c in self.bonus_deck],
            "prob_solve_deck": [c.to_dict() for c in self.prob_solve_deck],
        }


@dataclass(frozen=True, slots=True)
class GogContent:
    """Decks and startup-type filters of the cooperative game."""

    hack_deck: tuple[HackCardDef, ...]
    event_deck: tuple[EventCardDef, ...]
    employee_deck: tuple[EmployeeCardDef, ...]
    startup_types: tuple[StartupTypeDef, ...] = field(default_factory=tuple)

    def startup_type(self, name: str) -> StartupTypeDef:
        for st in self.startup_types:
            if st.name == name:
                return st
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "hack_deck": [c.to_dict() for c in self.hack_deck],
            "event_deck": [c.to_dict() for c in self.event_deck],
            "employee_deck": [c.to_dict() for c in self.employee_deck],
            "startup_types": {st.name: st.to_dict() for st in self.startup_types},
        }


@dataclass(frozen=True, slots=True)
class ContentPack:
    """One game's content, addressable by deck position."""

    game: str
    name: str
    version: str
    growthopoly: GrowthopolyContent | None = None
    game_of_growth: GogContent | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "game": self.game,
            "metadata": {"name": self.name, "version": self.version},
        }
        if self.growthopoly is not None:
            data["growthopoly"] = self.growthopoly.to_dict()
        if self.game_of_growth is not None:
            data["game_of_growth"] = self.game_of_growth.to_dict()
        return data

    def digest(self) -> str:
        from growthlab.core import state_digest

        return state_digest(self.to_dict())
