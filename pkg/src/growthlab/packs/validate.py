"""Pack loading and validation.

load_pack is total: any JSON document (or non-JSON bytes) produces a
(pack, violations) pair and never an exception. Violations carry a
stable dotted path, a stable rule id, and a severity; output is sorted
by (path, rule) so runs are comparable.

Rule ids:
    io.unreadable       file could not be read
    syntax.json         document is not valid JSON
    pack.document       top level is not a JSON object
    schema.version      schema_version missing or unsupported
    pack.game           game missing or unknown
    pack.metadata       metadata name/version missing or empty
    pack.section        declared game's content section missing
    field.missing       required field absent
    field.type          field has the wrong type
    field.range         numeric field outside its domain
    field.unknown       unrecognized field (warning)
    board.length        board shorter than the minimum
    board.start_count   not exactly one start space
    board.slush_count   not exactly one slush space
    board.category_coverage  a skill category with no space
    space.kind          unknown space kind
    skill.category      unknown skill category
    skill.level         skill level outside 1..3
    skill.study_cost    study cost not positive
    skill.follower_reward  follower reward not positive
    trade_fair.price    price not positive
    trade_fair.followers  followers granted not positive
    bonus.always_positive  bonus card not strictly positive
    probsolve.kind      card kind not problem or solution
    problem.tag         problem with an empty tag
    problem.effect      problem with no penalty at all
    solution.counters   solution that counters nothing
    slush.threshold     slush success threshold outside 2..6
    slush.reward        slush follower reward not positive
    hack.threshold      success threshold outside 2..6
    hack.gain           follower gain not positive
    event.effect        event card with all modifiers at defaults
    employee.ability    unknown or malformed ability
    employee.not_free   employee free to hire and free to keep
    deck.empty          a deck with zero cards
    deck.duplicate_label  two cards in a deck share a label
    startup.types       startup type names not exactly the known three
    pack.crossref       a tag or label reference resolves to nothing

Structural rules (field.*, schema.*, pack.*) are found while walking
the raw document; domain rules are found by validate_pack on the built
model, so programmatically constructed packs get the same coverage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from growthlab.packs.model import (
    ABILITY_HACK_DISCOUNT,
    ABILITY_KINDS,
    ABILITY_PASSIVE_FOLLOWERS,
    ABILITY_REROLL,
    GAME_OF_GROWTH,
    GAMES,
    GROWTHOPOLY,
    MAX_SKILL_LEVEL,
    MAX_SUCCESS_THRESHOLD,
    MIN_BOARD_SPACES,
    MIN_SKILL_LEVEL,
    MIN_SUCCESS_THRESHOLD,
    PROBLEM,
    SCHEMA_VERSION,
    SKILL_CATEGORIES,
    SOLUTION,
    SPACE_KINDS,
    SPACE_SKILL,
    SPACE_SLUSH,
    SPACE_START,
    SPACE_TRADE_FAIR,
    STARTUP_TYPE_NAMES,
    BonusCardDef,
    ContentPack,
    EmployeeAbility,
    EmployeeCardDef,
    EventCardDef,
    GogContent,
    GrowthopolyContent,
    HackCardDef,
    ProbSolveCardDef,
    SpaceDef,
    StartupTypeDef,
    parse_ratio,
)

ERROR = "error"
WARNING = "warning"

# Rule ids that mean the document never reached validation proper;
# the CLI maps these to its "unreadable" exit code.
UNREADABLE_RULES = frozenset({"io.unreadable", "syntax.json"})


@dataclass(frozen=True, slots=True)
class Violation:
    path: str
    rule: str
    message: str
    severity: str = ERROR

    def format(self) -> str:
        return f"{self.severity} {self.path} {self.rule}: {self.message}"


def _sorted(violations: list[Violation]) -> list[Violation]:
    return sorted(violations, key=lambda v: (v.path, v.rule, v.message))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class _Walk:
    """Collects violations while pulling typed fields out of raw JSON."""

    __slots__ = ("violations", "failed")

    def __init__(self) -> None:
        self.violations: list[Violation] = []
        self.failed = False

    def error(self, path: str, rule: str, message: str) -> None:
        self.violations.append(Violation(path, rule, message, ERROR))
        self.failed = True

    def warning(self, path: str, rule: str, message: str) -> None:
        self.violations.append(Violation(path, rule, message, WARNING))

    def take(
        self,
        obj: dict[str, Any],
        path: str,
        key: str,
        expect: str,
        required: bool = True,
        default: Any = None,
    ) -> Any:
        """Fetch obj[key], checking its JSON type. Returns default on
        any failure after recording the violation."""
        if key not in obj:
            if required:
                self.error(f"{path}.{key}", "field.missing", f"required field {key!r} is missing")
            return default
        value = obj[key]
        if expect == "int":
            if not _is_int(value):
                self.error(f"{path}.{key}", "field.type", f"{key!r} must be a whole number")
                return default
            return value
        if expect == "str":
            if not isinstance(value, str) or not value:
                self.error(f"{path}.{key}", "field.type", f"{key!r} must be a non-empty string")
                return default
            return value
        if expect == "bool":
            if not isinstance(value, bool):
                self.error(f"{path}.{key}", "field.type", f"{key!r} must be true or false")
                return default
            return value
        if expect == "list":
            if not isinstance(value, list):
                self.error(f"{path}.{key}", "field.type", f"{key!r} must be an array")
                return default
            return value
        if expect == "dict":
            if not isinstance(value, dict):
                self.error(f"{path}.{key}", "field.type", f"{key!r} must be an object")
                return default
            return value
        if expect == "ratio":
            ratio = parse_ratio(value)
            if ratio is None:
                self.error(
                    f"{path}.{key}",
                    "field.type",
                    f"{key!r} must be a non-negative number or p/q string",
                )
                return default
            return ratio
        raise AssertionError(f"unknown expectation {expect}")

    def finish(self, obj: dict[str, Any], path: str, known: set[str]) -> None:
        for key in obj:
            if key not in known:
                self.warning(f"{path}.{key}", "field.unknown", f"unrecognized field {key!r}")


def _walk_space(walk: _Walk, raw: Any, path: str) -> SpaceDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "space must be an object")
        return None
    kind = walk.take(raw, path, "kind", "str")
    if kind is None:
        return None
    if kind not in SPACE_KINDS:
        walk.error(f"{path}.kind", "space.kind", f"unknown space kind {kind!r}")
        return None
    if kind == SPACE_SKILL:
        category = walk.take(raw, path, "category", "str")
        level = walk.take(raw, path, "level", "int")
        study_cost = walk.take(raw, path, "study_cost", "int")
        follower_reward = walk.take(raw, path, "follower_reward", "int")
        walk.finish(raw, path, {"kind", "category", "level", "study_cost", "follower_reward"})
        if None in (category, level, study_cost, follower_reward):
            return None
        return SpaceDef(
            kind,
            category=category,
            level=level,
            study_cost=study_cost,
            follower_reward=follower_reward,
        )
    if kind == SPACE_TRADE_FAIR:
        price = walk.take(raw, path, "price", "int")
        followers = walk.take(raw, path, "followers_granted", "int")
        walk.finish(raw, path, {"kind", "price", "followers_granted"})
        if None in (price, followers):
            return None
        return SpaceDef(kind, price=price, followers_granted=followers)
    walk.finish(raw, path, {"kind"})
    return SpaceDef(kind)


def _walk_bonus(walk: _Walk, raw: Any, path: str) -> BonusCardDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "bonus card must be an object")
        return None
    label = walk.take(raw, path, "label", "str")
    money = walk.take(raw, path, "money_delta", "int", required=False, default=0)
    followers = walk.take(raw, path, "follower_delta", "int", required=False, default=0)
    walk.finish(raw, path, {"label", "money_delta", "follower_delta"})
    if label is None or money is None or followers is None:
        return None
    return BonusCardDef(label, money_delta=money, follower_delta=followers)


def _walk_prob_solve(walk: _Walk, raw: Any, path: str) -> ProbSolveCardDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "card must be an object")
        return None
    kind = walk.take(raw, path, "kind", "str")
    label = walk.take(raw, path, "label", "str")
    if kind is None or label is None:
        return None
    if kind == PROBLEM:
        tag = walk.take(raw, path, "tag", "str")
        money = walk.take(raw, path, "money_penalty", "int", required=False, default=0)
        followers = walk.take(raw, path, "follower_penalty", "int", required=False, default=0)
        walk.finish(raw, path, {"kind", "label", "tag", "money_penalty", "follower_penalty"})
        if tag is None or money is None or followers is None:
            return None
        return ProbSolveCardDef(
            kind, label, tag=tag, money_penalty=money, follower_penalty=followers
        )
    if kind == SOLUTION:
        counters = walk.take(raw, path, "counters_tags", "list")
        walk.finish(raw, path, {"kind", "label", "counters_tags"})
        if counters is None:
            return None
        tags: list[str] = []
        for i, tag in enumerate(counters):
            if not isinstance(tag, str) or not tag:
                walk.error(
                    f"{path}.counters_tags[{i}]", "field.type", "tags must be non-empty strings"
                )
                return None
            tags.append(tag)
        return ProbSolveCardDef(kind, label, counters_tags=tuple(tags))
    walk.error(f"{path}.kind", "probsolve.kind", f"card kind must be problem or solution, got {kind!r}")
    return None


def _walk_growthopoly(walk: _Walk, raw: Any, path: str) -> GrowthopolyContent | None:
    if not isinstance(raw, dict):
        walk.error(path, "pack.section", "growthopoly section must be an object")
        return None
    starting_money = walk.take(raw, path, "starting_money", "int")
    starting_followers = walk.take(raw, path, "starting_followers", "int", required=False, default=0)
    reward_raw = walk.take(raw, path, "start_reward", "dict")
    reward_money = reward_followers = None
    if reward_raw is not None:
        reward_money = walk.take(reward_raw, f"{path}.start_reward", "money", "int")
        reward_followers = walk.take(reward_raw, f"{path}.start_reward", "followers", "int")
        walk.finish(reward_raw, f"{path}.start_reward", {"money", "followers"})
    slush_raw = walk.take(raw, path, "slush", "dict")
    slush_threshold = slush_reward = None
    if slush_raw is not None:
        slush_threshold = walk.take(slush_raw, f"{path}.slush", "success_threshold", "int")
        slush_reward = walk.take(slush_raw, f"{path}.slush", "follower_reward", "int")
        walk.finish(slush_raw, f"{path}.slush", {"success_threshold", "follower_reward"})
    board_raw = walk.take(raw, path, "board", "list")
    bonus_raw = walk.take(raw, path, "bonus_deck", "list")
    prob_raw = walk.take(raw, path, "prob_solve_deck", "list")
    walk.finish(
        raw,
        path,
        {
            "starting_money",
            "starting_followers",
            "start_reward",
            "slush",
            "board",
            "bonus_deck",
            "prob_solve_deck",
        },
    )

    board: list[SpaceDef] = []
    if board_raw is not None:
        for i, space_raw in enumerate(board_raw):
            space = _walk_space(walk, space_raw, f"{path}.board[{i}]")
            if space is not None:
                board.append(space)
    bonus_deck: list[BonusCardDef] = []
    if bonus_raw is not None:
        for i, card_raw in enumerate(bonus_raw):
            card = _walk_bonus(walk, card_raw, f"{path}.bonus_deck[{i}]")
            if card is not None:
                bonus_deck.append(card)
    prob_deck: list[ProbSolveCardDef] = []
    if prob_raw is not None:
        for i, card_raw in enumerate(prob_raw):
            card = _walk_prob_solve(walk, card_raw, f"{path}.prob_solve_deck[{i}]")
            if card is not None:
                prob_deck.append(card)

    if walk.failed:
        return None
    assert starting_money is not None
    assert reward_money is not None and reward_followers is not None
    assert slush_threshold is not None and slush_reward is not None
    return GrowthopolyContent(
        board=tuple(board),
        bonus_deck=tuple(bonus_deck),
        prob_solve_deck=tuple(prob_deck),
        starting_money=starting_money,
        starting_followers=starting_followers,
        start_reward_money=reward_money,
        start_reward_followers=reward_followers,
        slush_success_threshold=slush_threshold,
        slush_follower_reward=slush_reward,
    )


def _walk_hack(walk: _Walk, raw: Any, path: str) -> HackCardDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "hack card must be an object")
        return None
    label = walk.take(raw, path, "label", "str")
    cost = walk.take(raw, path, "cost", "int")
    threshold = walk.take(raw, path, "success_threshold", "int")
    gain = walk.take(raw, path, "follower_gain", "int")
    walk.finish(raw, path, {"label", "cost", "success_threshold", "follower_gain"})
    if None in (label, cost, threshold, gain):
        return None
    return HackCardDef(label, cost=cost, success_threshold=threshold, follower_gain=gain)


def _walk_event(walk: _Walk, raw: Any, path: str) -> EventCardDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "event card must be an object")
        return None
    label = walk.take(raw, path, "label", "str")
    one = parse_ratio(1)
    hiring = walk.take(raw, path, "hiring_cost_multiplier", "ratio", required=False, default=one)
    hack = walk.take(raw, path, "hack_cost_multiplier", "ratio", required=False, default=one)
    waived = walk.take(raw, path, "salaries_waived", "bool", required=False, default=False)
    gain = walk.take(raw, path, "follower_gain_multiplier", "ratio", required=False, default=one)
    walk.finish(
        raw,
        path,
        {
            "label",
            "hiring_cost_multiplier",
            "hack_cost_multiplier",
            "salaries_waived",
            "follower_gain_multiplier",
        },
    )
    if label is None or None in (hiring, hack, gain) or waived is None:
        return None
    return EventCardDef(
        label,
        hiring_cost_multiplier=hiring,
        hack_cost_multiplier=hack,
        salaries_waived=waived,
        follower_gain_multiplier=gain,
    )


def _walk_employee(walk: _Walk, raw: Any, path: str) -> EmployeeCardDef | None:
    if not isinstance(raw, dict):
        walk.error(path, "field.type", "employee card must be an object")
        return None
    label = walk.take(raw, path, "label", "str")
    hire_cost = walk.take(raw, path, "hire_cost", "int")
    salary = walk.take(raw, path, "salary", "int")
    ability_raw = walk.take(raw, path, "ability", "dict")
    walk.finish(raw, path, {"label", "hire_cost", "salary", "ability"})
    ability = None
    if ability_raw is not None:
        ability_path = f"{path}.ability"
        kind = walk.take(ability_raw, ability_path, "kind", "str")
        amount = walk.take(ability_raw, ability_path, "amount", "int", required=False, default=0)
        walk.finish(ability_raw, ability_path, {"kind", "amount"})
        if kind is not None and amount is not None:
            ability = EmployeeAbility(kind, amount=amount)
    if None in (label, hire_cost, salary) or ability is None:
        return None
    return EmployeeCardDef(label, hire_cost=hire_cost, salary=salary, ability=ability)


def _walk_gog(walk: _Walk, raw: Any, path: str) -> GogContent | None:
    if not isinstance(raw, dict):
        walk.error(path, "pack.section", "game_of_growth section must be an object")
        return None
    hacks_raw = walk.take(raw, path, "hack_deck", "list")
    events_raw = walk.take(raw, path, "event_deck", "list")
    employees_raw = walk.take(raw, path, "employee_deck", "list")
    types_raw = walk.take(raw, path, "startup_types", "dict")
    walk.finish(raw, path, {"hack_deck", "event_deck", "employee_deck", "startup_types"})

    hacks: list[HackCardDef] = []
    if hacks_raw is not None:
        for i, card_raw in enumerate(hacks_raw):
            card = _walk_hack(walk, card_raw, f"{path}.hack_deck[{i}]")
            if card is not None:
                hacks.append(card)
    events: list[EventCardDef] = []
    if events_raw is not None:
        for i, card_raw in enumerate(events_raw):
            card = _walk_event(walk, card_raw, f"{path}.event_deck[{i}]")
            if card is not None:
                events.append(card)
    employees: list[EmployeeCardDef] = []
    if employees_raw is not None:
        for i, card_raw in enumerate(employees_raw):
            card = _walk_employee(walk, card_raw, f"{path}.employee_deck[{i}]")
            if card is not None:
                employees.append(card)

    types: list[StartupTypeDef] = []
    if types_raw is not None:
        for name in types_raw:
            type_path = f"{path}.startup_types.{name}"
            type_raw = types_raw[name]
            if not isinstance(type_raw, dict):
                walk.error(type_path, "field.type", "startup type must be an object")
                continue
            lists: dict[str, tuple[str, ...]] = {}
            ok = True
            for key in ("excluded_hacks", "excluded_events", "excluded_employees"):
                items_raw = walk.take(type_raw, type_path, key, "list", required=False, default=[])
                if items_raw is None:
                    ok = False
                    continue
                items: list[str] = []
                for i, item in enumerate(items_raw):
                    if not isinstance(item, str) or not item:
                        walk.error(
                            f"{type_path}.{key}[{i}]",
                            "field.type",
                            "excluded labels must be non-empty strings",
                        )
                        ok = False
                    else:
                        items.append(item)
                lists[key] = tuple(items)
            walk.finish(
                type_raw, type_path, {"excluded_hacks", "excluded_events", "excluded_employees"}
            )
            if ok:
                types.append(
                    StartupTypeDef(
                        name,
                        excluded_hacks=lists["excluded_hacks"],
                        excluded_events=lists["excluded_events"],
                        excluded_employees=lists["excluded_employees"],
                    )
                )

    if walk.failed:
        return None
    return GogContent(
        hack_deck=tuple(hacks),
        event_deck=tuple(events),
        employee_deck=tuple(employees),
        startup_types=tuple(types),
    )


def load_pack(document: str | bytes | dict[str, Any]) -> tuple[ContentPack | None, list[Violation]]:
    """Parse and validate a pack document.

    Returns (pack, violations). The pack is None whenever any
    error-severity violation was found; warnings alone still yield a
    usable pack.
    """
    if isinstance(document, (str, bytes)):
        try:
            raw = json.loads(document)
        except json.JSONDecodeError as exc:
            return None, [Violation("$", "syntax.json", f"invalid JSON: {exc.msg} at line {exc.lineno}")]
    else:
        raw = document

    walk = _Walk()
    if not isinstance(raw, dict):
        walk.error("$", "pack.document", "pack document must be a JSON object")
        return None, _sorted(walk.violations)

    version = walk.take(raw, "$", "schema_version", "int")
    if version is not None and version != SCHEMA_VERSION:
        walk.error(
            "$.schema_version", "schema.version", f"unsupported schema_version {version}"
        )
    game = walk.take(raw, "$", "game", "str")
    if game is not None and game not in GAMES:
        walk.error("$.game", "pack.game", f"game must be one of {', '.join(GAMES)}")
        game = None
    metadata = walk.take(raw, "$", "metadata", "dict")
    name = version_str = None
    if metadata is not None:
        name = walk.take(metadata, "$.metadata", "name", "str")
        version_str = walk.take(metadata, "$.metadata", "version", "str")
        walk.finish(metadata, "$.metadata", {"name", "version"})
        if name is None or version_str is None:
            walk.error("$.metadata", "pack.metadata", "metadata needs a name and a version")
    walk.finish(raw, "$", {"schema_version", "game", "metadata", GROWTHOPOLY, GAME_OF_GROWTH})

    growthopoly = gog = None
    if game == GROWTHOPOLY:
        if GROWTHOPOLY not in raw:
            walk.error(f"$.{GROWTHOPOLY}", "pack.section", "declared game has no content section")
        else:
            growthopoly = _walk_growthopoly(walk, raw[GROWTHOPOLY], GROWTHOPOLY)
        if GAME_OF_GROWTH in raw:
            walk.warning(
                f"$.{GAME_OF_GROWTH}", "field.unknown", "section does not match the declared game"
            )
    elif game == GAME_OF_GROWTH:
        if GAME_OF_GROWTH not in raw:
            walk.error(f"$.{GAME_OF_GROWTH}", "pack.section", "declared game has no content section")
        else:
            gog = _walk_gog(walk, raw[GAME_OF_GROWTH], GAME_OF_GROWTH)
        if GROWTHOPOLY in raw:
            walk.warning(
                f"$.{GROWTHOPOLY}", "field.unknown", "section does not match the declared game"
            )

    if walk.failed:
        return None, _sorted(walk.violations)
    assert game is not None and name is not None and version_str is not None
    pack = ContentPack(
        game=game,
        name=name,
        version=version_str,
        growthopoly=growthopoly,
        game_of_growth=gog,
    )
    violations = walk.violations + validate_pack(pack)
    usable = not any(v.severity == ERROR for v in violations)
    return (pack if usable else None), _sorted(violations)


def load_pack_file(path: str | Path) -> tuple[ContentPack | None, list[Violation]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        return None, [Violation("$", "io.unreadable", f"cannot read {path}: {exc.strerror or exc}")]
    return load_pack(text)


def _check_deck_labels(out: list[Violation], path: str, labels: list[str]) -> None:
    if not labels:
        out.append(Violation(path, "deck.empty", "deck has no cards"))
    seen: set[str] = set()
    for i, label in enumerate(labels):
        if label in seen:
            out.append(
                Violation(f"{path}[{i}].label", "deck.duplicate_label", f"duplicate label {label!r}")
            )
        seen.add(label)


def _nonneg(out: list[Violation], path: str, value: int, what: str) -> None:
    if value < 0:
        out.append(Violation(path, "field.range", f"{what} must not be negative"))


def _validate_growthopoly(out: list[Violation], content: GrowthopolyContent) -> None:
    root = GROWTHOPOLY
    _nonneg(out, f"{root}.starting_money", content.starting_money, "starting money")
    _nonneg(out, f"{root}.starting_followers", content.starting_followers, "starting followers")
    _nonneg(out, f"{root}.start_reward.money", content.start_reward_money, "start reward money")
    _nonneg(
        out, f"{root}.start_reward.followers", content.start_reward_followers, "start reward followers"
    )
    if not (MIN_SUCCESS_THRESHOLD <= content.slush_success_threshold <= MAX_SUCCESS_THRESHOLD):
        out.append(
            Violation(
                f"{root}.slush.success_threshold",
                "slush.threshold",
                f"threshold must be in {MIN_SUCCESS_THRESHOLD}..{MAX_SUCCESS_THRESHOLD} so the"
                " roll stays a real gamble",
            )
        )
    if content.slush_follower_reward <= 0:
        out.append(
            Violation(f"{root}.slush.follower_reward", "slush.reward", "reward must be positive")
        )

    if len(content.board) < MIN_BOARD_SPACES:
        out.append(
            Violation(
                f"{root}.board",
                "board.length",
                f"board has {len(content.board)} spaces, needs at least {MIN_BOARD_SPACES}",
            )
        )
    starts = sum(1 for s in content.board if s.kind == SPACE_START)
    if starts != 1:
        out.append(
            Violation(f"{root}.board", "board.start_count", f"board needs exactly one start space, has {starts}")
        )
    slushes = sum(1 for s in content.board if s.kind == SPACE_SLUSH)
    if slushes != 1:
        out.append(
            Violation(f"{root}.board", "board.slush_count", f"board needs exactly one slush space, has {slushes}")
        )
    covered = {s.category for s in content.board if s.kind == SPACE_SKILL}
    for category in SKILL_CATEGORIES:
        if category not in covered:
            out.append(
                Violation(
                    f"{root}.board",
                    "board.category_coverage",
                    f"no skill space for category {category!r}",
                )
            )

    for i, space in enumerate(content.board):
        path = f"{root}.board[{i}]"
        if space.kind == SPACE_SKILL:
            assert space.category is not None and space.level is not None
            assert space.study_cost is not None and space.follower_reward is not None
            if space.category not in SKILL_CATEGORIES:
                out.append(
                    Violation(f"{path}.category", "skill.category", f"unknown category {space.category!r}")
                )
            if not (MIN_SKILL_LEVEL <= space.level <= MAX_SKILL_LEVEL):
                out.append(
                    Violation(
                        f"{path}.level",
                        "skill.level",
                        f"level must be in {MIN_SKILL_LEVEL}..{MAX_SKILL_LEVEL}",
                    )
                )
            if space.study_cost <= 0:
                out.append(Violation(f"{path}.study_cost", "skill.study_cost", "study cost must be positive"))
            if space.follower_reward <= 0:
                out.append(
                    Violation(
                        f"{path}.follower_reward", "skill.follower_reward", "follower reward must be positive"
                    )
                )
        elif space.kind == SPACE_TRADE_FAIR:
            assert space.price is not None and space.followers_granted is not None
            if space.price <= 0:
                out.append(Violation(f"{path}.price", "trade_fair.price", "price must be positive"))
            if space.followers_granted <= 0:
                out.append(
                    Violation(
                        f"{path}.followers_granted",
                        "trade_fair.followers",
                        "followers granted must be positive",
                    )
                )

    _check_deck_labels(out, f"{root}.bonus_deck", [c.label for c in content.bonus_deck])
    for i, card in enumerate(content.bonus_deck):
        path = f"{root}.bonus_deck[{i}]"
        if card.money_delta < 0 or card.follower_delta < 0 or card.money_delta + card.follower_delta <= 0:
            out.append(
                Violation(
                    path,
                    "bonus.always_positive",
                    "bonus cards are always positive: deltas must be non-negative and total above zero",
                )
            )

    _check_deck_labels(out, f"{root}.prob_solve_deck", [c.label for c in content.prob_solve_deck])
    problem_tags: set[str] = set()
    for card in content.prob_solve_deck:
        if card.kind == PROBLEM and card.tag:
            problem_tags.add(card.tag)
    for i, card in enumerate(content.prob_solve_deck):
        path = f"{root}.prob_solve_deck[{i}]"
        if card.kind == PROBLEM:
            if not card.tag:
                out.append(Violation(f"{path}.tag", "problem.tag", "problem needs a non-empty tag"))
            _nonneg(out, f"{path}.money_penalty", card.money_penalty, "money penalty")
            _nonneg(out, f"{path}.follower_penalty", card.follower_penalty, "follower penalty")
            if (
                card.money_penalty >= 0
                and card.follower_penalty >= 0
                and card.money_penalty + card.follower_penalty <= 0
            ):
                out.append(
                    Violation(path, "problem.effect", "problem must carry some penalty")
                )
        elif card.kind == SOLUTION:
            if not card.counters_tags:
                out.append(
                    Violation(
                        f"{path}.counters_tags", "solution.counters", "solution must counter at least one tag"
                    )
                )
            for j, tag in enumerate(card.counters_tags):
                if tag not in problem_tags:
                    out.append(
                        Violation(
                            f"{path}.counters_tags[{j}]",
                            "pack.crossref",
                            f"tag {tag!r} matches no problem in this deck",
                        )
                    )
        else:
            out.append(
                Violation(f"{path}.kind", "probsolve.kind", f"card kind must be problem or solution, got {card.kind!r}")
            )


def _validate_gog(out: list[Violation], content: GogContent) -> None:
    root = GAME_OF_GROWTH
    _check_deck_labels(out, f"{root}.hack_deck", [c.label for c in content.hack_deck])
    for i, card in enumerate(content.hack_deck):
        path = f"{root}.hack_deck[{i}]"
        _nonneg(out, f"{path}.cost", card.cost, "cost")
        if not (MIN_SUCCESS_THRESHOLD <= card.success_threshold <= MAX_SUCCESS_THRESHOLD):
            out.append(
                Violation(
                    f"{path}.success_threshold",
                    "hack.threshold",
                    f"threshold {card.success_threshold} makes success "
                    f"{'impossible' if card.success_threshold > MAX_SUCCESS_THRESHOLD else 'automatic'};"
                    f" must be in {MIN_SUCCESS_THRESHOLD}..{MAX_SUCCESS_THRESHOLD}",
                )
            )
        if card.follower_gain <= 0:
            out.append(Violation(f"{path}.follower_gain", "hack.gain", "follower gain must be positive"))

    _check_deck_labels(out, f"{root}.event_deck", [c.label for c in content.event_deck])
    for i, card in enumerate(content.event_deck):
        if card.is_noop:
            out.append(
                Violation(
                    f"{root}.event_deck[{i}]",
                    "event.effect",
                    "event card must change at least one modifier from its default",
                )
            )

    _check_deck_labels(out, f"{root}.employee_deck", [c.label for c in content.employee_deck])
    for i, card in enumerate(content.employee_deck):
        path = f"{root}.employee_deck[{i}]"
        _nonneg(out, f"{path}.hire_cost", card.hire_cost, "hire cost")
        _nonneg(out, f"{path}.salary", card.salary, "salary")
        ability = card.ability
        if ability.kind not in ABILITY_KINDS:
            out.append(
                Violation(f"{path}.ability.kind", "employee.ability", f"unknown ability {ability.kind!r}")
            )
        elif ability.kind == ABILITY_PASSIVE_FOLLOWERS and ability.amount <= 0:
            out.append(
                Violation(f"{path}.ability.amount", "employee.ability", "passive followers need a positive amount")
            )
        elif ability.kind == ABILITY_HACK_DISCOUNT and not (1 <= ability.amount <= 100):
            out.append(
                Violation(f"{path}.ability.amount", "employee.ability", "discount must be a percent in 1..100")
            )
        if card.hire_cost >= 0 and card.salary >= 0 and card.hire_cost + card.salary <= 0:
            out.append(
                Violation(path, "employee.not_free", "an employee must cost something to hire or to keep")
            )

    names = [st.name for st in content.startup_types]
    if sorted(names) != sorted(STARTUP_TYPE_NAMES):
        out.append(
            Violation(
                f"{root}.startup_types",
                "startup.types",
                f"startup types must be exactly {', '.join(STARTUP_TYPE_NAMES)}",
            )
        )
    hack_labels = {c.label for c in content.hack_deck}
    event_labels = {c.label for c in content.event_deck}
    employee_labels = {c.label for c in content.employee_deck}
    for st in content.startup_types:
        base = f"{root}.startup_types.{st.name}"
        for key, pool, labels in (
            ("excluded_hacks", hack_labels, st.excluded_hacks),
            ("excluded_events", event_labels, st.excluded_events),
            ("excluded_employees", employee_labels, st.excluded_employees),
        ):
            for i, label in enumerate(labels):
                if label not in pool:
                    out.append(
                        Violation(
                            f"{base}.{key}[{i}]",
                            "pack.crossref",
                            f"label {label!r} matches no card in the deck it filters",
                        )
                    )


def validate_pack(pack: ContentPack) -> list[Violation]:
    """Domain rules on a built pack; structural checks happen in
    load_pack. Deterministic: sorted by (path, rule, message)."""
    out: list[Violation] = []
    if pack.game == GROWTHOPOLY:
        if pack.growthopoly is None:
            out.append(Violation(f"$.{GROWTHOPOLY}", "pack.section", "declared game has no content section"))
        else:
            _validate_growthopoly(out, pack.growthopoly)
    elif pack.game == GAME_OF_GROWTH:
        if pack.game_of_growth is None:
            out.append(Violation(f"$.{GAME_OF_GROWTH}", "pack.section", "declared game has no content section"))
        else:
            _validate_gog(out, pack.game_of_growth)
    else:
        out.append(Violation("$.game", "pack.game", f"game must be one of {', '.join(GAMES)}"))
    return _sorted(out)
