"""Shared fixtures: built-in packs, crafted mini-packs, and playout
helpers used across the suite."""

from __future__ import annotations

import copy
import json
import random
from importlib import resources

import pytest

from growthlab import gog, growthopoly
from growthlab.packs.defaults import builtin_pack
from growthlab.packs.validate import load_pack

SPECIALTIES = [
    "email_marketing",
    "public_relations",
    "content_marketing",
    "product_development",
    "search_engine_optimization",
    "social_media_marketing",
    "display_advertising",
    "search_engine_marketing",
]


def builtin_doc(game: str) -> dict:
    text = resources.files("growthlab.packs").joinpath("data", f"{game}.json").read_text("utf-8")
    return json.loads(text)


@pytest.fixture(scope="session")
def gpack():
    return builtin_pack("growthopoly")


@pytest.fixture(scope="session")
def ngpack():
    return builtin_pack("game_of_growth")


def make_players(count: int) -> list[tuple[str, str]]:
    return [(f"P{i}", SPECIALTIES[i % len(SPECIALTIES)]) for i in range(count)]


# A small growthopoly pack whose first six spaces (reachable from start
# with one die roll) cover every space kind, so single-roll scenarios
# can be engineered by seed search.
MINI_GROWTHOPOLY_DOC = {
    "schema_version": 1,
    "game": "growthopoly",
    "metadata": {"name": "Mini Board", "version": "1.0.0"},
    "growthopoly": {
        "starting_money": 1000,
        "starting_followers": 0,
        "start_reward": {"money": 200, "followers": 150},
        "slush": {"success_threshold": 4, "follower_reward": 200},
        "board": [
            {"kind": "start"},
            {
                "kind": "skill",
                "category": "search_engine_optimization",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {"kind": "bonus"},
            {"kind": "trade_fair", "price": 250, "followers_granted": 250},
            {"kind": "prob_solve"},
            {"kind": "slush"},
            {
                "kind": "skill",
                "category": "email_marketing",
                "level": 2,
                "study_cost": 150,
                "follower_reward": 120,
            },
            {
                "kind": "skill",
                "category": "social_media_marketing",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {
                "kind": "skill",
                "category": "public_relations",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {
                "kind": "skill",
                "category": "product_development",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {
                "kind": "skill",
                "category": "display_advertising",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {
                "kind": "skill",
                "category": "content_marketing",
                "level": 1,
                "study_cost": 100,
                "follower_reward": 100,
            },
            {
                "kind": "skill",
                "category": "search_engine_marketing",
                "level": 3,
                "study_cost": 400,
                "follower_reward": 300,
            },
            {"kind": "prob_solve"},
        ],
        "bonus_deck": [
            {"label": "Tiny boost", "money_delta": 50},
            {"label": "Crowd cheer", "follower_delta": 60},
        ],
        "prob_solve_deck": [
            {
                "kind": "problem",
                "label": "Outage",
                "tag": "server_outage",
                "money_penalty": 100,
                "follower_penalty": 50,
            },
            {"kind": "solution", "label": "Runbook", "counters_tags": ["server_outage"]},
            {"kind": "problem", "label": "Bad press", "tag": "bad_press", "follower_penalty": 80},
            {
                "kind": "solution",
                "label": "PR blitz",
                "counters_tags": ["bad_press", "server_outage"],
            },
        ],
    },
}

MINI_GOG_DOC = {
    "schema_version": 1,
    "game": "game_of_growth",
    "metadata": {"name": "Mini Campaign", "version": "1.0.0"},
    "game_of_growth": {
        "hack_deck": [
            {"label": "Sure thing", "cost": 100, "success_threshold": 2, "follower_gain": 500},
            {"label": "Long shot", "cost": 50, "success_threshold": 6, "follower_gain": 1000},
            {"label": "Mid bet", "cost": 333, "success_threshold": 4, "follower_gain": 400},
            {"label": "Free play", "cost": 0, "success_threshold": 3, "follower_gain": 200},
        ],
        "event_deck": [
            {"label": "Half off", "hack_cost_multiplier": 0.5},
            {"label": "Surge", "hack_cost_multiplier": 1.5},
            {"label": "Grant", "salaries_waived": True},
            {"label": "Hype", "follower_gain_multiplier": 1.5},
            {"label": "Discount hires", "hiring_cost_multiplier": 0.5},
        ],
        "employee_deck": [
            {
                "label": "Poster",
                "hire_cost": 200,
                "salary": 100,
                "ability": {"kind": "passive_followers", "amount": 100},
            },
            {
                "label": "Haggler",
                "hire_cost": 150,
                "salary": 50,
                "ability": {"kind": "hack_discount", "amount": 25},
            },
            {
                "label": "Tinkerer",
                "hire_cost": 100,
                "salary": 80,
                "ability": {"kind": "reroll_once_per_turn"},
            },
        ],
        "startup_types": {"tech": {}, "service": {}, "entertainment": {}},
    },
}


def load_mini(doc: dict):
    pack, violations = load_pack(copy.deepcopy(doc))
    assert pack is not None, [v.format() for v in violations]
    return pack


@pytest.fixture(scope="session")
def mini_gpack():
    return load_mini(MINI_GROWTHOPOLY_DOC)


@pytest.fixture(scope="session")
def mini_ngpack():
    return load_mini(MINI_GOG_DOC)


def play_growthopoly_randomly(pack, players, seed, max_steps=10_000, policy_seed=None):
    """Drive a game to its end with uniformly random choices; returns
    (final state, all events including setup)."""
    state, events = growthopoly.new_game(pack, players, seed)
    rng = random.Random(seed if policy_seed is None else policy_seed)
    steps = 0
    while not state.outcome.is_over and steps < max_steps:
        moves = growthopoly.legal_moves(state)
        state, new_events = growthopoly.apply_move(state, rng.choice(moves))
        events.extend(new_events)
        steps += 1
    return state, events


def play_gog_randomly(pack, startup_type, seed, max_steps=10_000, policy_seed=None):
    state, events = gog.new_game(pack, startup_type, seed)
    rng = random.Random(seed if policy_seed is None else policy_seed)
    steps = 0
    while not state.outcome.is_over and steps < max_steps:
        moves = gog.legal_moves(state)
        state, new_events = gog.apply_move(state, rng.choice(moves))
        events.extend(new_events)
        steps += 1
    return state, events


def first_roll_value(state) -> int:
    """The face the next die roll will show, without consuming it."""
    return 1 + state.rng.peek_u64() % 6


def new_game_with_first_roll(pack, players, face: int, seed_range=range(500)):
    """Search seeds for a fresh game whose first die roll is `face`."""
    for seed in seed_range:
        state, events = growthopoly.new_game(pack, players, seed)
        if first_roll_value(state) == face:
            return state, events, seed
    raise AssertionError(f"no seed in range gives a first roll of {face}")
