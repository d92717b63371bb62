"""Plain-dict reinterpretation of both rule sets, used as a test oracle.

This module shares only the deterministic primitives (the RNG, the
shuffle, the digest) and the raw pack documents with the package under
test. All game behaviour is re-derived here on plain dicts shaped like
the engines' canonical snapshots, so a rules slip in either
implementation shows up as a digest mismatch instead of being copied
across.

States are mutated in place; callers drive one game per state. Move
dicts match the engines' Move.to_dict() encoding, and the legal-move
enumeration order matches too, so a harness can pick the same index on
both sides.
"""

from __future__ import annotations

from bisect import insort
from fractions import Fraction
from typing import Any

from growthlab.core import RngStream, shuffle_indices

REF_WIN_FOLLOWERS = 5000
REF_SLUSH_TURNS = 3
REF_TRADES_PER_TURN = 3
REF_SALE_PRICE = 100

REF_GOG_STARTING_MONEY = 5000
REF_GOG_WEEKS = 10
REF_GOG_HAND = 3


def _ratio(raw: Any, default: int = 1) -> Fraction:
    if raw is None:
        return Fraction(default)
    if isinstance(raw, float):
        return Fraction(str(raw))
    return Fraction(raw)


def _floor_scale(amount: int, multiplier: Fraction) -> int:
    return (amount * multiplier.numerator) // multiplier.denominator


def _roll(state: dict) -> int:
    rng = state["rng"]
    stream = RngStream(rng["master_seed"], rng["stream_index"], rng["cursor"])
    value = 1 + stream.next_below(6)
    rng["cursor"] = stream.cursor
    return value


def _reshuffle_discard(state: dict, deck: dict) -> None:
    rng = state["rng"]
    stream = RngStream(rng["master_seed"], rng["stream_index"], rng["cursor"])
    order = shuffle_indices(stream, len(deck["discard"]))
    deck["draw"] = [deck["discard"][j] for j in order]
    deck["discard"] = []
    rng["cursor"] = stream.cursor


def _draw(state: dict, deck: dict) -> int | None:
    if not deck["draw"]:
        if not deck["discard"]:
            return None
        _reshuffle_discard(state, deck)
    return deck["draw"].pop(0)


def _outcome_won(state: dict, winner: int, turns: int) -> None:
    state["outcome"] = {
        "status": "won",
        "winner": winner,
        "loss_reason": None,
        "turns_elapsed": turns,
    }


def _outcome_lost(state: dict, reason: str, turns: int) -> None:
    state["outcome"] = {
        "status": "lost",
        "winner": None,
        "loss_reason": reason,
        "turns_elapsed": turns,
    }


# -- growthopoly -------------------------------------------------------


def growthopoly_new(
    doc: dict,
    pack_digest: str,
    players: list[tuple[str, str]],
    master_seed: int,
    stream_index: int = 0,
) -> dict:
    section = doc["growthopoly"]
    stream = RngStream(master_seed, stream_index, 0)
    bonus_draw = shuffle_indices(stream, len(section["bonus_deck"]))
    prob_draw = shuffle_indices(stream, len(section["prob_solve_deck"]))
    start = next(i for i, s in enumerate(section["board"]) if s["kind"] == "start")
    return {
        "game": "growthopoly",
        "pack_digest": pack_digest,
        "players": [
            {
                "name": name,
                "specialty": specialty,
                "position": start,
                "money": section["starting_money"],
                "followers": section["starting_followers"],
                "skills": {},
                "solutions": [],
                "slush_remaining": None,
                "trades_this_turn": 0,
            }
            for name, specialty in players
        ],
        "current_player": 0,
        "turn_number": 1,
        "sub_phase": "awaiting_roll",
        "pending_problem": None,
        "pending_trade": None,
        "decks": {
            "bonus": {"draw": bonus_draw, "discard": []},
            "prob_solve": {"draw": prob_draw, "discard": []},
        },
        "rng": {"master_seed": master_seed, "stream_index": stream_index, "cursor": stream.cursor},
        "outcome": {"status": "ongoing", "winner": None, "loss_reason": None, "turns_elapsed": 0},
    }


def _g_counters(card: dict, problem: dict) -> bool:
    return card["kind"] == "solution" and problem.get("tag") in card.get("counters_tags", ())


def growthopoly_moves(doc: dict, state: dict) -> list[dict]:
    if state["outcome"]["status"] != "ongoing":
        return []
    section = doc["growthopoly"]
    phase = state["sub_phase"]

    if phase == "trade_pending":
        offer = state["pending_trade"]
        responder = state["players"][offer["counterparty"]]
        moves = []
        if responder["money"] >= offer["price"]:
            moves.append({"kind": "respond_trade", "accept": True})
        moves.append({"kind": "respond_trade", "accept": False})
        return moves

    current = state["current_player"]
    player = state["players"][current]

    if phase == "awaiting_roll":
        # A proposal may only name the proposer's own card; the other
        # players' stored solutions are hidden information.
        moves: list[dict] = [{"kind": "roll_and_move"}]
        if player["trades_this_turn"] < REF_TRADES_PER_TURN and player["solutions"]:
            for counterparty, other in enumerate(state["players"]):
                if counterparty == current:
                    continue
                if other["money"] < REF_SALE_PRICE:
                    continue
                for card in sorted(set(player["solutions"])):
                    moves.append(
                        {
                            "kind": "propose_trade",
                            "card": card,
                            "counterparty": counterparty,
                            "price": REF_SALE_PRICE,
                        }
                    )
        return moves
    if phase == "skill_decision":
        return [{"kind": "begin_study", "space": player["position"]}, {"kind": "decline_study"}]
    if phase == "trade_fair_decision":
        return [{"kind": "buy_followers"}, {"kind": "decline_trade_fair"}]
    if phase == "problem_decision":
        problem = section["prob_solve_deck"][state["pending_problem"]]
        moves = [
            {"kind": "play_solution", "card": card}
            for card in sorted(set(player["solutions"]))
            if _g_counters(section["prob_solve_deck"][card], problem)
        ]
        moves.append({"kind": "end_turn"})
        return moves
    if phase == "awaiting_end":
        return [{"kind": "end_turn"}]
    raise AssertionError(f"unexpected sub_phase {phase!r}")


def _g_credit_followers(state: dict, player_idx: int, amount: int) -> bool:
    """True when the credit just won the game."""
    if amount <= 0:
        return False
    player = state["players"][player_idx]
    player["followers"] += amount
    if player["followers"] >= REF_WIN_FOLLOWERS:
        _outcome_won(state, player_idx, state["turn_number"])
        state["sub_phase"] = "ended"
        return True
    return False


def _g_owner(state: dict, space: int) -> tuple[int, bool] | None:
    key = str(space)
    for i, player in enumerate(state["players"]):
        if key in player["skills"]:
            return i, player["skills"][key] == 0
    return None


def _g_problem_penalties(state: dict, section: dict, card: int) -> None:
    definition = section["prob_solve_deck"][card]
    player = state["players"][state["current_player"]]
    player["money"] -= min(definition.get("money_penalty", 0), player["money"])
    player["followers"] -= min(definition.get("follower_penalty", 0), player["followers"])


def _g_resolve_landing(state: dict, section: dict, space_idx: int) -> None:
    space = section["board"][space_idx]
    current = state["current_player"]
    player = state["players"][current]
    kind = space["kind"]

    if kind == "skill":
        owner = _g_owner(state, space_idx)
        if owner is not None:
            owner_idx, learned = owner
            if learned:
                reward = space.get("follower_reward") or 0
                if space.get("category") == state["players"][owner_idx]["specialty"]:
                    reward *= 2
                if _g_credit_followers(state, owner_idx, reward):
                    return
            state["sub_phase"] = "awaiting_end"
            return
        cost = space.get("study_cost")
        if cost is not None and player["money"] >= cost:
            state["sub_phase"] = "skill_decision"
        else:
            state["sub_phase"] = "awaiting_end"
        return

    if kind == "bonus":
        card = _draw(state, state["decks"]["bonus"])
        if card is not None:
            definition = section["bonus_deck"][card]
            player["money"] += definition.get("money_delta", 0)
            if _g_credit_followers(state, current, definition.get("follower_delta", 0)):
                return  # the winning card is never discarded
            state["decks"]["bonus"]["discard"].append(card)
        state["sub_phase"] = "awaiting_end"
        return

    if kind == "trade_fair":
        price = space.get("price")
        if price is not None and player["money"] >= price:
            state["sub_phase"] = "trade_fair_decision"
        else:
            state["sub_phase"] = "awaiting_end"
        return

    if kind == "prob_solve":
        card = _draw(state, state["decks"]["prob_solve"])
        if card is None:
            state["sub_phase"] = "awaiting_end"
            return
        definition = section["prob_solve_deck"][card]
        if definition["kind"] == "solution":
            insort(player["solutions"], card)
            state["sub_phase"] = "awaiting_end"
            return
        if any(
            _g_counters(section["prob_solve_deck"][held], definition)
            for held in player["solutions"]
        ):
            state["pending_problem"] = card
            state["sub_phase"] = "problem_decision"
        else:
            _g_problem_penalties(state, section, card)
            state["decks"]["prob_solve"]["discard"].append(card)
            state["sub_phase"] = "awaiting_end"
        return

    if kind == "slush":
        player["slush_remaining"] = REF_SLUSH_TURNS
        state["sub_phase"] = "awaiting_end"
        return

    state["sub_phase"] = "awaiting_end"  # start space: lap reward already paid


def _g_studying_space(player: dict) -> str | None:
    for key, remaining in player["skills"].items():
        if remaining > 0:
            return key
    return None


def _g_turn_automatics(state: dict, section: dict) -> None:
    current = state["current_player"]
    player = state["players"][current]

    studying = _g_studying_space(player)
    if studying is not None:
        player["skills"][studying] -= 1
        state["sub_phase"] = "awaiting_end"
        return

    if player["slush_remaining"] is not None:
        value = _roll(state)
        if value >= section["slush"]["success_threshold"]:
            player["slush_remaining"] -= 1
            if _g_credit_followers(state, current, section["slush"]["follower_reward"]):
                return
            if player["slush_remaining"] == 0:
                player["slush_remaining"] = None
        else:
            player["slush_remaining"] = None
        state["sub_phase"] = "awaiting_end"
        return

    state["sub_phase"] = "awaiting_roll"


def _g_finish_turn(state: dict, section: dict) -> None:
    next_player = (state["current_player"] + 1) % len(state["players"])
    if next_player == 0:
        state["turn_number"] += 1
    state["current_player"] = next_player
    state["players"][next_player]["trades_this_turn"] = 0
    _g_turn_automatics(state, section)


def growthopoly_apply(doc: dict, state: dict, move: dict) -> None:
    assert move in growthopoly_moves(doc, state), move
    section = doc["growthopoly"]
    current = state["current_player"]
    player = state["players"][current]
    kind = move["kind"]

    if kind == "roll_and_move":
        value = _roll(state)
        size = len(section["board"])
        start = next(i for i, s in enumerate(section["board"]) if s["kind"] == "start")
        origin = player["position"]
        destination = (origin + value) % size
        passed_start = any((origin + step) % size == start for step in range(1, value + 1))
        player["position"] = destination
        if passed_start:
            player["money"] += section["start_reward"]["money"]
            if _g_credit_followers(state, current, section["start_reward"]["followers"]):
                return
        _g_resolve_landing(state, section, destination)
    elif kind == "propose_trade":
        state["pending_trade"] = {
            "proposer": current,
            "counterparty": move["counterparty"],
            "card": move["card"],
            "price": move.get("price", 0),
        }
        player["trades_this_turn"] += 1
        state["sub_phase"] = "trade_pending"
    elif kind == "respond_trade":
        offer = state["pending_trade"]
        if move["accept"]:
            proposer = state["players"][offer["proposer"]]
            responder = state["players"][offer["counterparty"]]
            proposer["solutions"].remove(offer["card"])
            insort(responder["solutions"], offer["card"])
            if offer["price"] > 0:
                responder["money"] -= offer["price"]
                proposer["money"] += offer["price"]
        state["pending_trade"] = None
        state["sub_phase"] = "awaiting_roll"
    elif kind == "begin_study":
        space = section["board"][player["position"]]
        player["money"] -= space["study_cost"]
        duration = space["level"] - (1 if space["category"] == player["specialty"] else 0)
        player["skills"][str(player["position"])] = max(duration, 0)
        state["sub_phase"] = "awaiting_end"
    elif kind in ("decline_study", "decline_trade_fair"):
        state["sub_phase"] = "awaiting_end"
    elif kind == "buy_followers":
        space = section["board"][player["position"]]
        player["money"] -= space["price"]
        if _g_credit_followers(state, current, space["followers_granted"]):
            return
        state["sub_phase"] = "awaiting_end"
    elif kind == "play_solution":
        player["solutions"].remove(move["card"])
        state["decks"]["prob_solve"]["discard"].append(move["card"])
        state["decks"]["prob_solve"]["discard"].append(state["pending_problem"])
        state["pending_problem"] = None
        state["sub_phase"] = "awaiting_end"
    elif kind == "end_turn":
        if state["sub_phase"] == "problem_decision":
            _g_problem_penalties(state, section, state["pending_problem"])
            state["decks"]["prob_solve"]["discard"].append(state["pending_problem"])
            state["pending_problem"] = None
        _g_finish_turn(state, section)
    else:
        raise AssertionError(f"unknown move kind {kind!r}")


# -- game of growth ----------------------------------------------------


def gog_new(
    doc: dict,
    pack_digest: str,
    startup_type: str,
    master_seed: int,
    stream_index: int = 0,
) -> dict:
    section = doc["game_of_growth"]
    flavour = section["startup_types"][startup_type]
    stream = RngStream(master_seed, stream_index, 0)

    def filtered(cards: list[dict], banned: list[str]) -> list[int]:
        allowed = [i for i, card in enumerate(cards) if card["label"] not in set(banned)]
        return [allowed[j] for j in shuffle_indices(stream, len(allowed))]

    event_draw = filtered(section["event_deck"], flavour.get("excluded_events", []))
    hack_draw = filtered(section["hack_deck"], flavour.get("excluded_hacks", []))
    employee_draw = filtered(section["employee_deck"], flavour.get("excluded_employees", []))
    return {
        "game": "game_of_growth",
        "pack_digest": pack_digest,
        "startup_type": startup_type,
        "money": REF_GOG_STARTING_MONEY,
        "followers": 0,
        "week": 1,
        "phase": "upkeep",
        "active_event": None,
        "waive_next_salaries": False,
        "hand": [],
        "roster": [],
        "pending_employee": None,
        "employee_revealed": False,
        "reroll_used": False,
        "decks": {
            "event": {"draw": event_draw, "discard": []},
            "hack": {"draw": hack_draw, "discard": []},
            "employee": {"draw": employee_draw, "discard": []},
        },
        "rng": {"master_seed": master_seed, "stream_index": stream_index, "cursor": stream.cursor},
        "outcome": {"status": "ongoing", "winner": None, "loss_reason": None, "turns_elapsed": 0},
    }


def _gog_discount(section: dict, state: dict) -> int:
    total = 0
    for slot in state["roster"]:
        ability = section["employee_deck"][slot["card"]]["ability"]
        if ability["kind"] == "hack_discount":
            total += ability["amount"]
    return min(total, 100)


def _gog_event_card(section: dict, state: dict) -> dict:
    if state["active_event"] is None:
        return {}
    return section["event_deck"][state["active_event"]]


def _gog_hack_cost(section: dict, state: dict, card: int) -> int:
    multiplier = _ratio(_gog_event_card(section, state).get("hack_cost_multiplier"))
    cost = _floor_scale(section["hack_deck"][card]["cost"], multiplier)
    return (cost * (100 - _gog_discount(section, state))) // 100


def _gog_hire_cost(section: dict, state: dict, card: int) -> int:
    multiplier = _ratio(_gog_event_card(section, state).get("hiring_cost_multiplier"))
    return _floor_scale(section["employee_deck"][card]["hire_cost"], multiplier)


def gog_moves(doc: dict, state: dict) -> list[dict]:
    if state["outcome"]["status"] != "ongoing":
        return []
    section = doc["game_of_growth"]
    phase = state["phase"]
    if phase == "upkeep":
        return [{"kind": "draw_event"}]
    if phase == "hacks":
        moves = [
            {"kind": "play_hack", "index": i}
            for i, card in enumerate(state["hand"])
            if _gog_hack_cost(section, state, card) <= state["money"]
        ]
        moves.append({"kind": "skip_remaining_hacks"})
        return moves
    if phase == "employee":
        if state["pending_employee"] is not None:
            moves = []
            if _gog_hire_cost(section, state, state["pending_employee"]) <= state["money"]:
                moves.append({"kind": "hire"})
            moves.append({"kind": "refuse"})
            return moves
        deck = state["decks"]["employee"]
        if not state["employee_revealed"] and (deck["draw"] or deck["discard"]):
            return [{"kind": "reveal_employee"}]
        moves = [{"kind": "fire", "index": i} for i in range(len(state["roster"]))]
        moves.append({"kind": "end_turn"})
        return moves
    raise AssertionError(f"unexpected phase {phase!r}")


def _gog_credit(state: dict, amount: int) -> bool:
    if amount <= 0:
        return False
    state["followers"] += amount
    if state["followers"] >= REF_WIN_FOLLOWERS:
        _outcome_won(state, 0, state["week"])
        state["phase"] = "ended"
        return True
    return False


def _gog_start_week(state: dict, section: dict) -> None:
    if state["waive_next_salaries"]:
        state["waive_next_salaries"] = False
    else:
        total = sum(section["employee_deck"][slot["card"]]["salary"] for slot in state["roster"])
        if total > state["money"]:
            _outcome_lost(state, "bankrupt", state["week"])
            state["phase"] = "ended"
            return
        state["money"] -= total
    state["phase"] = "event"
    card = _draw(state, state["decks"]["event"])
    if card is not None:
        state["active_event"] = card
        if section["event_deck"][card].get("salaries_waived"):
            state["waive_next_salaries"] = True
    state["phase"] = "hacks"
    for _ in range(REF_GOG_HAND):
        drawn = _draw(state, state["decks"]["hack"])
        if drawn is None:
            break
        state["hand"].append(drawn)


def _gog_play_hack(state: dict, section: dict, index: int) -> None:
    card = state["hand"][index]
    definition = section["hack_deck"][card]
    state["money"] -= _gog_hack_cost(section, state, card)

    value = _roll(state)
    success = value >= definition["success_threshold"]
    if not success and not state["reroll_used"]:
        has_reroller = any(
            section["employee_deck"][slot["card"]]["ability"]["kind"] == "reroll_once_per_turn"
            for slot in state["roster"]
        )
        if has_reroller:
            state["reroll_used"] = True
            value = _roll(state)
            success = value >= definition["success_threshold"]

    gain = 0
    if success:
        multiplier = _ratio(_gog_event_card(section, state).get("follower_gain_multiplier"))
        gain = _floor_scale(definition["follower_gain"], multiplier)
    state["hand"].remove(card)
    state["decks"]["hack"]["discard"].append(card)
    if _gog_credit(state, gain):
        return
    if not state["hand"]:
        state["phase"] = "employee"


def _gog_end_week(state: dict, section: dict) -> None:
    for slot in list(state["roster"]):
        ability = section["employee_deck"][slot["card"]]["ability"]
        if ability["kind"] == "passive_followers":
            if _gog_credit(state, ability["amount"]):
                return
    if state["active_event"] is not None:
        state["decks"]["event"]["discard"].append(state["active_event"])
        state["active_event"] = None
    state["reroll_used"] = False
    state["employee_revealed"] = False
    if state["week"] >= REF_GOG_WEEKS:
        _outcome_lost(state, "turns_exhausted", state["week"])
        state["phase"] = "ended"
        return
    state["week"] += 1
    state["phase"] = "upkeep"


def gog_apply(doc: dict, state: dict, move: dict) -> None:
    assert move in gog_moves(doc, state), move
    section = doc["game_of_growth"]
    kind = move["kind"]

    if kind == "draw_event":
        _gog_start_week(state, section)
    elif kind == "play_hack":
        _gog_play_hack(state, section, move["index"])
    elif kind == "skip_remaining_hacks":
        for card in list(state["hand"]):
            state["hand"].remove(card)
            state["decks"]["hack"]["discard"].append(card)
        state["phase"] = "employee"
    elif kind == "reveal_employee":
        card = _draw(state, state["decks"]["employee"])
        state["pending_employee"] = card
        state["employee_revealed"] = True
    elif kind == "hire":
        card = state["pending_employee"]
        state["money"] -= _gog_hire_cost(section, state, card)
        state["pending_employee"] = None
        state["roster"].append({"card": card, "hired_week": state["week"]})
    elif kind == "refuse":
        state["decks"]["employee"]["discard"].append(state["pending_employee"])
        state["pending_employee"] = None
    elif kind == "fire":
        slot = state["roster"].pop(move["index"])
        state["decks"]["employee"]["discard"].append(slot["card"])
    elif kind == "end_turn":
        _gog_end_week(state, section)
    else:
        raise AssertionError(f"unknown move kind {kind!r}")
