"""Seat-scoped projections of engine states.

A view is a plain JSON-ready dict of everything one seat is allowed to
see, plus the legal moves it may submit. Hidden information never
enters the dict: another player's stored solutions appear only as a
count, and the cards inside a trade offer are detailed only to the two
seats at the table for it. Legal moves are listed with move_id equal
to their index in the engine's deterministic legal_moves order, so a
move_id is meaningful for exactly one state version.
"""

from __future__ import annotations

from typing import Any

from growthlab import gog, growthopoly
from growthlab.packs.model import (
    ABILITY_HACK_DISCOUNT,
    ABILITY_PASSIVE_FOLLOWERS,
    ContentPack,
    ratio_to_json,
)


def _category_title(category: str) -> str:
    return category.replace("_", " ").title()


def growthopoly_move_label(
    state: growthopoly.GrowthopolyState, move: growthopoly.Move
) -> str:
    content = state.pack.growthopoly
    assert content is not None
    kind = move.kind
    if kind == "roll_and_move":
        return "Roll and move"
    if kind == "begin_study":
        space = content.board[move.space or 0]
        return (
            f"Study {_category_title(space.category or '')} L{space.level}"
            f" for {space.study_cost}"
        )
    if kind == "decline_study":
        return "Skip studying"
    if kind == "buy_followers":
        space = content.board[state.players[state.current_player].position]
        return f"Buy {space.followers_granted} followers for {space.price}"
    if kind == "decline_trade_fair":
        return "Leave the trade fair"
    if kind == "play_solution":
        return f"Play solution: {content.prob_solve_deck[move.card or 0].label}"
    if kind == "propose_trade":
        card = content.prob_solve_deck[move.card or 0].label
        other = state.players[move.counterparty or 0].name
        return f"Offer {card} to {other} for {move.price}"
    if kind == "respond_trade":
        return "Accept the trade" if move.accept else "Reject the trade"
    if kind == "end_turn":
        return "End turn"
    return kind


def gog_move_label(state: gog.GogState, move: gog.Move) -> str:
    content = state.pack.game_of_growth
    assert content is not None
    kind = move.kind
    if kind == "draw_event":
        return "Start the week"
    if kind == "play_hack":
        card = content.hack_deck[state.hand[move.index or 0]]
        cost = state.effective_hack_cost(state.hand[move.index or 0])
        return (
            f"Run {card.label} (cost {cost}, succeeds on {card.success_threshold}+,"
            f" +{card.follower_gain})"
        )
    if kind == "skip_remaining_hacks":
        return "Stop hacking this week"
    if kind == "reveal_employee":
        return "Interview a candidate"
    if kind == "hire":
        card = content.employee_deck[state.pending_employee or 0]
        cost = state.effective_hire_cost(state.pending_employee or 0)
        return f"Hire {card.label} for {cost} (salary {card.salary})"
    if kind == "refuse":
        return "Pass on the candidate"
    if kind == "fire":
        slot = state.roster[move.index or 0]
        return f"Fire {content.employee_deck[slot.card].label}"
    if kind == "end_turn":
        return "End the week"
    return kind


def _board_view(pack: ContentPack) -> list[dict[str, Any]]:
    content = pack.growthopoly
    assert content is not None
    return [dict(space.to_dict(), index=i) for i, space in enumerate(content.board)]


def _solution_view(pack: ContentPack, card: int) -> dict[str, Any]:
    content = pack.growthopoly
    assert content is not None
    definition = content.prob_solve_deck[card]
    return {
        "card": card,
        "label": definition.label,
        "counters_tags": list(definition.counters_tags),
    }


def growthopoly_view(
    state: growthopoly.GrowthopolyState, seat: int, seat_players: dict[int, list[int]]
) -> dict[str, Any]:
    """What one seat sees. seat_players maps seat -> player indices."""
    content = state.pack.growthopoly
    assert content is not None
    mine = set(seat_players.get(seat, []))
    acting = growthopoly.acting_player(state)
    acting_seat = next((s for s, owned in seat_players.items() if acting in owned), None)

    players = []
    for i, player in enumerate(state.players):
        entry: dict[str, Any] = {
            "index": i,
            "name": player.name,
            "specialty": player.specialty,
            "position": player.position,
            "money": player.money,
            "followers": player.followers,
            "skills": {str(space): left for space, left in sorted(player.skills.items())},
            "slush_remaining": player.slush_remaining,
            "solution_count": len(player.solutions),
            "yours": i in mine,
        }
        if i in mine:
            entry["solutions"] = [_solution_view(state.pack, c) for c in player.solutions]
        players.append(entry)

    pending_problem = None
    if state.pending_problem is not None:
        problem = content.prob_solve_deck[state.pending_problem]
        pending_problem = {
            "card": state.pending_problem,
            "label": problem.label,
            "tag": problem.tag,
            "money_penalty": problem.money_penalty,
            "follower_penalty": problem.follower_penalty,
        }

    pending_trade = None
    if state.pending_trade is not None:
        offer = state.pending_trade
        pending_trade = {
            "proposer": offer.proposer,
            "counterparty": offer.counterparty,
            "price": offer.price,
        }
        # The card's identity is table talk between the two parties only.
        if mine & {offer.proposer, offer.counterparty}:
            pending_trade["card"] = _solution_view(state.pack, offer.card)

    moves = []
    if acting in mine:
        for move_id, move in enumerate(growthopoly.legal_moves(state)):
            entry = dict(move.to_dict(), move_id=move_id)
            entry["label"] = growthopoly_move_label(state, move)
            moves.append(entry)

    return {
        "game": "growthopoly",
        "seat": seat,
        "win_threshold": growthopoly.WIN_FOLLOWERS,
        "board": _board_view(state.pack),
        "turn_number": state.turn_number,
        "current_player": state.current_player,
        "sub_phase": state.sub_phase,
        "acting_player": acting,
        "acting_seat": acting_seat,
        "players": players,
        "pending_problem": pending_problem,
        "pending_trade": pending_trade,
        "decks": {
            "bonus": {"draw": len(state.bonus_deck.draw), "discard": len(state.bonus_deck.discard)},
            "prob_solve": {
                "draw": len(state.prob_solve_deck.draw),
                "discard": len(state.prob_solve_deck.discard),
            },
        },
        "outcome": state.outcome.to_dict(),
        "legal_moves": moves,
    }


def gog_view(state: gog.GogState, seat: int = 0) -> dict[str, Any]:
    """The co-op table is fully open: one seat sees everything."""
    content = state.pack.game_of_growth
    assert content is not None

    active_event = None
    if state.active_event is not None:
        card = content.event_deck[state.active_event]
        active_event = {
            "card": state.active_event,
            "label": card.label,
            "hiring_cost_multiplier": ratio_to_json(card.hiring_cost_multiplier),
            "hack_cost_multiplier": ratio_to_json(card.hack_cost_multiplier),
            "salaries_waived": card.salaries_waived,
            "follower_gain_multiplier": ratio_to_json(card.follower_gain_multiplier),
        }

    hand = []
    for i, card in enumerate(state.hand):
        definition = content.hack_deck[card]
        hand.append(
            {
                "hand_index": i,
                "card": card,
                "label": definition.label,
                "cost": definition.cost,
                "effective_cost": state.effective_hack_cost(card),
                "success_threshold": definition.success_threshold,
                "follower_gain": definition.follower_gain,
            }
        )

    def employee_entry(card: int) -> dict[str, Any]:
        definition = content.employee_deck[card]
        ability = definition.ability
        entry = {
            "card": card,
            "label": definition.label,
            "hire_cost": definition.hire_cost,
            "salary": definition.salary,
            "ability": {"kind": ability.kind},
        }
        if ability.kind in (ABILITY_PASSIVE_FOLLOWERS, ABILITY_HACK_DISCOUNT):
            entry["ability"]["amount"] = ability.amount
        return entry

    roster = []
    for i, slot in enumerate(state.roster):
        entry = employee_entry(slot.card)
        entry["roster_index"] = i
        entry["hired_week"] = slot.hired_week
        roster.append(entry)

    pending = None
    if state.pending_employee is not None:
        pending = employee_entry(state.pending_employee)
        pending["effective_hire_cost"] = state.effective_hire_cost(state.pending_employee)

    moves = []
    for move_id, move in enumerate(gog.legal_moves(state)):
        entry = dict(move.to_dict(), move_id=move_id)
        entry["label"] = gog_move_label(state, move)
        moves.append(entry)

    return {
        "game": "game_of_growth",
        "seat": seat,
        "win_threshold": gog.WIN_FOLLOWERS,
        "total_weeks": gog.TOTAL_WEEKS,
        "startup_type": state.startup_type,
        "money": state.money,
        "followers": state.followers,
        "week": state.week,
        "phase": state.phase,
        "active_event": active_event,
        "waive_next_salaries": state.waive_next_salaries,
        "hand": hand,
        "roster": roster,
        "pending_employee": pending,
        "hack_discount_percent": state.hack_discount_percent(),
        "decks": {
            name: {"draw": len(deck.draw), "discard": len(deck.discard)}
            for name, deck in (
                ("event", state.event_deck),
                ("hack", state.hack_deck),
                ("employee", state.employee_deck),
            )
        },
        "outcome": state.outcome.to_dict(),
        "legal_moves": moves,
    }
