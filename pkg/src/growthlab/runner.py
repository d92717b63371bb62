"""Session runner: a game plus its move history and seat map.

The runner is the shared substrate of the CLI's interactive mode and
the HTTP service. It owns the authoritative state, numbers each
accepted move (version = moves applied so far), and rebuilds a session
from its log by replaying moves through the engine, which works
because engines are pure functions of (state, move).

Session logs are JSON Lines: a header record with everything needed to
reconstruct the start state (embedded pack document included), then
one record per accepted move.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, TextIO

from growthlab import gog, growthopoly, views
from growthlab.core import Event, IllegalMoveError
from growthlab.packs.model import GAME_OF_GROWTH, GAMES, GROWTHOPOLY, SKILL_CATEGORIES, ContentPack
from growthlab.packs.validate import load_pack

LOG_SCHEMA_VERSION = 1

DEFAULT_PLAYER_NAMES = ("Ada", "Bo", "Cy", "Dee", "Eli", "Fay", "Gus", "Hana")


def default_players(count: int) -> list[tuple[str, str]]:
    """Name/specialty pairs for quick starts: distinct specialties in
    category order, names from a fixed roster."""
    return [
        (DEFAULT_PLAYER_NAMES[i], SKILL_CATEGORIES[i % len(SKILL_CATEGORIES)])
        for i in range(count)
    ]


class GameRunner:
    """One live game session."""

    def __init__(
        self,
        game: str,
        pack: ContentPack,
        state: Any,
        events: list[Event],
        seats: dict[int, list[int]],
        setup: dict[str, Any],
    ) -> None:
        self.game = game
        self.pack = pack
        self.state = state
        self.events = events
        self.seats = seats
        self.setup = setup
        self.moves: list[dict[str, Any]] = []

    # -- construction ---------------------------------------------------

    @classmethod
    def new(
        cls,
        game: str,
        pack: ContentPack,
        master_seed: int,
        stream_index: int = 0,
        players: list[tuple[str, str]] | None = None,
        startup_type: str = "tech",
        seats: dict[int, list[int]] | None = None,
    ) -> GameRunner:
        if game == GROWTHOPOLY:
            roster = players if players is not None else default_players(2)
            state, events = growthopoly.new_game(pack, roster, master_seed, stream_index)
            seat_map = seats if seats is not None else {i: [i] for i in range(len(roster))}
            owned = sorted(p for owned_players in seat_map.values() for p in owned_players)
            if owned != list(range(len(roster))):
                raise ValueError("seats must cover every player exactly once")
            setup = {
                "players": [{"name": n, "specialty": s} for n, s in roster],
                "startup_type": None,
            }
        elif game == GAME_OF_GROWTH:
            state, events = gog.new_game(pack, startup_type, master_seed, stream_index)
            seat_map = {0: [0]}
            setup = {"players": None, "startup_type": startup_type}
        else:
            raise ValueError(f"unknown game {game!r}")
        setup.update(master_seed=master_seed, stream_index=stream_index)
        return cls(game, pack, state, events, seat_map, setup)

    # -- core accessors --------------------------------------------------

    @property
    def version(self) -> int:
        return len(self.moves)

    def legal_moves(self) -> list[Any]:
        if self.game == GROWTHOPOLY:
            return growthopoly.legal_moves(self.state)
        return gog.legal_moves(self.state)

    def acting_player(self) -> int:
        if self.game == GROWTHOPOLY:
            return growthopoly.acting_player(self.state)
        return gog.acting_player(self.state)

    def acting_seat(self) -> int | None:
        acting = self.acting_player()
        for seat, owned in self.seats.items():
            if acting in owned:
                return seat
        return None

    def is_over(self) -> bool:
        return self.state.outcome.is_over

    def view(self, seat: int) -> dict[str, Any]:
        if seat not in self.seats:
            raise KeyError(f"unknown seat {seat}")
        if self.game == GROWTHOPOLY:
            data = views.growthopoly_view(self.state, seat, self.seats)
        else:
            data = views.gog_view(self.state, seat)
        data["version"] = self.version
        return data

    # -- moves ------------------------------------------------------------

    def parse_move(self, data: dict[str, Any]) -> Any:
        if self.game == GROWTHOPOLY:
            return growthopoly.Move.from_dict(data)
        return gog.Move.from_dict(data)

    def apply(self, seat: int, move: Any) -> list[Event]:
        """Apply a move on behalf of a seat. The seat must own the
        acting player; anything else raises IllegalMoveError."""
        if seat not in self.seats:
            raise IllegalMoveError(f"unknown seat {seat}")
        if self.acting_seat() != seat:
            raise IllegalMoveError(f"seat {seat} is not on turn")
        if self.game == GROWTHOPOLY:
            state, events = growthopoly.apply_move(self.state, move)
        else:
            state, events = gog.apply_move(self.state, move)
        self.state = state
        self.events.extend(events)
        self.moves.append({"seat": seat, "move": move.to_dict()})
        return events

    def apply_move_id(self, seat: int, move_id: int) -> list[Event]:
        moves = self.legal_moves()
        if not (0 <= move_id < len(moves)):
            raise IllegalMoveError(f"move_id {move_id} is out of range for this version")
        return self.apply(seat, moves[move_id])

    # -- persistence -------------------------------------------------------

    def header_record(self, session_id: str) -> dict[str, Any]:
        return {
            "record": "session",
            "schema_version": LOG_SCHEMA_VERSION,
            "session_id": session_id,
            "game": self.game,
            "setup": dict(self.setup),
            "seats": {str(seat): owned for seat, owned in sorted(self.seats.items())},
            "pack": self.pack.to_dict(),
        }

    def save(self, path: str | Path, session_id: str) -> None:
        """Write the whole session log (header plus accepted moves)."""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8") as handle:
            json.dump(self.header_record(session_id), handle, sort_keys=True)
            handle.write("\n")
            for move in self.moves:
                json.dump({"record": "move", **move}, handle, sort_keys=True)
                handle.write("\n")

    @classmethod
    def from_records(
        cls, header: dict[str, Any], move_records: list[dict[str, Any]]
    ) -> GameRunner:
        if header.get("schema_version") != LOG_SCHEMA_VERSION:
            raise ValueError("unsupported session log schema")
        game = header["game"]
        if game not in GAMES:
            raise ValueError(f"unknown game {game!r}")
        pack, violations = load_pack(header["pack"])
        if pack is None:
            problems = "; ".join(v.format() for v in violations if v.severity == "error")
            raise ValueError(f"embedded pack is invalid: {problems}")
        setup = header["setup"]
        players = None
        if setup.get("players") is not None:
            players = [(p["name"], p["specialty"]) for p in setup["players"]]
        seats = {int(seat): list(owned) for seat, owned in header["seats"].items()}
        runner = cls.new(
            game,
            pack,
            master_seed=setup["master_seed"],
            stream_index=setup.get("stream_index", 0),
            players=players,
            startup_type=setup.get("startup_type") or "tech",
            seats=seats if game == GROWTHOPOLY else None,
        )
        for record in move_records:
            move = runner.parse_move(record["move"])
            runner.apply(record["seat"], move)
        return runner

    @classmethod
    def load(cls, path: str | Path) -> tuple[GameRunner, str]:
        """Rebuild a session from its log file; returns (runner, id)."""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines:
            raise ValueError("session log is empty")
        header = json.loads(lines[0])
        if header.get("record") != "session":
            raise ValueError("session log does not start with a session record")
        move_records = []
        for line in lines[1:]:
            if not line.strip():
                continue
            record = json.loads(line)
            if record.get("record") != "move":
                raise ValueError("unexpected record in session log")
            move_records.append(record)
        runner = cls.from_records(header, move_records)
        return runner, header["session_id"]


def append_move_record(handle: TextIO, seat: int, move: Any) -> None:
    """Append one accepted move to an open session log."""
    json.dump({"record": "move", "seat": seat, "move": move.to_dict()}, handle, sort_keys=True)
    handle.write("\n")
    handle.flush()
