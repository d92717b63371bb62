"""HTTP session service.

Sessions are append-only move logs over the pure engines. Writes go
through optimistic concurrency: a move names the version it was
decided against (expected_version) and conflicts answer 409 with the
current version, so a stale client re-reads instead of clobbering.
Every accepted move is appended to the session's JSONL log before the
response goes out; on restart the store replays each log through the
engine to rebuild live state.

GET /sessions/{id}/events?since=v long-polls: it answers immediately
when events beyond v exist, otherwise it parks on the session's
condition variable until a move lands or the wait times out.

Endpoints:
    GET  /healthz
    GET  /packs
    POST /sessions                {game, pack?, seed?, players?,
                                   startup_type?, seats?}
    GET  /sessions
    GET  /sessions/{id}/view?seat=k
    GET  /sessions/{id}/events?since=v&wait=seconds
    POST /sessions/{id}/moves     {seat, move_id?|move?, expected_version}
    GET  /sessions/{id}/pack
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from growthlab.core import IllegalMoveError
from growthlab.packs.defaults import list_packs, resolve_pack
from growthlab.packs.model import GAMES, GROWTHOPOLY
from growthlab.runner import GameRunner, append_move_record

LONG_POLL_MAX_SECONDS = 30.0


class Session:
    """A runner plus the locking and persistence around it."""

    def __init__(self, session_id: str, runner: GameRunner, log_path: Path | None) -> None:
        self.session_id = session_id
        self.runner = runner
        self.log_path = log_path
        self.lock = threading.RLock()
        self.changed = threading.Condition(self.lock)

    def snapshot_version(self) -> int:
        with self.lock:
            return self.runner.version

    def view(self, seat: int) -> dict[str, Any]:
        with self.lock:
            return self.runner.view(seat)

    def events_since(self, since: int) -> tuple[int, list[dict[str, Any]]]:
        with self.lock:
            events = [e.to_dict() for e in self.runner.events if e.sequence >= since]
            return self.runner.version, events

    def wait_for_events(self, since: int, timeout: float) -> tuple[int, list[dict[str, Any]]]:
        deadline = timeout
        with self.changed:
            self.changed.wait_for(
                lambda: any(e.sequence >= since for e in self.runner.events),
                timeout=deadline,
            )
            events = [e.to_dict() for e in self.runner.events if e.sequence >= since]
            return self.runner.version, events

    def apply(self, seat: int, expected_version: int, move_id: int | None, move_data: dict | None):
        """Returns (events, view). Raises VersionConflict/IllegalMoveError."""
        with self.changed:
            if expected_version != self.runner.version:
                raise VersionConflict(self.runner.version)
            if move_id is not None:
                legal = self.runner.legal_moves()
                if not (0 <= move_id < len(legal)):
                    raise IllegalMoveError(f"move_id {move_id} is out of range for this version")
                move = legal[move_id]
            elif move_data is not None:
                move = self.runner.parse_move(move_data)
            else:
                raise IllegalMoveError("a move_id or a move object is required")
            events = self.runner.apply(seat, move)
            if self.log_path is not None:
                with self.log_path.open("a", encoding="utf-8") as handle:
                    append_move_record(handle, seat, move)
            view = self.runner.view(seat)
            self.changed.notify_all()
            return events, view


class VersionConflict(Exception):
    def __init__(self, version: int) -> None:
        super().__init__(f"version is {version}")
        self.version = version


class SessionStore:
    def __init__(self, sessions_dir: str | None) -> None:
        self.sessions: dict[str, Session] = {}
        self.lock = threading.RLock()
        self.sessions_dir = Path(sessions_dir) if sessions_dir else None
        if self.sessions_dir is not None:
            self.sessions_dir.mkdir(parents=True, exist_ok=True)
            for log_path in sorted(self.sessions_dir.glob("*.jsonl")):
                try:
                    runner, session_id = GameRunner.load(log_path)
                except (ValueError, KeyError, json.JSONDecodeError):
                    continue  # a foreign or truncated file; leave it be
                self.sessions[session_id] = Session(session_id, runner, log_path)

    def create(self, runner: GameRunner) -> Session:
        session_id = uuid.uuid4().hex
        log_path = None
        if self.sessions_dir is not None:
            log_path = self.sessions_dir / f"{session_id}.jsonl"
        session = Session(session_id, runner, log_path)
        if log_path is not None:
            runner.save(log_path, session_id)
        with self.lock:
            self.sessions[session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="no such session")
        return session

    def listing(self) -> list[dict[str, Any]]:
        with self.lock:
            sessions = list(self.sessions.values())
        rows = []
        for session in sessions:
            with session.lock:
                rows.append(
                    {
                        "session_id": session.session_id,
                        "game": session.runner.game,
                        "version": session.runner.version,
                        "outcome": session.runner.state.outcome.to_dict(),
                        "seats": sorted(session.runner.seats),
                    }
                )
        rows.sort(key=lambda r: r["session_id"])
        return rows


def create_app(packs_dir: str | None = None, sessions_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="growthlab", version="0.1.0")
    # Browser clients are typically served from a different origin than
    # the API (a static file server, or file://). There is no auth and
    # nothing cookie-scoped, so a blanket allow is the honest policy.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(sessions_dir)
    app.state.store = store

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/packs")
    def packs() -> dict[str, Any]:
        return {"packs": list_packs(packs_dir)}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict[str, Any] = Body(...)) -> dict[str, Any]:
        game = body.get("game")
        if game not in GAMES:
            raise HTTPException(status_code=400, detail=f"game must be one of {', '.join(GAMES)}")
        pack_ref = body.get("pack")
        pack, violations = resolve_pack(pack_ref, game, packs_dir)
        if pack is None:
            raise HTTPException(
                status_code=400,
                detail="pack failed to load: " + "; ".join(v.format() for v in violations),
            )
        players = None
        if body.get("players") is not None:
            try:
                players = [(p["name"], p["specialty"]) for p in body["players"]]
            except (TypeError, KeyError):
                raise HTTPException(status_code=400, detail="players must be [{name, specialty}]")
        seats = None
        if body.get("seats") is not None:
            try:
                seats = {int(seat): [int(p) for p in owned] for seat, owned in body["seats"].items()}
            except (TypeError, ValueError):
                raise HTTPException(status_code=400, detail="seats must map seat -> [player indices]")
        try:
            runner = GameRunner.new(
                game,
                pack,
                master_seed=int(body.get("seed", 0)),
                players=players,
                startup_type=body.get("startup_type", "tech"),
                seats=seats if game == GROWTHOPOLY else None,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = store.create(runner)
        return {
            "session_id": session.session_id,
            "game": game,
            "version": session.runner.version,
            "seats": sorted(session.runner.seats),
            "acting_seat": session.runner.acting_seat(),
        }

    @app.get("/sessions")
    def list_sessions() -> dict[str, Any]:
        return {"sessions": store.listing()}

    @app.get("/sessions/{session_id}/view")
    def session_view(session_id: str, seat: int = Query(0)) -> dict[str, Any]:
        session = store.get(session_id)
        try:
            return session.view(seat)
        except KeyError:
            raise HTTPException(status_code=400, detail=f"unknown seat {seat}")

    @app.get("/sessions/{session_id}/pack")
    def session_pack(session_id: str) -> dict[str, Any]:
        session = store.get(session_id)
        return session.runner.pack.to_dict()

    @app.get("/sessions/{session_id}/events")
    def session_events(
        session_id: str,
        since: int = Query(0),
        wait: float = Query(0.0),
    ) -> dict[str, Any]:
        session = store.get(session_id)
        wait = max(0.0, min(wait, LONG_POLL_MAX_SECONDS))
        if wait > 0:
            version, events = session.wait_for_events(since, wait)
        else:
            version, events = session.events_since(since)
        with session.lock:
            outcome = session.runner.state.outcome.to_dict()
        return {"version": version, "events": events, "outcome": outcome}

    @app.post("/sessions/{session_id}/moves")
    def post_move(session_id: str, body: dict[str, Any] = Body(...)) -> Any:
        session = store.get(session_id)
        try:
            seat = int(body["seat"])
            expected_version = int(body["expected_version"])
        except (KeyError, TypeError, ValueError):
            raise HTTPException(status_code=400, detail="seat and expected_version are required")
        move_id = body.get("move_id")
        if move_id is not None:
            try:
                move_id = int(move_id)
            except (TypeError, ValueError):
                raise HTTPException(status_code=400, detail="move_id must be an integer")
        move_data = body.get("move")
        try:
            events, view = session.apply(seat, expected_version, move_id, move_data)
        except VersionConflict as conflict:
            return JSONResponse(
                status_code=409,
                content={"error": "version_conflict", "version": conflict.version},
            )
        except IllegalMoveError as exc:
            raise HTTPException(status_code=400, detail=exc.reason)
        except (KeyError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=f"malformed move: {exc}")
        return {
            "version": view["version"],
            "events": [e.to_dict() for e in events],
            "view": view,
        }

    return app


# Default application for `uvicorn growthlab.service:app`: in-memory
# sessions, built-in packs only.
app = create_app()
