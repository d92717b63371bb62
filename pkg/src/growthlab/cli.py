"""Command-line front end.

Four commands: validate a pack, simulate batches, play a game in the
terminal, and serve the HTTP session API. Interactive play reads one
move id per line from stdin, so scripted games pipe in the same ids a
human would type; quitting mid-game saves a session log that play can
resume from.
"""

from __future__ import annotations

import sys
import uuid
from pathlib import Path
from typing import Any

import click

from growthlab.core import IllegalMoveError
from growthlab.packs.defaults import resolve_pack
from growthlab.packs.model import GAMES, GROWTHOPOLY, SKILL_CATEGORIES, STARTUP_TYPE_NAMES
from growthlab.packs.validate import UNREADABLE_RULES, load_pack_file
from growthlab.runner import GameRunner, default_players
from growthlab.sim import POLICIES, SimConfig, export_csv, export_text, run_batch

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNREADABLE = 2


@click.group()
def main() -> None:
    """Engines, simulator, and service for two growth-hacking games."""


@main.command()
@click.argument("pack_path", type=click.Path())
def validate(pack_path: str) -> None:
    """Validate a pack file; one violation per line.

    Exit status: 0 valid (warnings allowed), 1 rule violations,
    2 unreadable file or invalid JSON.
    """
    pack, violations = load_pack_file(pack_path)
    for violation in violations:
        click.echo(violation.format())
    if any(v.rule in UNREADABLE_RULES for v in violations):
        sys.exit(EXIT_UNREADABLE)
    if pack is None:
        sys.exit(EXIT_INVALID)
    click.echo(f"ok {pack_path}: {pack.name} {pack.version} ({pack.game})")
    sys.exit(EXIT_OK)


def _load_pack_or_die(game: str, pack_ref: str | None, packs_dir: str | None) -> Any:
    pack, violations = resolve_pack(pack_ref, game, packs_dir)
    if pack is None:
        for violation in violations:
            click.echo(violation.format(), err=True)
        raise click.ClickException("pack failed to load")
    return pack


@main.command()
@click.option("--game", type=click.Choice(GAMES), required=True)
@click.option("--pack", "pack_ref", default=None, help="Pack path or name (default: built-in).")
@click.option("--packs-dir", default=None, help="Directory for named packs.")
@click.option("--games", "num_games", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--policy",
    default="greedy_followers",
    show_default=True,
    help=f"Comma-separated per seat; one of {', '.join(sorted(POLICIES))}.",
)
@click.option("--players", "num_players", default=2, show_default=True, help="growthopoly only.")
@click.option("--startup-type", type=click.Choice(STARTUP_TYPE_NAMES), default="tech", show_default=True)
@click.option("--max-turns", default=200, show_default=True, help="growthopoly round cap.")
@click.option("--workers", default=1, show_default=True, help="Thread count; results identical.")
@click.option("--out", "out_path", type=click.Path(), default=None, help="Write a CSV report here.")
@click.option("--report", type=click.Choice(["csv", "text"]), default=None, help="Also print a report.")
def simulate(
    game: str,
    pack_ref: str | None,
    packs_dir: str | None,
    num_games: int,
    seed: int,
    policy: str,
    num_players: int,
    startup_type: str,
    max_turns: int,
    workers: int,
    out_path: str | None,
    report: str | None,
) -> None:
    """Run a deterministic Monte Carlo batch and print its win rate."""
    pack = _load_pack_or_die(game, pack_ref, packs_dir)
    config = SimConfig(
        game=game,
        num_games=num_games,
        master_seed=seed,
        policies=tuple(policy.split(",")),
        num_players=num_players,
        startup_type=startup_type,
        max_turns=max_turns,
    )
    try:
        config.validate()
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    result = run_batch(pack, config, workers=workers)
    if out_path is not None:
        Path(out_path).write_text(export_csv(result, pack), encoding="utf-8")
    if report == "csv":
        click.echo(export_csv(result, pack), nl=False)
    elif report == "text":
        click.echo(export_text(result, pack), nl=False)
    click.echo(f"win_rate={result.win_rate!r} games={len(result.games)} seed={seed}")


def _parse_player_specs(specs: tuple[str, ...], count: int) -> list[tuple[str, str]]:
    if not specs:
        return default_players(count)
    players = []
    for spec in specs:
        name, sep, specialty = spec.partition(":")
        if not sep or specialty not in SKILL_CATEGORIES:
            raise click.ClickException(
                f"bad --player {spec!r}; use NAME:SPECIALTY with a known category"
            )
        players.append((name, specialty))
    return players


def _render_growthopoly(view: dict[str, Any]) -> str:
    lines = [
        f"-- turn {view['turn_number']} | {view['sub_phase']} |"
        f" acting: {view['players'][view['acting_player']]['name']} (seat {view['acting_seat']})"
    ]
    for player in view["players"]:
        marker = "*" if player["index"] == view["current_player"] else " "
        slush = f" slush:{player['slush_remaining']}" if player["slush_remaining"] else ""
        learned = sum(1 for left in player["skills"].values() if left == 0)
        lines.append(
            f" {marker}{player['name']:<6} pos={player['position']:>2}"
            f" money={player['money']:>5} followers={player['followers']:>5}"
            f" skills={learned} solutions={player['solution_count']}{slush}"
        )
    if view["pending_problem"] is not None:
        problem = view["pending_problem"]
        lines.append(
            f"  problem: {problem['label']} (-{problem['money_penalty']} money,"
            f" -{problem['follower_penalty']} followers)"
        )
    if view["pending_trade"] is not None:
        trade = view["pending_trade"]
        lines.append(f"  trade on the table from player {trade['proposer']}")
    return "\n".join(lines)


def _render_gog(view: dict[str, Any]) -> str:
    lines = [
        f"-- week {view['week']}/{view['total_weeks']} | {view['phase']} |"
        f" money={view['money']} followers={view['followers']}/{view['win_threshold']}"
    ]
    if view["active_event"] is not None:
        lines.append(f"  event: {view['active_event']['label']}")
    if view["hand"]:
        for card in view["hand"]:
            lines.append(
                f"  hand[{card['hand_index']}]: {card['label']}"
                f" cost={card['effective_cost']} needs {card['success_threshold']}+"
                f" gain={card['follower_gain']}"
            )
    if view["roster"]:
        names = ", ".join(entry["label"] for entry in view["roster"])
        lines.append(f"  team: {names}")
    if view["pending_employee"] is not None:
        candidate = view["pending_employee"]
        lines.append(
            f"  candidate: {candidate['label']} hire={candidate['effective_hire_cost']}"
            f" salary={candidate['salary']}"
        )
    return "\n".join(lines)


@main.command()
@click.option("--game", type=click.Choice(GAMES), default=None)
@click.option("--pack", "pack_ref", default=None, help="Pack path or name (default: built-in).")
@click.option("--packs-dir", default=None, help="Directory for named packs.")
@click.option("--seed", default=0, show_default=True)
@click.option("--players", "num_players", default=2, show_default=True, help="growthopoly only.")
@click.option("--player", "player_specs", multiple=True, help="NAME:SPECIALTY, repeatable.")
@click.option("--startup-type", type=click.Choice(STARTUP_TYPE_NAMES), default="tech", show_default=True)
@click.option("--save", "save_path", type=click.Path(), default=None, help="Session log location.")
@click.option("--resume", "resume_path", type=click.Path(exists=True), default=None)
def play(
    game: str | None,
    pack_ref: str | None,
    packs_dir: str | None,
    seed: int,
    num_players: int,
    player_specs: tuple[str, ...],
    startup_type: str,
    save_path: str | None,
    resume_path: str | None,
) -> None:
    """Play in the terminal: type a move id, or q to save and quit."""
    if resume_path is not None:
        runner, session_id = GameRunner.load(resume_path)
        game = runner.game
    else:
        if game is None:
            raise click.ClickException("--game is required unless resuming")
        pack = _load_pack_or_die(game, pack_ref, packs_dir)
        runner = GameRunner.new(
            game,
            pack,
            master_seed=seed,
            players=_parse_player_specs(player_specs, num_players) if game == GROWTHOPOLY else None,
            startup_type=startup_type,
        )
        session_id = uuid.uuid4().hex
    if save_path is None:
        save_path = f"growthlab-{game}-{seed}.session.jsonl"

    while not runner.is_over():
        seat = runner.acting_seat()
        assert seat is not None
        view = runner.view(seat)
        click.echo(_render_growthopoly(view) if game == GROWTHOPOLY else _render_gog(view))
        for move in view["legal_moves"]:
            click.echo(f"  [{move['move_id']}] {move['label']}")
        click.echo(f"seat {seat} move> ", nl=False)
        line = sys.stdin.readline()
        if not line or line.strip().lower() in ("q", "quit"):
            runner.save(save_path, session_id)
            click.echo(f"outcome=ongoing saved={save_path}")
            return
        text = line.strip()
        if not text.isdigit():
            click.echo(f"not a move id: {text!r}")
            continue
        try:
            runner.apply_move_id(seat, int(text))
        except IllegalMoveError as exc:
            click.echo(f"illegal move: {exc.reason}")

    outcome = runner.state.outcome
    if outcome.status == "won":
        if game == GROWTHOPOLY and outcome.winner is not None:
            click.echo(f"{runner.state.players[outcome.winner].name} crossed the line")
        click.echo("outcome=won")
    else:
        click.echo(f"outcome=lost reason={outcome.loss_reason}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--packs-dir", default=None, help="Directory for named packs.")
@click.option("--sessions-dir", default="growthlab-sessions", show_default=True)
def serve(host: str, port: int, packs_dir: str | None, sessions_dir: str) -> None:
    """Serve the HTTP session API."""
    import uvicorn

    from growthlab.service import create_app

    app = create_app(packs_dir=packs_dir, sessions_dir=sessions_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
