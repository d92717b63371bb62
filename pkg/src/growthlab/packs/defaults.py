"""Built-in packs and pack resolution.

One pack per game ships inside the package. resolve_pack turns a CLI or
HTTP pack argument into a loaded pack: no argument (or the game's own
name) means the built-in pack, an existing file path is loaded
directly, and any other name is looked up as NAME.json in the packs
directory. The GROWTHLAB_PACKS_DIR environment variable overrides
whatever packs directory the caller passed, so a deployment can swap
content without touching command lines.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from growthlab.packs.model import GAME_OF_GROWTH, GAMES, GROWTHOPOLY, ContentPack
from growthlab.packs.validate import Violation, load_pack, load_pack_file

PACKS_DIR_ENV = "GROWTHLAB_PACKS_DIR"

_BUILTIN_FILES = {
    GROWTHOPOLY: "growthopoly.json",
    GAME_OF_GROWTH: "game_of_growth.json",
}

_cache: dict[str, ContentPack] = {}


def builtin_pack(game: str) -> ContentPack:
    """The pack shipped with the package for the given game."""
    if game not in _BUILTIN_FILES:
        raise KeyError(f"no built-in pack for {game!r}")
    if game not in _cache:
        text = (
            resources.files("growthlab.packs").joinpath("data", _BUILTIN_FILES[game]).read_text("utf-8")
        )
        pack, violations = load_pack(text)
        if pack is None:
            raise RuntimeError(
                "built-in pack failed validation: "
                + "; ".join(v.format() for v in violations if v.severity == "error")
            )
        _cache[game] = pack
    return _cache[game]


def packs_directory(cli_value: str | None = None) -> Path | None:
    """Effective packs directory: the environment variable wins over
    the command-line value."""
    env = os.environ.get(PACKS_DIR_ENV)
    if env:
        return Path(env)
    if cli_value:
        return Path(cli_value)
    return None


def list_packs(packs_dir: str | None = None) -> list[str]:
    """Names resolvable by resolve_pack: built-ins plus *.json files in
    the packs directory (a game's own name always means its built-in)."""
    names = set(GAMES)
    directory = packs_directory(packs_dir)
    if directory is not None and directory.is_dir():
        for path in directory.glob("*.json"):
            names.add(path.stem)
    return sorted(names)


def resolve_pack(
    ref: str | dict | None,
    game: str,
    packs_dir: str | None = None,
) -> tuple[ContentPack | None, list[Violation]]:
    """Load the pack referred to by ref for the given game.

    ref may be None (built-in pack), a document dict, a filesystem
    path, or a bare name looked up in the packs directory and then
    among built-ins. The loaded pack must declare the expected game.
    """
    if isinstance(ref, dict):
        pack, violations = load_pack(ref)
    elif ref is None or ref == game:
        return builtin_pack(game), []
    else:
        path = Path(ref)
        if path.suffix == ".json" or path.exists():
            pack, violations = load_pack_file(path)
        else:
            directory = packs_directory(packs_dir)
            candidate = directory / f"{ref}.json" if directory is not None else None
            if candidate is not None and candidate.exists():
                pack, violations = load_pack_file(candidate)
            else:
                return None, [
                    Violation("$", "io.unreadable", f"no pack named {ref!r} in the packs directory or built-ins")
                ]
    if pack is not None and pack.game != game:
        return None, [
            Violation("$.game", "pack.game", f"pack is for {pack.game}, expected {game}")
        ]
    return pack, violations
