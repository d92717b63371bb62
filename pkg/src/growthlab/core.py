"""Deterministic primitives shared by both game engines.

Goals:
    - Reproducibility: every random draw is a pure function of
      (master_seed, stream_index, cursor), so any state can be
      reconstructed without replaying draws in order.
    - Isolation: independent streams (one per simulated game, one per
      policy) never share draws, so adding a consumer cannot perturb
      another's sequence.
    - Auditability: states serialize to canonical JSON and hash to a
      stable digest, so two implementations can be compared byte for
      byte.

Non-goals:
    - Cryptographic strength. SplitMix64 is a statistical PRNG; it is
      used here for game dice and deck shuffles only.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

# SplitMix64 increment (the 64-bit golden ratio constant).
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _stream_base(master_seed: int, stream_index: int) -> int:
    # Mixing the index before combining keeps adjacent streams far
    # apart even for small seeds and small indices.
    return mix64((master_seed + mix64(((stream_index + 1) * GOLDEN_GAMMA) & _MASK64)) & _MASK64)


@dataclass(slots=True)
class RngStream:
    """A random-access SplitMix64 stream.

    Draw number k of stream (master_seed, stream_index) is
    ``mix64(base + (k + 1) * GOLDEN_GAMMA)`` where ``base`` is a mix of
    seed and index. The cursor records how many draws have been
    consumed; because each draw is addressed, a stream restored from
    (seed, index, cursor) continues exactly where it left off.
    """

    master_seed: int
    stream_index: int
    cursor: int = 0

    def value_at(self, k: int) -> int:
        """The k-th draw of this stream, independent of the cursor."""
        base = _stream_base(self.master_seed, self.stream_index)
        return mix64((base + ((k + 1) * GOLDEN_GAMMA)) & _MASK64)

    def peek_u64(self, offset: int = 0) -> int:
        return self.value_at(self.cursor + offset)

    def next_u64(self) -> int:
        value = self.value_at(self.cursor)
        self.cursor += 1
        return value

    def next_below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound). Modulo bias is below
        bound/2**64, far under any tolerance used in this package."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def clone(self) -> RngStream:
        return RngStream(self.master_seed, self.stream_index, self.cursor)

    def to_dict(self) -> dict[str, int]:
        return {
            "master_seed": self.master_seed,
            "stream_index": self.stream_index,
            "cursor": self.cursor,
        }

    @classmethod
    def from_dict(cls, data: dict[str, int]) -> RngStream:
        return cls(data["master_seed"], data["stream_index"], data["cursor"])


def derive_stream(master_seed: int, stream_index: int) -> RngStream:
    """Fresh stream for the given index, cursor at zero."""
    return RngStream(master_seed, stream_index, 0)


def roll_die(stream: RngStream) -> int:
    """One six-sided die roll, consuming exactly one draw."""
    return 1 + stream.next_below(6)


def shuffle_indices(stream: RngStream, count: int) -> list[int]:
    """Fisher-Yates permutation of range(count), consuming count - 1
    draws (none for count < 2)."""
    order = list(range(count))
    for i in range(count - 1, 0, -1):
        j = stream.next_below(i + 1)
        order[i], order[j] = order[j], order[i]
    return order


def canonical_json(value: Any) -> str:
    """Canonical form: keys sorted, no whitespace, UTF-8 passthrough.

    Only JSON-native types are accepted; callers convert their state to
    plain dicts/lists/ints/strings first so the encoding is total.
    """
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def state_digest(payload: dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON encoding.

    Engines digest their state snapshot minus the event log: the log is
    an audit trail of how a state arose, not part of its identity, and
    excluding it lets an independent interpreter of the same rules
    produce matching digests without mirroring event granularity.
    """
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


@dataclass(frozen=True, slots=True)
class Event:
    """One entry in an engine's append-only log.

    ``sequence`` is contiguous from 0 within a game. ``payload`` holds
    only JSON-native values so logs round-trip through serialization.
    """

    sequence: int
    kind: str
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"sequence": self.sequence, "kind": self.kind, "payload": dict(self.payload)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Event:
        return cls(data["sequence"], data["kind"], dict(data["payload"]))


ONGOING = "ongoing"
WON = "won"
LOST = "lost"


@dataclass(frozen=True, slots=True)
class GameOutcome:
    """Terminal status of a game; ``ongoing`` while play continues."""

    status: str = ONGOING
    winner: int | None = None
    loss_reason: str | None = None
    turns_elapsed: int = 0

    @property
    def is_over(self) -> bool:
        return self.status != ONGOING

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "winner": self.winner,
            "loss_reason": self.loss_reason,
            "turns_elapsed": self.turns_elapsed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GameOutcome:
        return cls(
            status=data["status"],
            winner=data.get("winner"),
            loss_reason=data.get("loss_reason"),
            turns_elapsed=data.get("turns_elapsed", 0),
        )


class IllegalMoveError(Exception):
    """Raised when a move outside legal_moves(state) is applied."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason
