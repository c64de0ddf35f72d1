"""Single moves, infinite move families and board deltas."""

from __future__ import annotations

from dataclasses import dataclass

from infchess.core.errors import IllegalMoveError
from infchess.models.board import Square, Vector, shift
from infchess.models.pieces import Piece


@dataclass(frozen=True, slots=True)
class Move:
    from_sq: Square
    to_sq: Square
    mover: Piece
    captured: Piece | None = None

    def __post_init__(self) -> None:
        if self.from_sq == self.to_sq:
            raise IllegalMoveError("a move must change square", move=self, reason="null")
        if self.captured is not None and self.captured.color is self.mover.color:
            raise IllegalMoveError("cannot capture an own piece", move=self, reason="own-capture")

    def __str__(self) -> str:
        tail = f"x{self.captured}" if self.captured else ""
        return f"{self.mover}{self.from_sq}->{self.to_sq}{tail}"


@dataclass(frozen=True, slots=True)
class FamilyMove:
    """A slider on an empty unbounded ray: one move for every distance >= ``min_distance``."""

    from_sq: Square
    direction: Vector
    min_distance: int
    mover: Piece

    def at(self, distance: int) -> Move:
        if distance < self.min_distance:
            raise IllegalMoveError(
                f"distance {distance} is below the family minimum {self.min_distance}",
                move=self,
                reason="family-distance",
            )
        return Move(self.from_sq, shift(self.from_sq, self.direction, distance), self.mover)

    def contains(self, move: Move) -> bool:
        if move.from_sq != self.from_sq or move.mover != self.mover or move.captured is not None:
            return False
        distance = family_distance(self.from_sq, self.direction, move.to_sq)
        return distance is not None and distance >= self.min_distance

    def __str__(self) -> str:
        return f"{self.mover}{self.from_sq}->{self.direction}*{self.min_distance}.."


def family_distance(origin: Square, direction: Vector, target: Square) -> int | None:
    distance: int | None = None
    for o, d, t in zip(origin, direction, target):
        if d == 0:
            if t != o:
                return None
            continue
        candidate = (t - o) * d
        if distance is not None and candidate != distance:
            return None
        distance = candidate
    return distance if distance and distance > 0 else None


@dataclass(frozen=True, slots=True)
class Delta:
    """Override changes of one applied move: (square, content before, content after)."""

    changes: tuple[tuple[Square, Piece | None, Piece | None], ...]
    move: Move


__all__ = ["Move", "FamilyMove", "Delta", "family_distance"]
