"""Piece colors and kinds."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Color(str, Enum):
    WHITE = "white"
    BLACK = "black"

    @property
    def opponent(self) -> Color:
        return Color.BLACK if self is Color.WHITE else Color.WHITE

    @property
    def letter(self) -> str:
        return "W" if self is Color.WHITE else "B"

    @classmethod
    def from_letter(cls, letter: str) -> Color:
        return _COLOR_LETTERS[letter.upper()]


class Kind(str, Enum):
    KING = "K"
    QUEEN = "Q"
    ROOK = "R"
    BISHOP = "B"
    KNIGHT = "N"
    PAWN = "P"

    @property
    def is_slider(self) -> bool:
        return self in (Kind.QUEEN, Kind.ROOK, Kind.BISHOP)


_COLOR_LETTERS = {"W": Color.WHITE, "B": Color.BLACK}


@dataclass(frozen=True, slots=True)
class Piece:
    color: Color
    kind: Kind

    def __str__(self) -> str:
        return f"{self.color.letter}{self.kind.value}"

    @classmethod
    def parse(cls, color: str, kind: str) -> Piece:
        return cls(Color.from_letter(color), Kind(kind.upper()))


def piece(code: str) -> Piece:
    """``piece("WK")`` shorthand."""
    return Piece.parse(code[0], code[1])


__all__ = ["Color", "Kind", "Piece", "piece"]
