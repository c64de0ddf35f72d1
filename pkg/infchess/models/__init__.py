"""Domain values: ordinals, pieces, boards, positions and moves."""

from infchess.models.board import Board, Coord, Coord3, Hit, LatticeFill, RectFill, Region, Span
from infchess.models.moves import Delta, FamilyMove, Move
from infchess.models.ordinal import FamilyValueFormula, Ordinal
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position

__all__ = [
    "Board",
    "Coord",
    "Coord3",
    "Hit",
    "Region",
    "RectFill",
    "LatticeFill",
    "Span",
    "Move",
    "FamilyMove",
    "Delta",
    "Ordinal",
    "FamilyValueFormula",
    "Color",
    "Kind",
    "Piece",
    "Position",
]
