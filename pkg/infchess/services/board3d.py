"""Three-dimensional infinite chess on Z^3.

Rooks use the 6 axis rays, bishops the 12 planar diagonals and queens and kings
all 18 directions. Pawns step along the pawn axis and capture onto the four
cells that combine the forward step with one step along another axis. Layers
``a``, ``b``, ``c`` ... name z = 0, 1, 2 ... in move text.
"""

from __future__ import annotations

from infchess.core.errors import BoardError, KnightIn3DError
from infchess.models.board import Board, Coord3, Square
from infchess.models.moves import Delta, Move
from infchess.models.pieces import Color, Kind
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.movegen import GameStatus, MoveList


def _require_space(position: Position) -> None:
    if position.dims != 3:
        raise BoardError("expected a three-dimensional position")
    if any(kind is Kind.KNIGHT for _, kind in position.board.census()):
        raise KnightIn3DError("knights have no movement rule in three dimensions")


def legal_moves3(position: Position) -> MoveList:
    _require_space(position)
    return movegen.legal_moves(position)


def in_check3(position: Position, color: Color) -> bool:
    _require_space(position)
    return movegen.in_check(position, color)


def apply3(position: Position, move: Move) -> Position:
    _require_space(position)
    return movegen.apply(position, move)


def apply3_with_delta(position: Position, move: Move) -> tuple[Position, Delta]:
    _require_space(position)
    return movegen.apply_with_delta(position, move)


def undo3(position: Position, delta: Delta) -> Position:
    return movegen.undo(position, delta)


def status3(position: Position) -> GameStatus:
    _require_space(position)
    return movegen.status(position)


def empty_space() -> Board:
    return Board(3)


def layer_letter(z: int) -> str:
    """Layer name for move text; layers outside a..z use their number."""
    return chr(ord("a") + z) if 0 <= z < 26 else f"[{z}]"


def cell(x: int, y: int, z: int) -> Square:
    return Coord3(x, y, z)


__all__ = [
    "legal_moves3",
    "in_check3",
    "apply3",
    "apply3_with_delta",
    "undo3",
    "status3",
    "empty_space",
    "layer_letter",
    "cell",
]
