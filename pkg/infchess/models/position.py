"""Positions: a board, the side to move, declared piece counts and the pawn axis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from infchess.core.errors import BoardError
from infchess.models.board import Board, Square
from infchess.models.pieces import Color, Kind, Piece

Counts = Mapping[tuple[Color, Kind], int | None]

DEFAULT_PAWN_AXIS = (1, 1)


@dataclass(frozen=True, eq=False)
class Position:
    board: Board
    to_move: Color
    declared: tuple[tuple[tuple[Color, Kind], int | None], ...] = ()
    pawn_axis: tuple[int, int] = DEFAULT_PAWN_AXIS

    def __post_init__(self) -> None:
        axis, sign = self.pawn_axis
        if not 0 <= axis < self.board.dims or sign not in (1, -1):
            raise BoardError(f"bad pawn axis {self.pawn_axis}")

    @classmethod
    def create(
        cls,
        board: Board,
        to_move: Color = Color.WHITE,
        counts: Counts | None = None,
        pawn_axis: tuple[int, int] = DEFAULT_PAWN_AXIS,
    ) -> Position:
        """Builds a position; counts default to the board census."""
        return cls(board, to_move, _freeze(board.census() if counts is None else counts), pawn_axis)

    @property
    def dims(self) -> int:
        return self.board.dims

    @property
    def counts(self) -> dict[tuple[Color, Kind], int | None]:
        return dict(self.declared)

    def piece_at(self, square: Square) -> Piece | None:
        return self.board.piece_at(square)

    def king(self, color: Color) -> Square | None:
        kings = self.board.find(Piece(color, Kind.KING))
        return kings[0] if kings else None

    def pawn_forward(self, color: Color) -> tuple[int, ...]:
        axis, sign = self.pawn_axis
        if color is Color.BLACK:
            sign = -sign
        return tuple(sign if i == axis else 0 for i in range(self.dims))

    def replace(self, board: Board, to_move: Color, counts: Counts | None = None) -> Position:
        declared = self.declared if counts is None else _freeze(counts)
        return Position(board, to_move, declared, self.pawn_axis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Position):
            return NotImplemented
        return (
            self.to_move is other.to_move
            and self.pawn_axis == other.pawn_axis
            and self.declared == other.declared
            and self.board == other.board
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.board, self.to_move, self.declared, self.pawn_axis))

    @property
    def key(self) -> tuple:
        """Transposition key: overrides and side to move, regions assumed shared."""
        return (self.board.overrides, self.to_move)


def _freeze(counts: Counts) -> tuple[tuple[tuple[Color, Kind], int | None], ...]:
    order = {kind: i for i, kind in enumerate(Kind)}
    items = [(key, value) for key, value in counts.items() if value != 0]
    return tuple(sorted(items, key=lambda item: (item[0][0] is Color.BLACK, order[item[0][1]])))


__all__ = ["Position", "Counts", "DEFAULT_PAWN_AXIS"]
