"""Legal move generation, check detection, status and validation on infinite boards.

The generator works in any supported dimension; the direction tables come from
``infchess.services.geometry``. Region pieces are only enumerated near the
finite features of the board; a cached shell check makes sure the rest of every
region is immobile.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from infchess.core.errors import BoardError, IllegalMoveError, KnightIn3DError, UnsupportedPositionError
from infchess.models.board import Board, Hit, Region, Span, Square, Vector, expand, shift
from infchess.models.moves import Delta, FamilyMove, Move, family_distance
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position
from infchess.services.geometry import Geometry, geometry_for

logger = logging.getLogger(__name__)

AnyMove = Move | FamilyMove

_SLIDERS = (Kind.QUEEN, Kind.ROOK, Kind.BISHOP)


class Status(str, Enum):
    ONGOING = "ongoing"
    CHECKMATE = "checkmate"
    STALEMATE = "stalemate"


@dataclass(frozen=True)
class GameStatus:
    kind: Status
    loser: Color | None = None

    def __str__(self) -> str:
        if self.kind is Status.CHECKMATE:
            return f"checkmate({self.loser.value})"  # type: ignore[union-attr]
        return self.kind.value


@dataclass(frozen=True)
class MoveList:
    moves: tuple[Move, ...]
    families: tuple[FamilyMove, ...]

    @property
    def is_empty(self) -> bool:
        return not self.moves and not self.families

    def __len__(self) -> int:
        return len(self.moves) + len(self.families)

    def instantiate(self, horizon: int) -> list[Move]:
        """Finite moves followed by every family member up to ``horizon``."""
        expanded = list(self.moves)
        for family in self.families:
            expanded.extend(family.at(t) for t in range(family.min_distance, horizon + 1))
        return expanded


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.code}: {self.message}"


class _Overlay:
    """Board view with a few squares changed, used for king-safety tests."""

    __slots__ = ("board", "changes")

    def __init__(self, board: Board, changes: Mapping[Square, Piece | None]) -> None:
        self.board = board
        self.changes = changes

    def piece_at(self, square: Square) -> Piece | None:
        if square in self.changes:
            return self.changes[square]
        return self.board.piece_at(square)

    def first_occupied(self, origin: Square, direction: Vector) -> Hit | None:
        best: Hit | None = None
        for square, value in self.changes.items():
            if value is None:
                continue
            t = family_distance(origin, direction, square)
            if t is not None and (best is None or t < best.distance):
                best = Hit(square, value, t)
        start = 1
        while True:
            limit = None if best is None else best.distance - 1
            if limit is not None and limit < start:
                return best
            hit = self.board.first_occupied(origin, direction, start=start, limit=limit)
            if hit is None:
                return best
            if hit.square in self.changes:
                start = hit.distance + 1
                continue
            return hit


@lru_cache(maxsize=64)
def _pawn_offsets(dims: int, forward: Vector) -> tuple[Vector, ...]:
    return geometry_for(dims).pawn_captures(forward)


def _has_sliders(position: Position, color: Color) -> bool:
    if not position.declared:
        return True
    counts = position.counts
    return any(counts.get((color, kind), 0) != 0 for kind in _SLIDERS)


def attacked(view: Board | _Overlay, square: Square, by: Color, position: Position) -> bool:
    """Whether ``by`` attacks ``square``, by reverse scans from the square."""
    geometry = geometry_for(position.dims)
    if _has_sliders(position, by):
        for direction in geometry.queen_dirs:
            hit = view.first_occupied(square, direction)
            if hit is None or hit.piece.color is not by:
                continue
            kind = hit.piece.kind
            if kind is Kind.QUEEN:
                return True
            if kind is Kind.ROOK and geometry.is_orthogonal(direction):
                return True
            if kind is Kind.BISHOP and not geometry.is_orthogonal(direction):
                return True
            if kind is Kind.KING and hit.distance == 1:
                return True
    else:
        king = Piece(by, Kind.KING)
        for step in geometry.king_steps:
            if view.piece_at(shift(square, step)) == king:
                return True
    knight = Piece(by, Kind.KNIGHT)
    for step in geometry.knight_steps:
        if view.piece_at(shift(square, step)) == knight:
            return True
    pawn = Piece(by, Kind.PAWN)
    for offset in _pawn_offsets(position.dims, position.pawn_forward(by)):
        if view.piece_at(tuple(s - o for s, o in zip(square, offset))) == pawn:
            return True
    return False


def in_check(position: Position, color: Color) -> bool:
    king = position.king(color)
    if king is None:
        raise BoardError(f"no {color.value} king on the board")
    return attacked(position.board, king, color.opponent, position)


def _checked(position: Position, color: Color) -> bool:
    king = position.king(color)
    return king is not None and attacked(position.board, king, color.opponent, position)


class _Generator:
    def __init__(self, position: Position) -> None:
        self.position = position
        self.board = position.board
        self.geometry: Geometry = geometry_for(position.dims)
        self.color = position.to_move
        self.enemy = self.color.opponent
        self.king = position.king(self.color)
        ensure_finite_mobility(position)

    def _safe(self, changes: Mapping[Square, Piece | None], king: Square | None) -> bool:
        if king is None:
            return True
        return not attacked(_Overlay(self.board, changes), king, self.enemy, self.position)

    def _targets(self, square: Square, piece: Piece) -> tuple[list[Move], list[Vector]]:
        """Pseudo-legal finite moves and the directions of unbounded empty rays."""
        finite: list[Move] = []
        open_rays: list[Vector] = []
        kind = piece.kind
        if kind.is_slider:
            for direction in self.geometry.slider_dirs(kind):
                hit = self.board.first_occupied(square, direction)
                if hit is None:
                    open_rays.append(direction)
                    continue
                for t in range(1, hit.distance):
                    finite.append(Move(square, shift(square, direction, t), piece))
                if hit.piece.color is self.enemy:
                    finite.append(Move(square, hit.square, piece, hit.piece))
            return finite, open_rays
        if kind is Kind.PAWN:
            forward = self.position.pawn_forward(piece.color)
            ahead = shift(square, forward)
            if self.board.piece_at(ahead) is None:
                finite.append(Move(square, ahead, piece))
            for offset in _pawn_offsets(self.position.dims, forward):
                target = shift(square, offset)
                victim = self.board.piece_at(target)
                if victim is not None and victim.color is self.enemy:
                    finite.append(Move(square, target, piece, victim))
            return finite, open_rays
        if kind is Kind.KNIGHT:
            if self.position.dims != 2:
                raise KnightIn3DError(f"knight on {square} has no movement rule in three dimensions")
            steps = self.geometry.knight_steps
        else:
            steps = self.geometry.king_steps
        for step in steps:
            target = shift(square, step)
            victim = self.board.piece_at(target)
            if victim is None or victim.color is self.enemy:
                finite.append(Move(square, target, piece, victim))
        return finite, open_rays

    def piece_moves(self, square: Square, piece: Piece) -> Iterator[AnyMove]:
        finite, open_rays = self._targets(square, piece)
        if piece.kind is Kind.KING:
            for move in finite:
                if self._safe({square: None, move.to_sq: piece}, move.to_sq):
                    yield move
            return
        vacate_ok = self._safe({square: None}, self.king)
        for move in finite:
            if vacate_ok or self._safe({square: None, move.to_sq: piece}, self.king):
                yield move
        for direction in open_rays:
            if vacate_ok:
                yield FamilyMove(square, direction, 1, piece)
                continue
            for t in self._blocking_distances(square, direction):
                target = shift(square, direction, t)
                if self._safe({square: None, target: piece}, self.king):
                    yield Move(square, target, piece)

    def _blocking_distances(self, square: Square, direction: Vector) -> list[int]:
        """Distances along an empty ray that land on a line of attack into the own king."""
        if self.king is None:
            return []
        view = _Overlay(self.board, {square: None})
        found: set[int] = set()
        for line in self.geometry.queen_dirs:
            hit = view.first_occupied(self.king, line)
            if hit is None or hit.piece.color is not self.enemy or not hit.piece.kind.is_slider:
                continue
            for j in range(1, hit.distance):
                t = family_distance(square, direction, shift(self.king, line, j))
                if t is not None:
                    found.add(t)
        return sorted(found)

    def pieces(self) -> Iterator[tuple[Square, Piece]]:
        """Placed pieces first; region pieces are only enumerated when reached."""
        yield from (item for item in self.board.placed if item[1].color is self.color)
        yield from self.board.region_pieces(self.color)

    def __iter__(self) -> Iterator[AnyMove]:
        for square, piece in self.pieces():
            yield from self.piece_moves(square, piece)


def iter_legal_moves(position: Position) -> Iterator[AnyMove]:
    """Lazily yields legal moves piece by piece."""
    return iter(_Generator(position))


def has_legal_move(position: Position) -> bool:
    return next(iter_legal_moves(position), None) is not None


def legal_moves(position: Position) -> MoveList:
    moves: list[Move] = []
    families: list[FamilyMove] = []
    for move in iter_legal_moves(position):
        (families if isinstance(move, FamilyMove) else moves).append(move)  # type: ignore[arg-type]
    ordered = canonical_move_order([*moves, *families])
    return MoveList(
        tuple(m for m in ordered if isinstance(m, Move)),
        tuple(m for m in ordered if isinstance(m, FamilyMove)),
    )


def piece_moves(position: Position, square: Square) -> list[AnyMove]:
    piece = position.piece_at(square)
    if piece is None or piece.color is not position.to_move:
        return []
    return list(_Generator(position).piece_moves(tuple(square), piece))


def is_legal(position: Position, move: Move) -> bool:
    if move.mover.color is not position.to_move or position.piece_at(move.from_sq) != move.mover:
        return False
    for candidate in piece_moves(position, move.from_sq):
        if isinstance(candidate, FamilyMove):
            if candidate.contains(move):
                return True
        elif candidate == move:
            return True
    return False


def canonical_move_order(moves: Iterable[AnyMove]) -> list[AnyMove]:
    """Finite moves by (from, to), then families by (from, direction index)."""

    def key(move: AnyMove) -> tuple:
        if isinstance(move, FamilyMove):
            index = geometry_for(len(move.from_sq)).direction_index(move.direction)
            return (1, move.from_sq, index, ())
        return (0, move.from_sq, move.to_sq, ())

    return sorted(moves, key=key)


def apply_with_delta(position: Position, move: Move, *, check: bool = True) -> tuple[Position, Delta]:
    if check and not is_legal(position, move):
        raise IllegalMoveError(f"{move} is not legal here", move=move)
    before = position.piece_at(move.to_sq)
    if before != move.captured:
        raise IllegalMoveError(f"{move} does not match the board", move=move, reason="capture-mismatch")
    changes = {move.from_sq: None, move.to_sq: move.mover}
    counts = position.counts
    if move.captured is not None:
        key = (move.captured.color, move.captured.kind)
        if counts.get(key) is not None:
            counts[key] = counts[key] - 1  # type: ignore[operator]
    child = position.replace(position.board.with_changes(changes), position.to_move.opponent, counts)
    delta = Delta(((move.from_sq, move.mover, None), (move.to_sq, before, move.mover)), move)
    return child, delta


def apply(position: Position, move: Move, *, check: bool = True) -> Position:
    return apply_with_delta(position, move, check=check)[0]


def undo(position: Position, delta: Delta) -> Position:
    changes = {square: before for square, before, _ in delta.changes}
    counts = position.counts
    captured = delta.move.captured
    if captured is not None:
        key = (captured.color, captured.kind)
        if counts.get(key, 0) is not None:
            counts[key] = counts.get(key, 0) + 1  # type: ignore[operator]
    return position.replace(position.board.with_changes(changes), position.to_move.opponent, counts)


def gives_check(position: Position, move: Move) -> bool:
    child = apply(position, move, check=False)
    return _checked(child, child.to_move)


def status(position: Position) -> GameStatus:
    if has_legal_move(position):
        return GameStatus(Status.ONGOING)
    if _checked(position, position.to_move):
        return GameStatus(Status.CHECKMATE, position.to_move)
    return GameStatus(Status.STALEMATE)


def is_checkmate(position: Position) -> bool:
    return status(position).kind is Status.CHECKMATE


def _pseudo_mobile(board: Board, square: Square, piece: Piece, position: Position) -> bool:
    geometry = geometry_for(board.dims)
    enemy = piece.color.opponent

    def open_square(target: Square) -> bool:
        content = board.piece_at(target)
        return content is None or content.color is enemy

    if piece.kind is Kind.PAWN:
        forward = position.pawn_forward(piece.color)
        if board.piece_at(shift(square, forward)) is None:
            return True
        for offset in _pawn_offsets(board.dims, forward):
            victim = board.piece_at(shift(square, offset))
            if victim is not None and victim.color is enemy:
                return True
        return False
    if piece.kind is Kind.KNIGHT:
        if board.dims != 2:
            raise KnightIn3DError("knights have no movement rule in three dimensions")
        steps: Sequence[Vector] = geometry.knight_steps
    elif piece.kind is Kind.KING:
        steps = geometry.king_steps
    else:
        steps = geometry.slider_dirs(piece.kind)
    return any(open_square(shift(square, step)) for step in steps)


@lru_cache(maxsize=128)
def _shell_mobile(regions: tuple[Region, ...], dims: int, pawn_axis: tuple[int, int]) -> tuple[Square, ...]:
    board = Board(dims, regions)
    probe = Position(board, Color.WHITE, (), pawn_axis)
    width = 2 + max((region.period for region in regions), default=1)
    inner = expand(board.anchor_box, 2)
    outer = expand(board.anchor_box, 2 + width)
    mobile: list[Square] = []
    for region in regions:
        if region.cardinality() is not None:
            continue
        for square in region.squares_in(outer) or ():
            if all(span.contains(v) for span, v in zip(inner, square)):
                continue
            if _pseudo_mobile(board, square, region.piece, probe):
                mobile.append(square)
                break
    return tuple(mobile)


def ensure_finite_mobility(position: Position) -> None:
    """Raises when region pieces far from every feature could move."""
    mobile = _shell_mobile(position.board.regions, position.dims, position.pawn_axis)
    if mobile:
        raise UnsupportedPositionError(
            f"region pieces far from the anchors can move (e.g. {mobile[0]}); infinitely many moves"
        )


def validate(position: Position, *, allow_check: bool = False) -> list[Diagnostic]:
    """Diagnostics for a position; an empty list means valid."""
    diagnostics: list[Diagnostic] = []
    census = position.board.census()
    for color in Color:
        kings = census.get((color, Kind.KING), 0)
        if kings is None or kings > 1:
            diagnostics.append(Diagnostic("two-kings", f"{color.value} has more than one king"))
    declared = position.counts
    for key in sorted(set(census) | set(declared), key=lambda k: (k[0].value, k[1].value)):
        if census.get(key, 0) != declared.get(key, 0):
            color, kind = key
            diagnostics.append(
                Diagnostic(
                    "count-mismatch",
                    f"{color.letter} {kind.value}: declared {_count_text(declared.get(key, 0))}, "
                    f"board has {_count_text(census.get(key, 0))}",
                )
            )
    if position.dims == 3 and any(kind is Kind.KNIGHT for _, kind in census):
        diagnostics.append(Diagnostic("knight-3d", "knights have no movement rule in three dimensions"))
        return diagnostics
    try:
        ensure_finite_mobility(position)
    except UnsupportedPositionError as exc:
        diagnostics.append(Diagnostic("far-mobility", str(exc)))
        return diagnostics
    if any(d.code == "two-kings" for d in diagnostics):
        return diagnostics
    mover_checked = _checked(position, position.to_move)
    other_checked = _checked(position, position.to_move.opponent)
    if mover_checked and other_checked and not allow_check:
        diagnostics.append(Diagnostic("both-in-check", "both kings are in check"))
    elif other_checked and not allow_check:
        diagnostics.append(
            Diagnostic("idle-side-in-check", f"{position.to_move.opponent.value} is in check but not to move")
        )
    return diagnostics


def _count_text(value: int | None) -> str:
    return "inf" if value is None else str(value)


def window(position: Position) -> tuple[Span, ...]:
    """Bounding box of placed pieces and region anchors."""
    squares = [sq for sq, _ in position.board.placed]
    if position.board.regions:
        box = position.board.anchor_box
        squares.append(tuple(span.lo for span in box))  # type: ignore[arg-type]
        squares.append(tuple(span.hi for span in box))  # type: ignore[arg-type]
    if not squares:
        return tuple(Span(0, 0) for _ in range(position.dims))
    return tuple(Span(min(sq[i] for sq in squares), max(sq[i] for sq in squares)) for i in range(position.dims))


__all__ = [
    "AnyMove",
    "Status",
    "GameStatus",
    "MoveList",
    "Diagnostic",
    "attacked",
    "in_check",
    "iter_legal_moves",
    "has_legal_move",
    "legal_moves",
    "piece_moves",
    "is_legal",
    "canonical_move_order",
    "apply",
    "apply_with_delta",
    "undo",
    "gives_check",
    "status",
    "is_checkmate",
    "ensure_finite_mobility",
    "validate",
    "window",
]
