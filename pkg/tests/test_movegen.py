import pytest

from infchess.core.errors import IllegalMoveError
from infchess.models.board import Board, RectFill, Span
from infchess.models.moves import FamilyMove, Move
from infchess.models.pieces import Color, Kind, piece
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.movegen import Status

WK, BK = piece("WK"), piece("BK")
WQ, WR, BR = piece("WQ"), piece("WR"), piece("BR")


def _pos(pieces: dict, to_move: Color = Color.WHITE, dims: int = 2, **kwargs) -> Position:
    return Position.create(Board.build(dims, pieces, **kwargs), to_move)


def _codes(position: Position, **kwargs) -> list[str]:
    return [d.code for d in movegen.validate(position, **kwargs)]


def test_open_rays_become_families() -> None:
    position = _pos({(0, 0): WK, (5, 5): WR, (10, 0): BK})
    moves = movegen.legal_moves(position)
    assert len(moves.moves) == 8
    assert len(moves.families) == 4
    assert all(isinstance(f, FamilyMove) and f.min_distance == 1 for f in moves.families)
    assert len(moves.instantiate(3)) == 8 + 4 * 3


def test_king_cannot_stay_on_the_checking_line() -> None:
    position = _pos({(0, 0): WK, (0, 5): BR, (7, 7): BK})
    assert movegen.in_check(position, Color.WHITE)
    targets = {move.to_sq for move in movegen.legal_moves(position).moves}
    assert targets == {(1, 0), (1, 1), (1, -1), (-1, 0), (-1, 1), (-1, -1)}
    assert movegen.status(position).kind is Status.ONGOING


def test_two_queens_checkmate() -> None:
    position = _pos({(0, 0): BK, (1, 1): WQ, (1, -2): WQ}, Color.BLACK)
    state = movegen.status(position)
    assert state.kind is Status.CHECKMATE
    assert str(state) == "checkmate(black)"
    assert movegen.is_checkmate(position)


def test_four_rooks_stalemate() -> None:
    position = _pos({(0, 0): BK, (5, 1): WR, (5, -1): WR, (1, 5): WR, (-1, 5): WR}, Color.BLACK)
    assert str(movegen.status(position)) == "stalemate"


def test_pinned_rook_stays_on_the_pin_line() -> None:
    position = _pos({(0, 0): WK, (0, 2): WR, (0, 6): BR, (9, 9): BK})
    moves = movegen.piece_moves(position, (0, 2))
    assert all(isinstance(move, Move) for move in moves)
    assert {move.to_sq for move in moves} == {(0, 1), (0, 3), (0, 4), (0, 5), (0, 6)}


def test_capture_apply_and_undo() -> None:
    position = _pos({(0, 0): WK, (0, 3): WR, (0, 6): BR, (9, 9): BK})
    capture = Move((0, 3), (0, 6), WR, BR)
    assert movegen.is_legal(position, capture)
    child, delta = movegen.apply_with_delta(position, capture)
    assert child.to_move is Color.BLACK
    assert (Color.BLACK, Kind.ROOK) not in child.counts
    assert movegen.validate(child) == []
    assert movegen.undo(child, delta) == position


def test_illegal_moves_are_refused() -> None:
    position = _pos({(0, 0): WK, (0, 5): BR, (7, 7): BK})
    with pytest.raises(IllegalMoveError):
        movegen.apply(position, Move((0, 0), (0, 1), WK))
    with pytest.raises(IllegalMoveError):
        Move((0, 0), (0, 0), WK)
    assert not movegen.is_legal(position, Move((7, 7), (7, 8), BK))


def test_gives_check() -> None:
    position = _pos({(0, 0): WK, (5, 5): WR, (9, 9): BK})
    assert movegen.gives_check(position, Move((5, 5), (5, 9), WR))
    assert not movegen.gives_check(position, Move((5, 5), (5, 8), WR))


def test_space_moves() -> None:
    position = _pos({(0, 0, 0): WK, (0, 0, 5): WR, (9, 9, 9): BK}, dims=3)
    moves = movegen.legal_moves(position)
    assert len(moves.families) == 5
    assert len(moves.moves) == 4 + 18


def test_validation_diagnostics() -> None:
    assert _codes(_pos({(0, 0): WK, (9, 9): BK})) == []
    assert _codes(_pos({(0, 0): WK, (5, 5): WK, (9, 9): BK})) == ["two-kings"]
    in_check = _pos({(0, 0): WK, (0, 5): BR, (9, 9): BK}, Color.BLACK)
    assert _codes(in_check) == ["idle-side-in-check"]
    assert _codes(in_check, allow_check=True) == []
    both = _pos({(0, 0): WK, (0, 5): BR, (9, 9): BK, (9, 0): WR})
    assert _codes(both) == ["both-in-check"]
    assert "knight-3d" in _codes(_pos({(0, 0, 0): WK, (5, 5, 5): BK, (1, 1, 1): piece("WN")}, dims=3))


def test_declared_counts_must_match() -> None:
    board = Board.build(2, {(0, 0): WK, (9, 9): BK, (3, 5): WQ})
    position = Position.create(
        board, Color.WHITE, {(Color.WHITE, Kind.KING): 1, (Color.BLACK, Kind.KING): 1, (Color.WHITE, Kind.QUEEN): 2}
    )
    diagnostics = movegen.validate(position)
    assert [d.code for d in diagnostics] == ["count-mismatch"]
    assert str(diagnostics[0]) == "error: count-mismatch: W Q: declared 2, board has 1"


def test_mobile_region_far_away_is_unsupported() -> None:
    rooks = RectFill((Span(0, None), Span(5, 5)), BR)
    position = _pos({(0, 0): WK, (-9, -9): BK}, regions=[rooks])
    assert _codes(position) == ["far-mobility"]


def test_missing_king_is_allowed() -> None:
    position = _pos({(0, 0): BK, (5, 5): WQ}, Color.BLACK)
    assert movegen.validate(position) == []


def test_canonical_order_puts_finite_moves_first() -> None:
    up, right = Move((0, 0), (0, 1), WR), Move((0, 0), (1, 0), WR)
    ray = FamilyMove((0, 0), (1, 0), 2, WR)
    assert movegen.canonical_move_order([ray, right, up]) == [up, right, ray]
    assert movegen.canonical_move_order([up, ray, right]) == [up, right, ray]
