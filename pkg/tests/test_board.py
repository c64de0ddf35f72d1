import pytest

from infchess.core.errors import BoardError, RegionOverlapError
from infchess.models.board import Board, LatticeFill, RectFill, Span, chebyshev, shift
from infchess.models.pieces import Color, Kind, piece

BR = piece("BR")
WK = piece("WK")
WP = piece("WP")

ROOK_ROW = RectFill((Span(0, None), Span(5, 5)), BR)


def test_overrides_matching_the_region_are_dropped() -> None:
    board = Board.build(2, {(3, 5): BR, (1, 1): WK}, [ROOK_ROW])
    assert board.overrides == (((1, 1), WK),)
    assert board.piece_at((100, 5)) == BR
    assert board.piece_at((-1, 5)) is None


def test_equal_boards_do_not_depend_on_insertion_order() -> None:
    first = Board.build(2, [((4, 4), WK), ((0, 0), WP)])
    second = Board.build(2, [((0, 0), WP), ((4, 4), WK)])
    assert first == second
    assert hash(first) == hash(second)


def test_ray_skips_emptied_region_squares() -> None:
    board = Board.build(2, {}, [ROOK_ROW])
    hit = board.first_occupied((-3, 5), (1, 0))
    assert hit is not None and hit.square == (0, 5) and hit.distance == 3
    holed = Board.build(2, {}, [ROOK_ROW], empty=[(0, 5)])
    hit = holed.first_occupied((-3, 5), (1, 0))
    assert hit is not None and hit.square == (1, 5) and hit.piece == BR


def test_ray_that_never_meets_a_piece() -> None:
    board = Board.build(2, {}, [ROOK_ROW])
    assert board.first_occupied((0, 0), (0, -1)) is None
    assert board.first_occupied((-5, 0), (1, 0), limit=1000) is None


def test_lattice_rays() -> None:
    lattice = LatticeFill((0, 0), (3, 0), None, BR)
    board = Board.build(2, {}, [lattice])
    assert board.first_occupied((-1, 0), (1, 0)).square == (0, 0)  # type: ignore[union-attr]
    assert board.first_occupied((-1, 0), (1, 0), start=2).square == (3, 0)  # type: ignore[union-attr]
    assert board.first_occupied((0, -3), (1, 1)).square == (3, 0)  # type: ignore[union-attr]
    assert board.piece_at((9, 0)) == BR
    assert board.piece_at((10, 0)) is None


def test_infinite_overlap_is_rejected() -> None:
    with pytest.raises(RegionOverlapError) as info:
        Board.build(2, {}, [ROOK_ROW, RectFill((Span(None, None), Span(5, 5)), WP)])
    assert (info.value.first, info.value.second) == (0, 1)


def test_unbounded_regions_disjoint_on_a_later_axis() -> None:
    low = RectFill((Span(5, None), Span(4, 4)), WP)
    high = RectFill((Span(32, None), Span(5, None)), BR)
    board = Board.build(2, {}, [low, high])
    assert board.piece_at((40, 4)) == WP
    assert board.piece_at((40, 5)) == BR


def test_finite_overlap_needs_an_override() -> None:
    left = RectFill((Span(0, 2), Span(0, 0)), WP)
    right = RectFill((Span(2, 4), Span(0, 0)), piece("BP"))
    with pytest.raises(RegionOverlapError) as info:
        Board.build(2, {}, [left, right])
    assert info.value.square == (2, 0)
    board = Board.build(2, {(2, 0): WP}, [left, right])
    assert board.overrides == (((2, 0), WP),)
    assert board.piece_at((2, 0)) == WP


def test_census_counts_regions_and_omits_zero() -> None:
    board = Board.build(
        2,
        {(10, 10): WK},
        [LatticeFill((0, 0), (2, 0), 3, WP), ROOK_ROW],
        empty=[(2, 0)],
    )
    assert board.census() == {
        (Color.WHITE, Kind.KING): 1,
        (Color.WHITE, Kind.PAWN): 2,
        (Color.BLACK, Kind.ROOK): None,
    }
    assert Board.build(2, {}, [LatticeFill((0, 0), (1, 0), 1, WP)], empty=[(0, 0)]).census() == {}


def test_with_changes_renormalises() -> None:
    board = Board.build(2, {(1, 1): WK}, [ROOK_ROW])
    emptied = board.with_changes({(3, 5): None})
    assert emptied.piece_at((3, 5)) is None
    assert emptied != board
    assert emptied.with_changes({(3, 5): BR}) == board


def test_invalid_shapes() -> None:
    with pytest.raises(BoardError):
        Span(3, 1)
    with pytest.raises(BoardError):
        Board(4)
    with pytest.raises(BoardError):
        LatticeFill((0, 0), (0, 0), None, BR)


def test_geometry_helpers() -> None:
    assert chebyshev((0, 0), (3, -5)) == 5
    assert shift((1, 2), (1, 0), 3) == (4, 2)
