from pathlib import Path

import pytest

from infchess.core.errors import MoveParseError, NotationError
from infchess.models.board import Board
from infchess.models.moves import Move
from infchess.models.pieces import Color, Kind, piece
from infchess.models.position import Position
from infchess.services import notation
from infchess.services.embeddings import figures

REGIONS_TEXT = """\
icn 1
variant 2d
to-move black
count B R inf
count W P 3
piece W K (0,0)
piece B K (9,9)
region fill B R x=0..inf y=5..5
region lattice W P base=(0,-2) step=(2,0) count=3
empty (4,5)
"""


def _fig1(fixture_dir: Path) -> Position:
    return notation.load_position(fixture_dir / "fig1_n3.icn")


def test_fixture_loads(fixture_dir: Path) -> None:
    position = _fig1(fixture_dir)
    assert position.dims == 2
    assert position.to_move is Color.WHITE
    assert position.piece_at((5, 4)) == piece("BK")
    assert position.piece_at((9, 4)) == piece("WK")
    assert position.counts[(Color.WHITE, Kind.QUEEN)] == 1


def test_regions_and_empties_parse() -> None:
    position = notation.parse_position(REGIONS_TEXT)
    assert position.to_move is Color.BLACK
    assert position.counts[(Color.BLACK, Kind.ROOK)] is None
    assert position.piece_at((100, 5)) == piece("BR")
    assert position.piece_at((4, 5)) is None
    assert position.piece_at((4, -2)) == piece("WP")
    assert position.piece_at((6, -2)) is None
    assert notation.parse_position(notation.serialize_position(position)) == position


def test_serialized_comments_come_first() -> None:
    position = Position.create(Board.build(2, {(1, 1): piece("WK")}))
    text = notation.serialize_position(position, comments=["hello"])
    assert text.splitlines()[:2] == ["# hello", "icn 1"]


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("icn 2\n", 1),
        ("icn 1\nvariant 2d\nbogus 1\n", 3),
        ("icn 1\nregion fill B R x=0..inf y=5..5\n", 2),
        ("icn 1\ncount W Q 2\npiece W Q (1,1)\n", 2),
        ("icn 1\npiece W Q (1,1,1)\n", 2),
    ],
)
def test_errors_carry_the_line(text: str, line: int) -> None:
    with pytest.raises(NotationError) as info:
        notation.parse_position(text)
    assert info.value.line == line


def test_overlapping_regions_name_both_lines() -> None:
    text = (
        "icn 1\ncount B R inf\ncount W P inf\n"
        "region fill B R x=0..inf y=5..5\nregion fill W P x=-inf..inf y=5..5\n"
    )
    with pytest.raises(NotationError, match="region on line 4 overlaps region on line 5"):
        notation.parse_position(text)


def test_square_text() -> None:
    assert notation.format_square((5, 4)) == "e4"
    assert notation.format_square((0, 4)) == "(0,4)"
    assert notation.format_square((3, 6, 2)) == "c:c6"
    assert notation.format_square((3, 6, -1)) == "(3,6,-1)"
    assert notation.parse_square("c:e6", 3) == (5, 6, 2)
    assert notation.parse_square("(-3,7)", 2) == (-3, 7)


def test_check_suffix_is_enforced(fixture_dir: Path) -> None:
    position = _fig1(fixture_dir)
    move = notation.resolve_move(position, "Re3+")
    assert move == Move((3, 3), (5, 3), piece("WR"))
    assert notation.format_move(move, position) == "Re3+"
    with pytest.raises(MoveParseError, match="suffix mismatch"):
        notation.resolve_move(position, "Re3")


def test_replay_and_format_line(fixture_dir: Path) -> None:
    position = _fig1(fixture_dir)
    moves, positions = notation.replay("1.Re3+ Kf4", position)
    assert len(positions) == 3
    assert positions[-1].piece_at((6, 4)) == piece("BK")
    assert notation.format_line(moves, position) == "1.Re3+ Kf4"


def test_bad_tokens_report_their_index(fixture_dir: Path) -> None:
    position = _fig1(fixture_dir)
    with pytest.raises(MoveParseError) as info:
        notation.replay("1.Re3+ zz", position)
    assert info.value.token_index == 2
    assert str(info.value) == "token 2 ('zz'): unparseable move"
    with pytest.raises(MoveParseError, match="no legal move"):
        notation.resolve_move(position, "Kz9")


def test_diagram() -> None:
    position = Position.create(Board.build(2, {(1, 1): piece("WK"), (3, 2): piece("BK")}))
    assert notation.diagram(position) == "   2 . . k\n   1 K . ."


def test_parse_moves_follows_the_roll_line() -> None:
    position = figures.gen_mate_in_n(3)
    moves = notation.parse_moves("1.Re3+ Kf4", position)
    assert moves == figures.mate_in_n_moves(3)[:2]
    assert moves[1].mover == piece("BK")
