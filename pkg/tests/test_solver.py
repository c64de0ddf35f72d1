from pathlib import Path

import pytest

from infchess.core.errors import NoValueError, SearchBudgetExhaustedError
from infchess.models.board import Board
from infchess.models.moves import Move
from infchess.models.pieces import Color, piece
from infchess.models.position import Position
from infchess.services import movegen, notation
from infchess.services.embeddings import figures
from infchess.services.solver import Outcome, SearchBudget, mate_search, value_finite, value_reducing_move

WQ = piece("WQ")


def _queens_mate_in_one() -> Position:
    board = Board.build(2, {(0, 0): piece("BK"), (1, 5): WQ, (1, -2): WQ})
    return Position.create(board, Color.WHITE)


def test_mate_in_one() -> None:
    result = mate_search(_queens_mate_in_one(), SearchBudget(mate_bound=2, horizon=8))
    assert result.outcome is Outcome.WHITE_WINS
    assert str(result) == "WhiteWinsIn 1"
    assert not result.horizon_relative


def test_black_already_mated_is_mate_in_zero() -> None:
    board = Board.build(2, {(0, 0): piece("BK"), (1, 1): WQ, (1, -2): WQ})
    result = mate_search(Position.create(board, Color.BLACK), SearchBudget(mate_bound=1, horizon=4))
    assert str(result) == "WhiteWinsIn 0"


def test_bare_kings_have_no_mate() -> None:
    position = Position.create(Board.build(2, {(0, 0): piece("WK"), (5, 5): piece("BK")}))
    result = mate_search(position, SearchBudget(mate_bound=2, horizon=4))
    assert str(result) == "NoMateWithinBudget"
    assert value_finite(position, SearchBudget(mate_bound=2, horizon=4)) is None


def test_black_families_make_the_answer_horizon_relative() -> None:
    board = Board.build(2, {(0, 0): piece("WK"), (5, 5): piece("BK"), (9, 3): piece("BR")})
    result = mate_search(Position.create(board, Color.BLACK), SearchBudget(mate_bound=1, horizon=4))
    assert not result.found
    assert result.horizon_relative


def test_node_limit_is_enforced() -> None:
    with pytest.raises(SearchBudgetExhaustedError) as info:
        mate_search(_queens_mate_in_one(), SearchBudget(mate_bound=2, horizon=8, node_limit=1))
    assert info.value.nodes == 2


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2])
def test_generated_figure_mates_in_n(n: int) -> None:
    result = mate_search(figures.gen_mate_in_n(n), SearchBudget(mate_bound=n, horizon=12))
    assert str(result) == f"WhiteWinsIn {n}"


@pytest.mark.slow
def test_mate_in_three_is_not_found_with_a_smaller_bound() -> None:
    result = mate_search(figures.gen_mate_in_n(3), SearchBudget(mate_bound=2, horizon=12))
    assert str(result) == "NoMateWithinBudget"


@pytest.mark.slow
def test_four_piece_figure_mates_in_three(fixture_dir: Path) -> None:
    position = notation.load_position(fixture_dir / "fig1_n3.icn")
    result = mate_search(position, SearchBudget(mate_bound=3, horizon=12))
    assert str(result) == "WhiteWinsIn 3"


def test_value_reducing_move_mates() -> None:
    position = _queens_mate_in_one()
    move = value_reducing_move(position, SearchBudget(mate_bound=2, horizon=8))
    assert isinstance(move, Move)
    assert movegen.is_checkmate(movegen.apply(position, move))


def test_value_reducing_move_needs_white_to_move() -> None:
    position = Position.create(Board.build(2, {(0, 0): piece("WK"), (5, 5): piece("BK")}), Color.BLACK)
    with pytest.raises(NoValueError):
        value_reducing_move(position, SearchBudget(mate_bound=1, horizon=4))


def test_budget_from_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("INFCHESS_MATE_IN", "4")
    monkeypatch.setenv("INFCHESS_NODE_LIMIT", "500")
    from infchess.core.config import get_settings

    get_settings.cache_clear()
    budget = SearchBudget.from_settings(horizon=7, mate_bound=None)
    assert (budget.mate_bound, budget.horizon, budget.node_limit) == (4, 7, 500)
