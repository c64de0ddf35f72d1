from collections.abc import Sequence

import pytest

from infchess.core.errors import StrategyError
from infchess.models.board import Board
from infchess.models.moves import Move
from infchess.models.pieces import Color, piece
from infchess.models.position import Position
from infchess.services.embeddings.strategies import RandomStrategy, Strategy, ValueReducingStrategy
from infchess.services.simulation import (
    GameOutcome,
    OutcomeKind,
    Transcript,
    check_runs,
    simulate,
    strategy_tournament,
)

BK, WK, WQ, WR = (piece(code) for code in ("BK", "WK", "WQ", "WR"))


class _Scripted(Strategy):
    name = "scripted"

    def __init__(self, side: Color, moves: Sequence[Move]) -> None:
        super().__init__(side)
        self.moves = list(moves)

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        return self.moves[len(history) // 2]


def _pos(pieces, to_move: Color = Color.WHITE) -> Position:
    return Position.create(Board.build(2, pieces), to_move)


def _queens_mate_in_one() -> Position:
    return _pos({(0, 0): BK, (1, 5): WQ, (1, -2): WQ})


def _bare_kings() -> Position:
    return _pos({(0, 0): BK, (6, 6): WK})


def test_scripted_mate() -> None:
    white = _Scripted(Color.WHITE, [Move((1, 5), (1, 1), WQ)])
    transcript = simulate(_queens_mate_in_one(), white, RandomStrategy(Color.BLACK))

    assert transcript.outcome == GameOutcome(OutcomeKind.WHITE_MATE, 1)
    assert transcript.outcome.winner is Color.WHITE
    assert transcript.checks == [True]
    assert transcript.summary_line() == (
        "simulate outcome=WhiteMate(1) plies=1 white=scripted(white) black=random[0](black)"
    )


def test_value_reducing_white_mates(small_budget) -> None:
    transcript = simulate(_queens_mate_in_one(), ValueReducingStrategy(small_budget), RandomStrategy(Color.BLACK))
    assert transcript.outcome.kind is OutcomeKind.WHITE_MATE
    assert transcript.final is not None


def test_stalemate_ends_the_game_at_once() -> None:
    position = _pos({(0, 0): BK, (5, 1): WR, (5, -1): WR, (1, 5): WR, (-1, 5): WR}, Color.BLACK)
    transcript = simulate(position, RandomStrategy(Color.WHITE), RandomStrategy(Color.BLACK))
    assert transcript.outcome == GameOutcome(OutcomeKind.STALEMATE)
    assert transcript.outcome.winner is None
    assert transcript.plies == 0


def test_random_games_are_cut_off_and_repeatable() -> None:
    first = simulate(_bare_kings(), RandomStrategy(Color.WHITE, 3), RandomStrategy(Color.BLACK, 4), max_plies=6)
    second = simulate(_bare_kings(), RandomStrategy(Color.WHITE, 3), RandomStrategy(Color.BLACK, 4), max_plies=6)
    assert str(first.outcome) == "Cutoff"
    assert first.plies == 6
    assert first.moves == second.moves


def test_wrong_sides_are_rejected() -> None:
    with pytest.raises(StrategyError) as info:
        simulate(_bare_kings(), RandomStrategy(Color.BLACK), RandomStrategy(Color.BLACK))
    assert info.value.reason == "wrong-side"


def test_illegal_choice_is_reported() -> None:
    white = _Scripted(Color.WHITE, [Move((6, 6), (6, 9), WK)])
    with pytest.raises(StrategyError, match="illegal move") as info:
        simulate(_bare_kings(), white, RandomStrategy(Color.BLACK))
    assert info.value.reason == "illegal-move"


def test_check_runs() -> None:
    w1, w2, w3, w4 = (Move((0, i), (0, i + 1), WR) for i in range(4))
    b = Move((9, 9), (9, 10), BK)
    transcript = Transcript(
        _bare_kings(),
        "w",
        "b",
        moves=[w1, b, w2, b, w3, b, w4],
        checks=[True, False, True, False, False, False, True],
    )
    assert check_runs(transcript, Color.WHITE) == [2, 1]
    assert check_runs(transcript, Color.BLACK) == []


@pytest.mark.parametrize("workers", [1, 2])
def test_tournament_plays_every_pairing(workers: int) -> None:
    whites = [RandomStrategy(Color.WHITE, 0), RandomStrategy(Color.WHITE, 1)]
    blacks = [RandomStrategy(Color.BLACK, 0)]
    result = strategy_tournament(_bare_kings(), whites, blacks, max_plies=4, workers=workers)

    assert result.games == 2
    assert result.whites == ["random[0](white)", "random[1](white)"]
    assert result.summary_line() == "tournament games=2 white_wins=0 black_wins=0 draws=2"


def test_empty_tournament() -> None:
    result = strategy_tournament(_bare_kings(), [], [RandomStrategy(Color.BLACK)], workers=1)
    assert result.games == 0
    assert result.wins(Color.WHITE) == 0
