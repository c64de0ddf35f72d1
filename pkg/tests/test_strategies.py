import pytest

from infchess.core.errors import StrategyError
from infchess.models.board import Board
from infchess.models.pieces import Color, piece
from infchess.models.position import Position
from infchess.services.embeddings import strategies
from infchess.services.embeddings.strategies import (
    BranchFollower,
    Harasser,
    RandomStrategy,
    make_move,
    make_strategy,
)
from infchess.services.embeddings.trees2d import TreeStyle, embed_tree_2d, full_tree

BK, WK, WR = piece("BK"), piece("WK"), piece("WR")


def _rook_ending() -> Position:
    return Position.create(Board.build(2, {(0, 0): WK, (0, 3): WR, (9, 9): BK}), Color.WHITE)


def test_make_move_checks_legality() -> None:
    position = _rook_ending()
    move = make_move(position, (0, 3), (0, 1))
    assert move is not None
    assert move.mover == WR
    assert make_move(position, (0, 3), (1, 4)) is None
    assert make_move(position, (9, 9), (9, 8)) is None
    assert make_move(position, (5, 5), (5, 6)) is None


def test_first_legal_is_canonical() -> None:
    position = _rook_ending()
    assert strategies.first_legal(position) == strategies.first_legal(position)
    assert strategies.first_legal(position) is not None


def test_random_strategy_depends_on_seed_and_ply() -> None:
    position = _rook_ending()
    player = RandomStrategy(Color.WHITE, seed=7)
    assert player.choose(position, []) == RandomStrategy(Color.WHITE, seed=7).choose(position, [])
    assert str(player) == "random[7](white)"


def test_harasser_plan() -> None:
    harasser = Harasser([2])
    assert harasser.plan == (("climb", 1), ("retreat", 2), ("check", 0), ("check", 1))
    assert Harasser([1, 3, 2]).climb == 2


def test_branch_follower_cycles_its_path() -> None:
    layout = embed_tree_2d(full_tree, TreeStyle.ROOK_PAWN, 2).layout
    follower = BranchFollower(layout, (0, 1))
    assert [follower.label(depth) for depth in range(4)] == [0, 1, 0, 1]
    assert follower.side is Color.BLACK


def test_black_suite_is_topped_up_with_random_players() -> None:
    layout = embed_tree_2d(full_tree, TreeStyle.ROOK_PAWN, 2).layout
    suite = strategies.black_suite(layout, size=10)
    assert len(suite) == 10
    assert [type(player).__name__ for player in suite[-2:]] == ["RandomStrategy", "RandomStrategy"]
    assert all(player.side is Color.BLACK for player in suite)


def test_pusher_side_follows_the_layout() -> None:
    embedding = embed_tree_2d(full_tree, TreeStyle.SYMMETRIC, 1)
    assert strategies.white_pusher(embedding.layout).side is Color.WHITE
    with pytest.raises(StrategyError) as info:
        strategies.white_pusher(embedding.layout_for(Color.WHITE))
    assert info.value.reason == "wrong-side"


@pytest.mark.parametrize(
    ("make", "reason"),
    [
        (lambda: make_strategy("teleport", Color.WHITE), "unknown"),
        (lambda: make_strategy("pusher", Color.WHITE), "no-layout"),
        (lambda: make_strategy("harasser", Color.WHITE), "wrong-side"),
        (lambda: make_strategy("door", Color.BLACK), "wrong-side"),
        (lambda: Harasser([0]), "bad-schedule"),
        (lambda: BranchFollower(embed_tree_2d(full_tree, "rook-pawn", 1).layout, ()), "bad-path"),
    ],
)
def test_strategy_errors(make, reason: str) -> None:
    with pytest.raises(StrategyError) as info:
        make()
    assert info.value.reason == reason


def test_make_strategy_by_name(small_budget) -> None:
    assert make_strategy("random", Color.BLACK, seed=3).seed == 3
    assert make_strategy("value-reducing", Color.WHITE, budget=small_budget).budget == small_budget
    assert set(strategies.STRATEGY_NAMES) >= {"pusher", "follower", "harasser"}
