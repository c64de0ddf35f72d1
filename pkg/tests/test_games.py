import random

import pytest

from infchess.core.errors import NoValueError, SearchBudgetExhaustedError
from infchess.models.ordinal import OMEGA, Ordinal, parse_ordinal
from infchess.models.pieces import Color
from infchess.services import trees
from infchess.services.games import (
    CountingState,
    OpenGame,
    climbing_game,
    counting_game,
    finite_drops,
    generic_value,
    state_value,
)


class _Stuck(OpenGame[int]):
    initial = 0

    def to_move(self, state: int) -> Color:
        return Color.WHITE

    def moves(self, state: int) -> list[int]:
        return []


@pytest.mark.parametrize("text", ["0", "3", "w", "w + 1", "w*2", "w^2", "w^2 + w"])
def test_counting_game_value_is_its_start(text: str) -> None:
    alpha = parse_ordinal(text)
    assert generic_value(counting_game(alpha)) == alpha


def test_finite_drops() -> None:
    assert finite_drops(Ordinal.of(3)) == [Ordinal.of(2), Ordinal.of(1), Ordinal.of(0)]
    assert finite_drops(parse_ordinal("w*2")) == [OMEGA, Ordinal.of(0)]
    assert finite_drops(Ordinal.of(0)) == []


def test_counting_family_members() -> None:
    game = counting_game(parse_ordinal("w^2"))
    (family,) = game.families(game.initial)
    assert family.member(3) == CountingState(parse_ordinal("w*3"), Color.WHITE)
    assert str(family.formula) == "w*n + 1"


@pytest.mark.parametrize(
    "build", [trees.fig_left, trees.fig_right, lambda: trees.omega_times(2), lambda: trees.comb(3)]
)
def test_climbing_value_equals_rank(build) -> None:
    tree = build()
    assert generic_value(climbing_game(tree)) == trees.rank(tree)


def test_white_without_a_win() -> None:
    with pytest.raises(NoValueError):
        generic_value(_Stuck())
    assert state_value(_Stuck(), 0) is None


def test_value_search_respects_its_node_limit() -> None:
    with pytest.raises(SearchBudgetExhaustedError):
        generic_value(counting_game(Ordinal.of(3)), node_limit=2)


def _random_tree(rng: random.Random, depth: int) -> trees.WFTree:
    if depth == 0 or rng.random() < 0.3:
        return trees.Leaf()
    return trees.Node(tuple(_random_tree(rng, depth - 1) for _ in range(rng.randint(1, 3))))


def _height(tree: trees.WFTree) -> int:
    if isinstance(tree, trees.Leaf):
        return 0
    return 1 + max(_height(child) for child in tree.children)


def test_climbing_value_of_random_finite_trees() -> None:
    rng = random.Random(2024)
    for _ in range(200):
        tree = _random_tree(rng, depth=6)
        height = Ordinal.of(_height(tree))
        assert trees.rank(tree) == height
        assert generic_value(climbing_game(tree)) == height
