from collections import Counter

import pytest

from infchess.services.census import CensusResult, queen_placements, two_queens_census
from infchess.services.solver import SearchBudget


def test_adjacent_queens_always_check() -> None:
    assert list(queen_placements(1)) == []


def test_placements_avoid_checking_lines() -> None:
    placements = list(queen_placements(2))
    assert len(placements) == 28
    for first, second, _ in placements:
        for x, y in (first, second):
            assert {abs(x), abs(y)} == {1, 2}


def test_summary_line() -> None:
    result = CensusResult(3, placements=5, values=Counter({2: 3, 4: 1}), unresolved=[((1, 2), (2, 1))], nodes=90)
    assert result.max_value == 4
    assert result.summary_line() == "census radius=3 placements=5 max=4 values=2:3,4:1 unresolved=1 nodes=90"
    assert CensusResult(1).summary_line() == "census radius=1 placements=0 max=None values=none unresolved=0 nodes=0"


@pytest.mark.slow
def test_small_census_accounts_for_every_placement() -> None:
    result = two_queens_census(2, SearchBudget(mate_bound=4, horizon=10, node_limit=500_000), limit=4)
    assert result.placements == 4
    assert sum(result.values.values()) + len(result.unresolved) == 4
    assert result.nodes > 0
