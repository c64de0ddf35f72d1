"""Exhaustive values of two white queens against a lone black king."""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from infchess.core.errors import SearchBudgetExhaustedError
from infchess.models.board import Board
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.solver import SearchBudget, mate_search

logger = logging.getLogger(__name__)

CENSUS_RADIUS = 6
CENSUS_BOUND = 5

BK = Piece(Color.BLACK, Kind.KING)
WQ = Piece(Color.WHITE, Kind.QUEEN)


@dataclass
class CensusResult:
    radius: int
    placements: int = 0
    values: Counter[int] = field(default_factory=Counter)
    unresolved: list[tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=list)
    nodes: int = 0

    @property
    def max_value(self) -> int | None:
        return max(self.values) if self.values else None

    def summary_line(self) -> str:
        spread = ",".join(f"{value}:{count}" for value, count in sorted(self.values.items())) or "none"
        return (
            f"census radius={self.radius} placements={self.placements} max={self.max_value} "
            f"values={spread} unresolved={len(self.unresolved)} nodes={self.nodes}"
        )


def queen_placements(radius: int = CENSUS_RADIUS) -> Iterator[tuple[tuple[int, int], tuple[int, int], Position]]:
    """Valid white-to-move positions with the king on the origin and both queens within ``radius``."""
    squares = [
        (x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1) if (x, y) != (0, 0)
    ]
    for first, second in itertools.combinations(squares, 2):
        board = Board.build(2, {(0, 0): BK, first: WQ, second: WQ})
        position = Position.create(board, Color.WHITE)
        if movegen.validate(position):
            continue
        yield first, second, position


def two_queens_census(
    radius: int = CENSUS_RADIUS, budget: SearchBudget | None = None, *, limit: int | None = None
) -> CensusResult:
    """Mate length of every placement; placements with no mate within the budget are listed as unresolved."""
    budget = budget or SearchBudget(mate_bound=CENSUS_BOUND, horizon=2 * radius + 4)
    result = CensusResult(radius)
    for first, second, position in itertools.islice(queen_placements(radius), limit):
        result.placements += 1
        try:
            outcome = mate_search(position, budget)
        except SearchBudgetExhaustedError as exc:
            logger.warning("Budget ran out on queens %s %s", first, second)
            result.nodes += exc.nodes
            result.unresolved.append((first, second))
            continue
        result.nodes += outcome.nodes
        if outcome.found:
            result.values[outcome.moves] += 1  # type: ignore[index]
        else:
            result.unresolved.append((first, second))
        if result.placements % 500 == 0:
            logger.info("Census: %d placements, max so far %s", result.placements, result.max_value)
    return result


__all__ = ["CENSUS_RADIUS", "CENSUS_BOUND", "CensusResult", "queen_placements", "two_queens_census"]
