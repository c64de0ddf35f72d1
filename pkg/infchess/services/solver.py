"""Bounded exact mate search and finite game values.

``wins(p, k)`` asks whether white can force checkmate within ``k`` white moves.
White nodes are OR nodes, black nodes AND nodes. Slider families are
instantiated at distances up to the horizon; a truncated family at a black node
makes the answer horizon-relative.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from infchess.core.config import Settings, get_settings
from infchess.core.errors import NoValueError, SearchBudgetExhaustedError
from infchess.models.board import chebyshev
from infchess.models.moves import Move
from infchess.models.pieces import Color, Kind
from infchess.models.position import Position
from infchess.services import movegen

logger = logging.getLogger(__name__)

# White material that cannot mate a lone king unless its own king stands within two squares.
_KING_CONTACT_MATERIAL = (
    frozenset({Kind.QUEEN}),
    frozenset({Kind.ROOK}),
    frozenset({Kind.QUEEN, Kind.ROOK}),
)


class SearchBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    mate_bound: int = Field(default=6, ge=1)
    horizon: int = Field(default=40, ge=1)
    node_limit: int = Field(default=10_000_000, ge=1)

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: int | None) -> SearchBudget:
        """Budget from settings; keyword overrides that are not ``None`` win."""
        settings = settings or get_settings()
        values = {"mate_bound": settings.mate_in, "horizon": settings.horizon, "node_limit": settings.node_limit}
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


class Outcome(str, Enum):
    WHITE_WINS = "WhiteWinsIn"
    NO_MATE = "NoMateWithinBudget"


@dataclass(frozen=True)
class MateResult:
    outcome: Outcome
    moves: int | None
    nodes: int
    horizon_relative: bool = False

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.WHITE_WINS

    def __str__(self) -> str:
        if self.found:
            return f"{self.outcome.value} {self.moves}"
        return self.outcome.value


class MateSearch:
    """One search context: the node counter and the transposition table.

    The table maps a position key to ``(largest k known lost, smallest k known won)``;
    ``wins`` is monotone in ``k`` so both bounds stay valid across iterations.
    """

    def __init__(self, budget: SearchBudget) -> None:
        self.budget = budget
        self.nodes = 0
        self.horizon_relative = False
        self._table: dict[tuple, tuple[int, int | None]] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            logger.warning("Search stopped after %s nodes", self.nodes)
            raise SearchBudgetExhaustedError(
                f"node limit {self.budget.node_limit} exhausted", nodes=self.nodes
            )

    def _expand(self, position: Position) -> list[Move]:
        listed = movegen.legal_moves(position)
        if listed.families and position.to_move is Color.BLACK:
            self.horizon_relative = True
        return listed.instantiate(self.budget.horizon)

    def wins(self, position: Position, k: int) -> bool:
        key = position.key
        lost_at, won_at = self._table.get(key, (-1, None))
        if won_at is not None and k >= won_at:
            return True
        if k <= lost_at:
            return False
        self._tick()
        if position.to_move is Color.WHITE:
            result = self._white(position, k)
        else:
            result = self._black(position, k)
        lost_at, won_at = self._table.get(key, (-1, None))
        if result:
            self._table[key] = (lost_at, k if won_at is None else min(won_at, k))
        else:
            self._table[key] = (max(lost_at, k), won_at)
        return result

    def _white(self, position: Position, k: int) -> bool:
        if k == 0 or _king_too_far(position, k):
            return False
        children = []
        for move in self._expand(position):
            child = movegen.apply(position, move, check=False)
            checking = movegen.in_check(child, Color.BLACK) if child.king(Color.BLACK) else False
            if k == 1 and not checking:
                continue
            children.append((0 if checking else 1 if move.captured else 2, len(children), child))
        children.sort(key=lambda item: (item[0], item[1]))
        return any(self.wins(child, k - 1) for _, _, child in children)

    def _black(self, position: Position, k: int) -> bool:
        moves = self._expand(position)
        if not moves:
            return movegen.status(position).loser is Color.BLACK
        if k == 0:
            return False
        children = [movegen.apply(position, move, check=False) for move in moves]
        white_king = position.king(Color.WHITE)
        if white_king is not None:
            children.sort(key=lambda child: -chebyshev(child.king(Color.BLACK) or white_king, white_king))
        return all(self.wins(child, k) for child in children)


def _king_too_far(position: Position, k: int) -> bool:
    """Lone black king against a king with at most a queen and a rook: mate needs king contact."""
    if position.board.regions:
        return False
    counts = position.counts
    if any(color is Color.BLACK and kind is not Kind.KING for color, kind in counts):
        return False
    helpers = {}
    for (color, kind), value in counts.items():
        if color is Color.WHITE and kind is not Kind.KING:
            helpers[kind] = value
    if any(value != 1 for value in helpers.values()) or frozenset(helpers) not in _KING_CONTACT_MATERIAL:
        return False
    white_king, black_king = position.king(Color.WHITE), position.king(Color.BLACK)
    if white_king is None or black_king is None:
        return False
    # k white moves and k-1 black moves can close the distance by at most 2k-1.
    return 2 * k - 1 < chebyshev(white_king, black_king) - 2


def mate_search(position: Position, budget: SearchBudget) -> MateResult:
    """Iterative deepening; the first ``k`` that wins is the exact mate length."""
    search = MateSearch(budget)
    start = 0 if position.to_move is Color.BLACK else 1
    for k in range(start, budget.mate_bound + 1):
        if search.wins(position, k):
            logger.debug("Mate in %s found after %s nodes", k, search.nodes)
            return MateResult(Outcome.WHITE_WINS, k, search.nodes, search.horizon_relative)
        logger.debug("No mate in %s (%s nodes so far)", k, search.nodes)
    return MateResult(Outcome.NO_MATE, None, search.nodes, search.horizon_relative)


def value_finite(position: Position, budget: SearchBudget) -> int | None:
    result = mate_search(position, budget)
    return result.moves if result.found else None


def value_reducing_move(position: Position, budget: SearchBudget) -> Move:
    """First move in canonical order that keeps the value minimal."""
    if position.to_move is not Color.WHITE:
        raise NoValueError("the value-reducing strategy is defined for white to move")
    search = MateSearch(budget)
    value = None
    for k in range(1, budget.mate_bound + 1):
        if search.wins(position, k):
            value = k
            break
    if value is None:
        raise NoValueError(f"no mate within {budget.mate_bound} moves")
    for move in movegen.legal_moves(position).instantiate(budget.horizon):
        if search.wins(movegen.apply(position, move, check=False), value - 1):
            return move
    raise NoValueError("no value-reducing move found within the horizon")


__all__ = [
    "SearchBudget",
    "Outcome",
    "MateResult",
    "MateSearch",
    "mate_search",
    "value_finite",
    "value_reducing_move",
]
