"""Abstract open games, the counting-down and climbing games, and a symbolic value solver."""

from __future__ import annotations

import abc
import logging
from dataclasses import dataclass
from typing import Callable, Generic, Hashable, TypeVar

from infchess.core.errors import NoValueError, SampleMismatchError, SearchBudgetExhaustedError
from infchess.models.ordinal import (
    ZERO,
    Affine,
    FamilyValueFormula,
    Ordinal,
    eval_formula,
    succ,
    sup_family,
)
from infchess.models.pieces import Color
from infchess.services import trees
from infchess.services.trees import WFTree

logger = logging.getLogger(__name__)

S = TypeVar("S", bound=Hashable)

DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class GameFamily(Generic[S]):
    """An omega-indexed family of moves; ``formula`` is the value of the state reached by member ``n``."""

    name: str
    member: Callable[[int], S]
    formula: FamilyValueFormula | None = None
    samples: tuple[int, ...] = (1, 2, 3)


class OpenGame(abc.ABC, Generic[S]):
    """A game in which white's wins happen at a finite stage."""

    initial: S

    @abc.abstractmethod
    def to_move(self, state: S) -> Color: ...

    @abc.abstractmethod
    def moves(self, state: S) -> list[S]:
        """Finitely many successor states."""

    def families(self, state: S) -> list[GameFamily[S]]:
        return []

    def is_terminal(self, state: S) -> bool:
        return not self.moves(state) and not self.families(state)

    def winner(self, state: S) -> Color | None:
        """The side to move loses when stuck."""
        if not self.is_terminal(state):
            return None
        return self.to_move(state).opponent

    def describe(self, state: S) -> str:
        return str(state)


@dataclass(frozen=True)
class CountingState:
    value: Ordinal
    side: Color

    def __str__(self) -> str:
        marker = "black" if self.side is Color.BLACK else "white-ack"
        return f"{marker}:{self.value}"


class CountingGame(OpenGame[CountingState]):
    """Black names a strictly smaller ordinal each turn; white acknowledges."""

    def __init__(self, alpha: Ordinal) -> None:
        self.alpha = alpha
        self.initial = CountingState(alpha, Color.BLACK)

    def to_move(self, state: CountingState) -> Color:
        return state.side

    def moves(self, state: CountingState) -> list[CountingState]:
        if state.side is Color.WHITE:
            return [CountingState(state.value, Color.BLACK)]
        return [CountingState(drop, Color.WHITE) for drop in finite_drops(state.value)]

    def families(self, state: CountingState) -> list[GameFamily[CountingState]]:
        # a finite last term is covered by the finite drops
        if state.side is Color.WHITE or not state.value or state.value.terms[-1][0] == 0:
            return []
        base, exponent, coefficient = _split_last(state.value)
        prefix = base + Ordinal(((exponent, coefficient - 1),)) if coefficient > 1 else base
        member_formula = FamilyValueFormula(((exponent - 1, Affine(1, 0)),)).prefixed(prefix)

        def member(n: int) -> CountingState:
            return CountingState(eval_formula(member_formula, n), Color.WHITE)

        return [GameFamily("cnf", member, member_formula.successor(), (1, 2))]


def _split_last(value: Ordinal) -> tuple[Ordinal, int, int]:
    *head, (exponent, coefficient) = value.terms
    return Ordinal(tuple(head)), exponent, coefficient


def finite_drops(value: Ordinal) -> list[Ordinal]:
    """Finitely many smaller ordinals black may name outside the canonical family."""
    if not value:
        return []
    base, exponent, coefficient = _split_last(value)
    if exponent == 0:
        return [base + m for m in range(coefficient - 1, -1, -1)]
    drops = [ZERO]
    below = base + Ordinal(((exponent, coefficient - 1),)) if coefficient > 1 else base
    if below:
        drops.insert(0, below)
    return drops


def counting_game(alpha: Ordinal) -> CountingGame:
    return CountingGame(alpha)


@dataclass(frozen=True, eq=False)
class ClimbState:
    tree: WFTree
    side: Color

    def __str__(self) -> str:
        return f"{self.side.value}@{type(self.tree).__name__.lower()}"


class ClimbingGame(OpenGame[ClimbState]):
    """Black climbs the tree one edge per turn; white only acknowledges; black loses at a leaf."""

    def __init__(self, tree: WFTree) -> None:
        self.tree = tree
        self.initial = ClimbState(tree, Color.BLACK)

    def to_move(self, state: ClimbState) -> Color:
        return state.side

    def moves(self, state: ClimbState) -> list[ClimbState]:
        if state.side is Color.WHITE:
            return [ClimbState(state.tree, Color.BLACK)]
        if isinstance(state.tree, trees.Node):
            return [ClimbState(child, Color.WHITE) for child in state.tree.children]
        return []

    def families(self, state: ClimbState) -> list[GameFamily[ClimbState]]:
        node = state.tree
        if state.side is Color.WHITE or not isinstance(node, trees.OmegaNode):
            return []
        return [
            GameFamily(
                "branch",
                lambda n, node=node: ClimbState(node.child(n), Color.WHITE),
                node.formula.successor(),
                node.samples,
            )
        ]


def climbing_game(tree: WFTree) -> ClimbingGame:
    return ClimbingGame(tree)


class _ValueSolver(Generic[S]):
    def __init__(self, game: OpenGame[S], node_limit: int) -> None:
        self.game = game
        self.node_limit = node_limit
        self.nodes = 0
        self._memo: dict[S, Ordinal | None] = {}

    def value(self, state: S) -> Ordinal | None:
        if state in self._memo:
            return self._memo[state]
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchBudgetExhaustedError(f"game value search exceeded {self.node_limit} nodes", nodes=self.nodes)
        result = self._compute(state)
        self._memo[state] = result
        return result

    def _family_value(self, family: GameFamily[S]) -> Ordinal | None:
        if family.formula is None:
            raise NoValueError(f"family {family.name!r} carries no value formula")
        for n in family.samples:
            expected = eval_formula(family.formula, n)
            actual = self.value(family.member(n))
            if actual != expected:
                raise SampleMismatchError(
                    f"family {family.name!r} member {n}: value {actual}, formula says {expected}",
                    sample=n,
                    expected=expected,
                    actual=actual,
                )
        return sup_family(family.formula)

    def _compute(self, state: S) -> Ordinal | None:
        game = self.game
        if game.is_terminal(state):
            return ZERO if game.winner(state) is Color.WHITE else None
        finite = [self.value(child) for child in game.moves(state)]
        if game.to_move(state) is Color.BLACK:
            limits = [self._family_value(family) for family in game.families(state)]
            options = finite + limits
            if any(option is None for option in options):
                return None
            return max(options)  # type: ignore[type-var]
        candidates = [value for value in finite if value is not None]
        for family in game.families(state):
            if family.formula is not None:
                candidates.append(eval_formula(family.formula, 1))
        if not candidates:
            return None
        return succ(min(candidates))


def generic_value(game: OpenGame[S], *, node_limit: int = DEFAULT_NODE_LIMIT) -> Ordinal:
    """Value of the initial state by the open-game recursion; raises when white has no win."""
    solver = _ValueSolver(game, node_limit)
    result = solver.value(game.initial)
    logger.debug("Game value %s after %s states", result, solver.nodes)
    if result is None:
        raise NoValueError("white has no winning strategy from the initial state")
    return result


def state_value(game: OpenGame[S], state: S, *, node_limit: int = DEFAULT_NODE_LIMIT) -> Ordinal | None:
    return _ValueSolver(game, node_limit).value(state)


__all__ = [
    "GameFamily",
    "OpenGame",
    "CountingState",
    "CountingGame",
    "ClimbState",
    "ClimbingGame",
    "finite_drops",
    "counting_game",
    "climbing_game",
    "generic_value",
    "state_value",
]
