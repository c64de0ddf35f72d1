"""Built-in strategies for the generated positions.

A strategy sees the current position and the moves played so far and returns
its next move. The tree strategies navigate by the layout a generator returned
with the position; when play leaves the layout they raise ``StrategyError``
instead of guessing.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from typing import Union

from infchess.core.errors import NoValueError, StrategyError
from infchess.models.board import Square, shift
from infchess.models.moves import FamilyMove, Move
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.embeddings.certify import DOOR_ROOK
from infchess.services.embeddings.trees2d import ChannelLayout
from infchess.services.embeddings.trees3d import SiteKind, SpaceLayout
from infchess.services.solver import SearchBudget, value_reducing_move

logger = logging.getLogger(__name__)

Layout = Union[ChannelLayout, SpaceLayout]

# family moves of random players stay this close to their first free square
RANDOM_REACH = 4
DOOR_PAWN_FILE = 5
DOOR_LOWEST_HOLE = 4


class Strategy:
    """Deterministic player for one side."""

    name = "strategy"

    def __init__(self, side: Color) -> None:
        self.side = side

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        raise NotImplementedError

    def fail(self, reason: str, detail: str) -> StrategyError:
        return StrategyError(f"{self.name}: {detail}", strategy=self.name, reason=reason)

    def __str__(self) -> str:
        return f"{self.name}({self.side.value})"


def make_move(position: Position, from_sq: Square, to_sq: Square) -> Move | None:
    """The move between two squares if the side to move can legally play it."""
    mover = position.piece_at(from_sq)
    if mover is None or mover.color is not position.to_move:
        return None
    captured = position.piece_at(to_sq)
    if captured is not None and captured.color is mover.color:
        return None
    move = Move(tuple(from_sq), tuple(to_sq), mover, captured)
    return move if movegen.is_legal(position, move) else None


def first_legal(position: Position) -> Move | None:
    """Smallest legal move in canonical order; families count at their first distance."""
    for candidate in movegen.canonical_move_order(movegen.iter_legal_moves(position)):
        if isinstance(candidate, FamilyMove):
            return candidate.at(candidate.min_distance)
        return candidate
    return None


def _depth(layout: Layout, square: Square) -> int | None:
    if isinstance(layout, ChannelLayout):
        address = layout.address_at(square)
        return None if address is None else len(address)
    site = layout.site_at(square)
    return None if site is None else len(site.path)


class Pusher(Strategy):
    """Forces the climbing king up its channels.

    In the checking styles the pawn under the square the king just left moves
    into it; when that pawn is still one rank short it is pushed quietly first.
    In the zugzwang style the pusher's king follows two squares behind and the
    trap pawn mates at a dead-end.
    """

    name = "pusher"

    def __init__(self, layout: Layout) -> None:
        super().__init__(layout.pusher_color)
        self.layout = layout

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        king = position.king(self.layout.climber)
        if king is None:
            raise self.fail("off-fixture", f"no {self.layout.climber.value} king to push")
        if getattr(self.layout, "follower", None) is not None:
            return self._follow(position, king)
        previous = self.layout.predecessor(king)
        if previous is None:
            raise self.fail("off-fixture", f"king on {king} has left the channels")
        push = self.layout.push_square(previous)
        pawn = Piece(self.side, Kind.PAWN)
        for source, target in ((push, previous), (self.layout.push_square(push), push)):
            if position.piece_at(source) == pawn:
                move = make_move(position, source, target)
                if move is not None:
                    return move
        raise self.fail("off-fixture", f"no pawn can refill {previous}")

    def _follow(self, position: Position, king: Square) -> Move:
        layout = self.layout
        assert isinstance(layout, ChannelLayout)
        trap = layout.trap_at(king)
        if trap is not None:
            cell, pusher = trap
            move = make_move(position, pusher, cell)
            if move is None:
                raise self.fail("off-fixture", f"trap pawn on {pusher} cannot close {cell}")
            return move
        behind = layout.predecessor(king)
        target = None if behind is None else layout.predecessor(behind)
        own = position.king(self.side)
        if target is None or own is None:
            raise self.fail("off-fixture", f"nowhere to follow the king on {king}")
        move = make_move(position, own, target)
        if move is None:
            raise self.fail("off-fixture", f"own king cannot step from {own} to {target}")
        return move


class BranchFollower(Strategy):
    """The climbing king takes child ``path[depth]`` (cycled) at every branching point.

    At an omega entry in space the bishop goes just far enough to keep the
    chosen exit open.
    """

    name = "follower"

    def __init__(self, layout: Layout, path: Sequence[int] = (0,)) -> None:
        super().__init__(layout.climber)
        if not path or any(label < 0 for label in path):
            raise StrategyError("a branch path needs non-negative labels", strategy=self.name, reason="bad-path")
        self.layout = layout
        self.path = tuple(path)

    def label(self, depth: int) -> int:
        return self.path[depth % len(self.path)]

    def _label_at(self, square: Square) -> int:
        """The child to take at ``square``; in space, the nearest laid-out exit at or below the wanted one."""
        wanted = self.label(_depth(self.layout, square) or 0)
        if isinstance(self.layout, SpaceLayout):
            site = self.layout.site_at(square)
            if site is not None and site.junctions:
                labels = [label for label, _ in site.junctions]
                return max((known for known in labels if known <= wanted), default=labels[0])
        return wanted

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        king = position.king(self.side)
        if king is None:
            raise self.fail("off-fixture", "the climbing king is gone")
        if isinstance(self.layout, SpaceLayout) and not movegen.in_check(position, self.side):
            move = self._bishop(position, king)
            if move is not None:
                return move
        options = self.layout.successors(king)
        if len(options) > 1:
            preferred = self.layout.branch(king, self._label_at(king))
            if preferred is not None:
                options = (preferred, *(square for square in options if square != preferred))
        for target in options:
            move = make_move(position, king, target)
            if move is not None:
                return move
        raise self.fail("off-fixture", f"no channel step from {king}")

    def _bishop(self, position: Position, king: Square) -> Move | None:
        assert isinstance(self.layout, SpaceLayout)
        site = self.layout.site_at(king)
        if site is None or site.kind is not SiteKind.OMEGA or site.start != tuple(king):
            return None
        bishop = site.bishop
        if bishop is None or position.piece_at(bishop) != Piece(self.side, Kind.BISHOP):
            return None
        label = self._label_at(king)
        target = shift(bishop, site.stair.step, site.bishop_distance(label))
        return make_move(position, bishop, target)


class Harasser(Strategy):
    """Black in the door-and-free-rook positions.

    The door rook climbs first. Then, for every ``k`` of the schedule, the free
    rook retreats along its rank and checks the white king ``k`` times on the
    file it retreated to. With the schedule used up black only makes waiting
    moves.
    """

    name = "harasser"

    def __init__(self, schedule: Sequence[int], climb: int | None = None) -> None:
        super().__init__(Color.BLACK)
        if any(k < 1 for k in schedule):
            raise StrategyError("harassment episodes need at least one check", strategy=self.name, reason="bad-schedule")
        self.schedule = tuple(schedule)
        self.climb = climb if climb is not None else max(1, len(self.schedule) - 1)
        plan: list[tuple[str, int]] = [("climb", self.climb)]
        for k in self.schedule:
            plan.append(("retreat", k))
            plan.extend(("check", j) for j in range(k))
        self.plan = tuple(plan)

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        index = sum(1 for move in history if move.mover.color is Color.BLACK)
        if index >= len(self.plan):
            return self._wait(position)
        action, k = self.plan[index]
        if action == "climb":
            move = make_move(position, DOOR_ROOK, shift(DOOR_ROOK, (0, 1), k))
        else:
            move = self._rook_move(position, action, k)
        if move is None:
            raise self.fail("off-fixture", f"cannot {action} at black move {index + 1}")
        return move

    def _free_rook(self, position: Position) -> Square | None:
        rooks = [sq for sq in position.board.find(Piece(Color.BLACK, Kind.ROOK)) if sq[0] != DOOR_ROOK[0]]
        return max(rooks) if rooks else None

    def _rook_move(self, position: Position, action: str, k: int) -> Move | None:
        rook = self._free_rook(position)
        king = position.king(Color.WHITE)
        if rook is None or king is None:
            return None
        if action == "retreat":
            return make_move(position, rook, (king[0] + k + 1, rook[1]))
        return make_move(position, rook, (rook[0], king[1]))

    def _wait(self, position: Position) -> Move:
        legal = movegen.canonical_move_order(movegen.iter_legal_moves(position))
        for candidate in legal:
            if isinstance(candidate, Move) and candidate.mover.kind is Kind.PAWN:
                return candidate
        move = first_legal(position)
        if move is None:
            raise self.fail("no-move", "black has no legal move")
        return move


class DoorOpener(Strategy):
    """White in the door positions: flee checks diagonally, take the climbed rook, refill the door file from below."""

    name = "door"

    def __init__(self) -> None:
        super().__init__(Color.WHITE)

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        king = position.king(Color.WHITE)
        if king is not None and movegen.in_check(position, Color.WHITE):
            move = make_move(position, king, (king[0] + 1, king[1] + 1))
            if move is not None:
                return move
            for candidate in movegen.canonical_move_order(movegen.piece_moves(position, king)):
                if isinstance(candidate, Move):
                    return candidate
        move = self._capture(position) or self._refill(position) or first_legal(position)
        if move is None:
            raise self.fail("no-move", "white has no legal move")
        return move

    def _capture(self, position: Position) -> Move | None:
        for rook in position.board.find(Piece(Color.BLACK, Kind.ROOK)):
            if rook[0] == DOOR_ROOK[0] and rook[1] > DOOR_ROOK[1]:
                move = make_move(position, (DOOR_PAWN_FILE, rook[1] - 1), rook)
                if move is not None:
                    return move
        return None

    def _refill(self, position: Position) -> Move | None:
        holes = [
            sq
            for sq, piece in position.board.overrides
            if piece is None and sq[0] == DOOR_PAWN_FILE and sq[1] >= DOOR_LOWEST_HOLE
        ]
        for hole in sorted(holes, reverse=True):
            below = (hole[0], hole[1] - 1)
            piece = position.piece_at(below)
            if piece is not None and piece.color is Color.WHITE and piece.kind is not Kind.KING:
                move = make_move(position, below, hole)
                if move is not None:
                    return move
        return None


class ValueReducingStrategy(Strategy):
    """White moves to a child of least value, first in canonical order on ties."""

    name = "value-reducing"

    def __init__(self, budget: SearchBudget | None = None) -> None:
        super().__init__(Color.WHITE)
        self.budget = budget or SearchBudget.from_settings()

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        try:
            return value_reducing_move(position, self.budget)
        except NoValueError as exc:
            raise self.fail("no-value", str(exc)) from exc


class RandomStrategy(Strategy):
    """Uniform over legal moves; the choice depends only on the seed and the ply."""

    name = "random"

    def __init__(self, side: Color, seed: int = 0) -> None:
        super().__init__(side)
        self.seed = seed

    def __str__(self) -> str:
        return f"random[{self.seed}]({self.side.value})"

    def choose(self, position: Position, history: Sequence[Move]) -> Move:
        rng = random.Random(self.seed * 1_000_003 + len(history))
        legal = movegen.legal_moves(position)
        total = len(legal.moves) + len(legal.families)
        if not total:
            raise self.fail("no-move", f"{self.side.value} has no legal move")
        pick = rng.randrange(total)
        if pick < len(legal.moves):
            return legal.moves[pick]
        family = legal.families[pick - len(legal.moves)]
        return family.at(family.min_distance + rng.randrange(RANDOM_REACH))


def black_suite(layout: Layout, size: int = 20) -> list[Strategy]:
    """Followers over short branch patterns, topped up with seeded random players."""
    patterns: list[tuple[int, ...]] = [(0,), (1,), (0, 1), (1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 0)]
    if isinstance(layout, SpaceLayout):
        patterns = [(label,) for label in range(1, 4)] + [(0,), (0, 1), (1, 0)]
    suite: list[Strategy] = [BranchFollower(layout, path) for path in patterns[:size]]
    seed = 0
    while len(suite) < size:
        suite.append(RandomStrategy(layout.climber, seed))
        seed += 1
    return suite


def white_pusher(layout: Layout) -> Pusher:
    if layout.pusher_color is not Color.WHITE:
        raise StrategyError("this layout is pushed by black", strategy=Pusher.name, reason="wrong-side")
    return Pusher(layout)


def black_branch_follower(layout: Layout, path: Sequence[int] = (0,)) -> BranchFollower:
    return BranchFollower(layout, path)


def black_harasser(schedule: Sequence[int], climb: int | None = None) -> Harasser:
    return Harasser(schedule, climb)


STRATEGY_NAMES = ("pusher", "follower", "harasser", "door", "value-reducing", "random")


def make_strategy(
    name: str,
    side: Color,
    *,
    layout: Layout | None = None,
    path: Sequence[int] = (0,),
    schedule: Sequence[int] = (1,),
    seed: int = 0,
    budget: SearchBudget | None = None,
) -> Strategy:
    """Strategy by its command-line name; tree strategies need the layout of the position."""
    if name in ("pusher", "follower"):
        if layout is None:
            raise StrategyError(f"{name} needs a generated tree position", strategy=name, reason="no-layout")
        strategy: Strategy = Pusher(layout) if name == "pusher" else BranchFollower(layout, path)
    elif name == "harasser":
        strategy = Harasser(schedule)
    elif name == "door":
        strategy = DoorOpener()
    elif name == "value-reducing":
        strategy = ValueReducingStrategy(budget)
    elif name == "random":
        strategy = RandomStrategy(side, seed)
    else:
        raise StrategyError(f"unknown strategy {name!r}", strategy=name, reason="unknown")
    if strategy.side is not side:
        raise StrategyError(f"{name} plays {strategy.side.value}, not {side.value}", strategy=name, reason="wrong-side")
    return strategy


__all__ = [
    "Strategy",
    "Pusher",
    "BranchFollower",
    "Harasser",
    "DoorOpener",
    "ValueReducingStrategy",
    "RandomStrategy",
    "make_move",
    "first_legal",
    "black_suite",
    "white_pusher",
    "black_branch_follower",
    "black_harasser",
    "make_strategy",
    "STRATEGY_NAMES",
]
