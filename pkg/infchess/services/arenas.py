"""Uniform views of chess positions and open games for certificate checking."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Any, Generic, Hashable, Protocol, TypeVar

from infchess.core.errors import CertificateFormatError
from infchess.models.moves import FamilyMove, Move, family_distance
from infchess.models.pieces import Color
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.games import OpenGame, state_value
from infchess.services.solver import SearchBudget, mate_search

S = TypeVar("S")
M = TypeVar("M")

_MOVE_TEXT = re.compile(r"^\((-?\d+(?:,-?\d+){1,2})\)->\((-?\d+(?:,-?\d+){1,2})\)$")
_FAMILY_TEXT = re.compile(r"^\((-?\d+(?:,-?\d+){1,2})\)/\((-?\d+(?:,-?\d+){1,2})\)$")


class Arena(Protocol[S, M]):
    name: str

    def to_move(self, state: S) -> Color: ...

    def is_white_win(self, state: S) -> bool: ...

    def resolve(self, state: S, move: Any) -> M | None:
        """The legal move matching ``move`` in ``state``, or ``None``."""

    def apply(self, state: S, move: M) -> S: ...

    def finite_moves(self, state: S) -> list[M]: ...

    def family_ids(self, state: S) -> dict[Hashable, int]:
        """Family id to smallest legal member distance."""

    def family_member(self, state: S, family: Hashable, distance: int) -> M | None: ...

    def leaf_value(self, state: S, claim: int) -> int | None: ...

    def move_text(self, move: M) -> str: ...

    def parse_move(self, text: str) -> Any: ...

    def family_text(self, family: Hashable) -> str: ...

    def parse_family(self, text: str) -> Hashable: ...


@dataclass(frozen=True)
class MoveRef:
    """A move named by its squares; mover and capture are read off the board."""

    from_sq: tuple[int, ...]
    to_sq: tuple[int, ...]


def _coords(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _coord_text(square: tuple[int, ...]) -> str:
    return "(" + ",".join(str(v) for v in square) + ")"


class ChessArena:
    name = "chess"

    def __init__(self, budget: SearchBudget) -> None:
        self.budget = budget
        self.horizon_relative = False
        self.leaves = 0
        self._count_lock = threading.Lock()

    def to_move(self, state: Position) -> Color:
        return state.to_move

    def is_white_win(self, state: Position) -> bool:
        return state.to_move is Color.BLACK and movegen.status(state).loser is Color.BLACK

    def resolve(self, state: Position, move: Move | MoveRef) -> Move | None:
        origin, target = tuple(move.from_sq), tuple(move.to_sq)
        for candidate in movegen.piece_moves(state, origin):
            if isinstance(candidate, FamilyMove):
                distance = family_distance(origin, candidate.direction, target)
                if distance is not None and distance >= candidate.min_distance:
                    found = candidate.at(distance)
                    break
            elif candidate.to_sq == target:
                found = candidate
                break
        else:
            return None
        if isinstance(move, Move) and move != found:
            return None
        return found

    def apply(self, state: Position, move: Move) -> Position:
        return movegen.apply(state, move, check=False)

    def finite_moves(self, state: Position) -> list[Move]:
        return list(movegen.legal_moves(state).moves)

    def family_ids(self, state: Position) -> dict[Hashable, int]:
        return {(f.from_sq, f.direction): f.min_distance for f in movegen.legal_moves(state).families}

    def family_member(self, state: Position, family: Hashable, distance: int) -> Move | None:
        minimum = self.family_ids(state).get(family)
        if minimum is None or distance < minimum:
            return None
        origin, direction = family  # type: ignore[misc]
        return FamilyMove(origin, direction, minimum, state.piece_at(origin)).at(distance)  # type: ignore[arg-type]

    def leaf_value(self, state: Position, claim: int) -> int | None:
        with self._count_lock:
            self.leaves += 1
        budget = self.budget.model_copy(update={"mate_bound": max(self.budget.mate_bound, claim)})
        result = mate_search(state, budget)
        self.horizon_relative = self.horizon_relative or result.horizon_relative
        return result.moves

    def move_text(self, move: Move | MoveRef) -> str:
        return f"{_coord_text(move.from_sq)}->{_coord_text(move.to_sq)}"

    def parse_move(self, text: str) -> MoveRef:
        match = _MOVE_TEXT.match(text)
        if not match:
            raise CertificateFormatError(f"bad move {text!r}")
        return MoveRef(_coords(match.group(1)), _coords(match.group(2)))

    def family_text(self, family: Hashable) -> str:
        origin, direction = family  # type: ignore[misc]
        return f"{_coord_text(origin)}/{_coord_text(direction)}"

    def parse_family(self, text: str) -> Hashable:
        match = _FAMILY_TEXT.match(text)
        if not match:
            raise CertificateFormatError(f"bad family {text!r}")
        return (_coords(match.group(1)), _coords(match.group(2)))


@dataclass(frozen=True)
class StateRef:
    """A game move named by the description of the state it reaches."""

    text: str


class GameArena(Generic[S]):
    name = "game"

    def __init__(self, game: OpenGame[S]) -> None:
        self.game = game
        self.leaves = 0
        self._count_lock = threading.Lock()
        self.horizon_relative = False

    def to_move(self, state: S) -> Color:
        return self.game.to_move(state)

    def is_white_win(self, state: S) -> bool:
        return self.game.is_terminal(state) and self.game.winner(state) is Color.WHITE

    def resolve(self, state: S, move: Any) -> S | None:
        for child in self.game.moves(state):
            if (isinstance(move, StateRef) and self.game.describe(child) == move.text) or child == move:
                return child
        return None

    def apply(self, state: S, move: S) -> S:
        return move

    def finite_moves(self, state: S) -> list[S]:
        return self.game.moves(state)

    def family_ids(self, state: S) -> dict[Hashable, int]:
        return {family.name: 1 for family in self.game.families(state)}

    def family_member(self, state: S, family: Hashable, distance: int) -> S | None:
        for candidate in self.game.families(state):
            if candidate.name == family and distance >= 1:
                return candidate.member(distance)
        return None

    def leaf_value(self, state: S, claim: int) -> int | None:
        with self._count_lock:
            self.leaves += 1
        value = state_value(self.game, state)
        if value is None or not value.is_finite:
            return None
        return int(value)

    def move_text(self, move: Any) -> str:
        return move.text if isinstance(move, StateRef) else self.game.describe(move)

    def parse_move(self, text: str) -> StateRef:
        return StateRef(text)

    def family_text(self, family: Hashable) -> str:
        return str(family)

    def parse_family(self, text: str) -> Hashable:
        return text


__all__ = ["Arena", "MoveRef", "StateRef", "ChessArena", "GameArena"]
