"""Exception hierarchy shared by every infchess module."""

from __future__ import annotations

from typing import Any


class InfChessError(RuntimeError):
    """Base error of the package."""


class OrdinalError(InfChessError):
    """Ordinal arithmetic or parsing failed."""


class OrdinalOverflowError(OrdinalError):
    """Exponent outside the supported range."""

    def __init__(self, message: str, *, exponent: int) -> None:
        super().__init__(message)
        self.exponent = exponent


class MalformedFormulaError(OrdinalError):
    """Family value formula violates its invariants."""


class BoardError(InfChessError):
    """Board construction failed."""


class RegionOverlapError(BoardError):
    """Two regions claim the same square."""

    def __init__(self, message: str, *, first: int, second: int, square: Any | None = None) -> None:
        super().__init__(message)
        self.first = first
        self.second = second
        self.square = square


class UnsupportedPositionError(BoardError):
    """The position cannot be handled with finite work (infinitely many mobile pieces)."""


class KnightIn3DError(BoardError):
    """Knights have no movement rule in three dimensions."""


class IllegalMoveError(InfChessError):
    """A move is not legal in the given position."""

    def __init__(self, message: str, *, move: Any | None = None, reason: str = "illegal") -> None:
        super().__init__(message)
        self.move = move
        self.reason = reason


class NotationError(InfChessError):
    """Position or tree text could not be parsed."""

    def __init__(self, message: str, *, line: int = 0, column: int = 0) -> None:
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line = line
        self.column = column


class MoveParseError(InfChessError):
    """An algebraic move token could not be resolved."""

    def __init__(self, message: str, *, token_index: int, token: str) -> None:
        super().__init__(f"token {token_index} ({token!r}): {message}")
        self.token_index = token_index
        self.token = token


class CertificateFormatError(NotationError):
    """Certificate text could not be parsed."""


class SearchBudgetExhaustedError(InfChessError):
    """Search stopped at the node limit."""

    def __init__(self, message: str, *, nodes: int) -> None:
        super().__init__(message)
        self.nodes = nodes


class NoValueError(InfChessError):
    """No finite value was found within the search budget."""


class TreeError(InfChessError):
    """Well-founded tree is malformed."""


class SampleMismatchError(TreeError):
    """A declared rank or value formula disagrees with a sample."""

    def __init__(self, message: str, *, sample: int, expected: Any, actual: Any) -> None:
        super().__init__(message)
        self.sample = sample
        self.expected = expected
        self.actual = actual


class StrategyError(InfChessError):
    """A strategy returned an illegal move or met a state it cannot handle."""

    def __init__(self, message: str, *, strategy: str, reason: str = "") -> None:
        super().__init__(message)
        self.strategy = strategy
        self.reason = reason


class LayoutError(InfChessError):
    """Generator inputs exceed the supported bounds or a layout does not match its tree."""


__all__ = [
    "InfChessError",
    "OrdinalError",
    "OrdinalOverflowError",
    "MalformedFormulaError",
    "BoardError",
    "RegionOverlapError",
    "UnsupportedPositionError",
    "KnightIn3DError",
    "IllegalMoveError",
    "NotationError",
    "MoveParseError",
    "CertificateFormatError",
    "SearchBudgetExhaustedError",
    "NoValueError",
    "TreeError",
    "SampleMismatchError",
    "StrategyError",
    "LayoutError",
]
