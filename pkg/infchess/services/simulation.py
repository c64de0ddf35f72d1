"""Playing strategies against each other.

``simulate`` is sequential and deterministic; ``strategy_tournament`` runs the
pairings on a thread pool and only gathers their results.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from infchess.core.config import get_settings
from infchess.core.errors import StrategyError
from infchess.models.moves import Move
from infchess.models.pieces import Color
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.embeddings.strategies import Strategy
from infchess.services.movegen import Status

logger = logging.getLogger(__name__)

DEFAULT_MAX_PLIES = 10_000


class OutcomeKind(str, Enum):
    WHITE_MATE = "WhiteMate"
    BLACK_MATE = "BlackMate"
    STALEMATE = "Stalemate"
    CUTOFF = "Cutoff"


@dataclass(frozen=True)
class GameOutcome:
    """How a game ended; ``moves`` counts the winner's moves."""

    kind: OutcomeKind
    moves: int | None = None

    @property
    def winner(self) -> Color | None:
        if self.kind is OutcomeKind.WHITE_MATE:
            return Color.WHITE
        if self.kind is OutcomeKind.BLACK_MATE:
            return Color.BLACK
        return None

    def __str__(self) -> str:
        return self.kind.value if self.moves is None else f"{self.kind.value}({self.moves})"


@dataclass
class Transcript:
    root: Position
    white: str
    black: str
    moves: list[Move] = field(default_factory=list)
    checks: list[bool] = field(default_factory=list)
    outcome: GameOutcome | None = None
    final: Position | None = None

    @property
    def plies(self) -> int:
        return len(self.moves)

    def moves_by(self, color: Color) -> list[tuple[Move, bool]]:
        return [(move, check) for move, check in zip(self.moves, self.checks) if move.mover.color is color]

    def summary_line(self) -> str:
        return f"simulate outcome={self.outcome} plies={self.plies} white={self.white} black={self.black}"


def simulate(position: Position, white: Strategy, black: Strategy, max_plies: int = DEFAULT_MAX_PLIES) -> Transcript:
    """Alternates the two strategies from ``position`` until mate, stalemate or ``max_plies``."""
    if white.side is not Color.WHITE or black.side is not Color.BLACK:
        raise StrategyError(
            f"strategies play {white.side.value} and {black.side.value}", strategy=f"{white}/{black}", reason="wrong-side"
        )
    transcript = Transcript(position, str(white), str(black))
    current = position
    while True:
        state = movegen.status(current)
        if state.kind is Status.CHECKMATE:
            winner = Color.BLACK if state.loser is Color.WHITE else Color.WHITE
            kind = OutcomeKind.WHITE_MATE if winner is Color.WHITE else OutcomeKind.BLACK_MATE
            transcript.outcome = GameOutcome(kind, len(transcript.moves_by(winner)))
            break
        if state.kind is Status.STALEMATE:
            transcript.outcome = GameOutcome(OutcomeKind.STALEMATE)
            break
        if transcript.plies >= max_plies:
            transcript.outcome = GameOutcome(OutcomeKind.CUTOFF)
            break
        player = white if current.to_move is Color.WHITE else black
        move = player.choose(current, transcript.moves)
        if not isinstance(move, Move) or not movegen.is_legal(current, move):
            raise StrategyError(
                f"{player} chose the illegal move {move} at ply {transcript.plies + 1}",
                strategy=str(player),
                reason="illegal-move",
            )
        current = movegen.apply(current, move, check=False)
        transcript.moves.append(move)
        transcript.checks.append(movegen.in_check(current, current.to_move))
    transcript.final = current
    logger.debug("Game %s vs %s ended %s after %d plies", white, black, transcript.outcome, transcript.plies)
    return transcript


def check_runs(transcript: Transcript, color: Color) -> list[int]:
    """Lengths of the maximal runs of consecutive checking moves by ``color``."""
    runs: list[int] = []
    current = 0
    for move, check in transcript.moves_by(color):
        if check:
            current += 1
            continue
        if current:
            runs.append(current)
        current = 0
    if current:
        runs.append(current)
    return runs


@dataclass
class TournamentResult:
    whites: list[str]
    blacks: list[str]
    outcomes: list[list[GameOutcome]]

    def wins(self, color: Color) -> int:
        return sum(outcome.winner is color for row in self.outcomes for outcome in row)

    @property
    def games(self) -> int:
        return sum(len(row) for row in self.outcomes)

    def summary_line(self) -> str:
        return (
            f"tournament games={self.games} white_wins={self.wins(Color.WHITE)} "
            f"black_wins={self.wins(Color.BLACK)} draws={self.games - self.wins(Color.WHITE) - self.wins(Color.BLACK)}"
        )


def strategy_tournament(
    position: Position,
    whites: Sequence[Strategy],
    blacks: Sequence[Strategy],
    max_plies: int = DEFAULT_MAX_PLIES,
    *,
    workers: int | None = None,
) -> TournamentResult:
    """Every white strategy against every black one; errors from a pairing propagate."""
    workers = workers or get_settings().workers
    pairs = [(w, b) for w in whites for b in blacks]
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            transcripts = list(pool.map(lambda pair: simulate(position, pair[0], pair[1], max_plies), pairs))
    else:
        transcripts = [simulate(position, w, b, max_plies) for w, b in pairs]
    outcomes = [
        [transcripts[i * len(blacks) + j].outcome for j in range(len(blacks))]  # type: ignore[misc]
        for i in range(len(whites))
    ]
    logger.info("Tournament of %d games finished", len(pairs))
    return TournamentResult([str(w) for w in whites], [str(b) for b in blacks], outcomes)


__all__ = [
    "DEFAULT_MAX_PLIES",
    "OutcomeKind",
    "GameOutcome",
    "Transcript",
    "simulate",
    "check_runs",
    "TournamentResult",
    "strategy_tournament",
]
