"""Lower certificates for the value constructions.

Each builder follows the main line of its construction: black's announcement
is a family edge checked at samples, white answers with the free moves of the
door or tower, and black's harassing rook campaigns between white's free moves
are nested families. Claims are computed while the tree is built, so a builder
that drifts from the position fails verification at the first wrong square.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from infchess.core.errors import LayoutError
from infchess.models.board import Square
from infchess.models.ordinal import (
    ZERO,
    FamilyValueFormula,
    Ordinal,
    format_ordinal,
    nat_mul,
    omega_pow,
    succ,
    sup_family,
)
from infchess.models.pieces import Color
from infchess.models.position import Position
from infchess.services import movegen
from infchess.services.arenas import ChessArena, MoveRef
from infchess.services.certificates import (
    CertNode,
    Mode,
    ValueCertificate,
    VerificationReport,
    black,
    black_move,
    family,
    leaf,
    verify_certificate,
    white,
)
from infchess.services.embeddings import figures
from infchess.services.solver import SearchBudget

logger = logging.getLogger(__name__)

UP = (0, 1)
RIGHT = (1, 0)
HARASS_SAMPLES = (1, 2, 3)
STRUCTURAL = "structural"


def _ref(from_sq: Square, to_sq: Square) -> MoveRef:
    return MoveRef(tuple(from_sq), tuple(to_sq))


def _alternate(white_moves: list[MoveRef], filler: Square, end: CertNode) -> CertNode:
    """White plays ``white_moves`` while black pushes the filler pawn down one square per turn."""
    node = end
    fx, fy = filler
    for i in range(len(white_moves) - 1, -1, -1):
        node = white(white_moves[i], node)
        if i:
            y = fy - (i - 1)
            node = black_move(_ref((fx, y), (fx, y - 1)), node)
    return node


# --- value omega -------------------------------------------------------------------------


def fig2_moves(d: int, variant: str = "base") -> list[MoveRef]:
    """The check roll after black's rook climbs ``d`` squares: rook and queen alternate up the king's sides."""
    sx, sy = figures.omega_shift(variant)
    rook, queen = (6 + sx, 3 + sy), (4 + sx, 3 + sy)
    moves: list[MoveRef] = []
    for j in range(1, d + 2):
        if j % 2:
            target = (6 + sx, 4 + j + sy)
            moves.append(_ref(rook, target))
            rook = target
        else:
            target = (4 + sx, 3 + j + sy)
            moves.append(_ref(queen, target))
            queen = target
    return moves


def fig2_certificate(variant: str = "base", samples: tuple[int, ...] = (1, 2, 3, 4, 5)) -> ValueCertificate:
    """Value omega: the rook climb ``d`` costs white ``d + 1`` checks."""
    sx, sy = figures.omega_shift(variant)
    rook = (5 + sx, 6 + sy)

    def template(d: int) -> CertNode:
        moves = fig2_moves(d, variant)
        node = leaf(0)
        for j in range(len(moves) - 1, -1, -1):
            node = white(moves[j], node)
            if j:
                king = (5 + sx, 4 + j + sy)
                node = black_move(_ref(king, (king[0], king[1] + 1)), node)
        return node

    edge = family((rook, UP), template, samples, formula=FamilyValueFormula.linear(0, 1, 1))
    return ValueCertificate(Mode.LOWER, black(edge))


# --- doors -----------------------------------------------------------------------------

DOOR_ROOK: Square = (6, 6)


def door_free_moves(t: int) -> list[MoveRef]:
    """Take the climbed rook, refill the pawn file from the top down, then rook mate."""
    moves = [_ref((5, 5 + t), (6, 6 + t))]
    moves.extend(_ref((5, y), (5, y + 1)) for y in range(4 + t, 3, -1))
    moves.append(_ref((5, 3), (5, 4)))
    return moves


def door_family(filler: Square, samples: tuple[int, ...] = (1, 2, 3)) -> CertNode:
    def template(t: int) -> CertNode:
        return _alternate(door_free_moves(t), filler, leaf(0))

    return black(family((DOOR_ROOK, UP), template, samples, formula=FamilyValueFormula.linear(0, 1, 3)))


def door_certificate(samples: tuple[int, ...] = (1, 2, 3)) -> ValueCertificate:
    """Value omega for the rook-mate door; black's spare pawn on b7 makes the waiting moves."""
    return ValueCertificate(Mode.LOWER, door_family((2, 7), samples))


# --- harassment -------------------------------------------------------------------------


@dataclass(frozen=True)
class Harassment:
    """White king, the free black rook and the spare black pawn between two announcements."""

    king: Square
    rook: Square
    filler: Square

    @property
    def offset(self) -> int:
        """Retreat distance beyond ``n`` that leaves the rook ``n + 1`` files from the king."""
        offset = 1 + self.king[0] - self.rook[0]
        if offset < 0:
            raise LayoutError(f"rook {self.rook} is too far right of king {self.king} to harass")
        return offset


Tail = Callable[[Harassment], CertNode]


@dataclass
class HarassmentLadder:
    """Interleaves white's free moves with black rook campaigns.

    Before every free move but the last, black retreats the rook along its rank
    (family ``n``), then after the free move checks the king ``n`` times while it
    walks diagonally away. Before the last free move black only pushes the spare
    pawn, so the rook stays next to the king for whatever follows.
    """

    tail: Tail
    tail_claim: Ordinal
    samples: tuple[int, ...] = HARASS_SAMPLES

    def claim(self, remaining: int) -> Ordinal:
        value = succ(self.tail_claim)
        for _ in range(remaining - 1):
            value = sup_family(FamilyValueFormula.linear(0, 1, 1).prefixed(value))
        return value

    def build(self, free: list[MoveRef], state: Harassment) -> CertNode:
        if not free:
            raise LayoutError("a harassment ladder needs at least one free move")
        if len(free) == 1:
            fx, fy = state.filler
            after = Harassment(state.king, state.rook, (fx, fy - 1))
            return black_move(_ref(state.filler, after.filler), white(free[0], self.tail(after)))
        offset = state.offset
        (kx, ky), (rx, ry) = state.king, state.rook

        def template(n: int) -> CertNode:
            file = rx + n + offset
            end = Harassment((kx + n, ky + n), (file, ky + n - 1), state.filler)
            node = self.build(free[1:], end)
            for j in range(n - 1, -1, -1):
                node = white(_ref((kx + j, ky + j), (kx + j + 1, ky + j + 1)), node)
                previous = ry if j == 0 else ky + j - 1
                node = black_move(_ref((file, previous), (file, ky + j)), node)
            return white(free[0], node)

        formula = FamilyValueFormula.linear(0, 1, 1).prefixed(self.claim(len(free) - 1))
        return black(family((state.rook, RIGHT), template, self.samples, offset=offset, formula=formula))


def omega_squared_certificate(
    samples: tuple[int, ...] = (1, 2, 3), harass_samples: tuple[int, ...] = HARASS_SAMPLES
) -> ValueCertificate:
    """Door plus harassment: the rook climb ``t`` leaves ``t + 2`` free moves, each but the last harassed."""
    start = Harassment((12, 8), (11, 3), (2, 8))
    ladder = HarassmentLadder(lambda _: leaf(0), ZERO, harass_samples)

    def template(t: int) -> CertNode:
        free = door_free_moves(t)
        return white(free[0], ladder.build(free[1:], start))

    formula = FamilyValueFormula.linear(1, 1, 1).successor()
    return ValueCertificate(Mode.LOWER, black(family((DOOR_ROOK, UP), template, samples, formula=formula)))


def omega_squared_sacrifice_certificate(samples: tuple[int, ...] = (1, 2, 3)) -> ValueCertificate:
    """Black gives up the free rook first; the bare door that remains is worth only omega."""
    take = white(_ref((12, 8), (11, 7)), door_family((2, 8), samples))
    return ValueCertificate(Mode.LOWER, black_move(_ref((11, 3), (11, 7)), take))


# --- tower chains ------------------------------------------------------------------------


def tower_free_moves(layout: figures.ChainLayout, index: int, t: int) -> list[MoveRef]:
    """White's ``t + 5`` free moves after tower ``index``'s rook climbed ``t`` squares."""
    c, y = layout.towers[index].rook
    moves = [_ref((c - 1, y - 1 + t), (c, y + t))]
    moves.extend(_ref((c - 1, yy), (c - 1, yy + 1)) for yy in range(y - 2 + t, y - 1, -1))
    moves.append(_ref((c, y - 1), (c - 1, y)))
    moves.append(_ref((c + 1, y - 2), (c, y - 1)))
    if index < len(layout.towers) - 1:
        moves.append(_ref((c + 1, y - 3), (c + 1, y - 2)))
        moves.append(_ref((c + 1, y - 2), (c + 1, y - 1)))
        moves.append(_ref((c + 1, y - 1), layout.towers[index + 1].lock))  # type: ignore[arg-type]
    else:
        moves.append(_ref(layout.final_bishop, (c + 1, y - 2)))
        moves.append(_ref(layout.final_key, (c + 2, y - 1)))
        moves.append(_ref((c + 2, y - 1), (c + 2, y)))
    return moves


def tower_claim(k: int, index: int) -> Ordinal:
    """Value while towers ``index..k-1`` are still standing."""
    return nat_mul(omega_pow(2), k - index)


@dataclass
class TowerChainBuilder:
    layout: figures.ChainLayout
    samples: tuple[int, ...] = (1, 2, 3)
    harass_samples: tuple[int, ...] = HARASS_SAMPLES

    @property
    def k(self) -> int:
        return len(self.layout.towers)

    def tower(self, index: int, state: Harassment) -> CertNode:
        if index == self.k:
            return leaf(0)
        rest = tower_claim(self.k, index + 1)
        ladder = HarassmentLadder(lambda after: self.tower(index + 1, after), rest, self.harass_samples)

        def template(t: int) -> CertNode:
            free = tower_free_moves(self.layout, index, t)
            return white(free[0], ladder.build(free[1:], state))

        formula = FamilyValueFormula.linear(1, 1, 3).successor()
        if rest:
            formula = formula.prefixed(rest)
        rook = self.layout.towers[index].rook
        return black(family((rook, UP), template, self.samples, formula=formula))

    def certificate(self) -> ValueCertificate:
        layout = self.layout
        start = Harassment(layout.white_king, layout.free_rook, layout.filler)
        return ValueCertificate(Mode.LOWER, self.tower(0, start))


def omega2_times_k_certificate(
    k: int, samples: tuple[int, ...] = (1, 2, 3), harass_samples: tuple[int, ...] = HARASS_SAMPLES
) -> ValueCertificate:
    return TowerChainBuilder(figures.chain_layout(k), samples, harass_samples).certificate()


# --- omega cubed ------------------------------------------------------------------------


@dataclass
class StructuralReport:
    """Outcome of the structural check of the bishop position."""

    passed: bool
    claim: Ordinal
    checks: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    chain_reports: dict[int, VerificationReport] = field(default_factory=dict)
    caveats: tuple[str, ...] = (STRUCTURAL,)

    def summary_line(self) -> str:
        verdict = "pass" if self.passed else f"fail checks={len(self.failures)}"
        claim = format_ordinal(self.claim).replace(" ", "")
        return f"certify {verdict} mode=structural claim={claim} samples={len(self.chain_reports)} caveats={','.join(self.caveats)}"


# Offsets from a tower's rook; the bishop position reads them with files mirrored.
TOWER_FRAME: tuple[Square, ...] = ((0, 0), (-1, 0), (1, 0), (0, -1), (1, -1), (1, -2))
LOCK_FRAME: tuple[Square, ...] = ((-1, -1), (-2, -4), (0, -3), (0, -2))


def tower_signature(position: Position, rook: Square, locked: bool, *, mirror: bool = False) -> tuple:
    """Pieces around a tower's rook and whether its file is open upward."""
    sign = -1 if mirror else 1
    frame = TOWER_FRAME + LOCK_FRAME if locked else TOWER_FRAME
    pieces = tuple(position.piece_at((rook[0] + sign * dx, rook[1] + dy)) for dx, dy in frame)
    return pieces + (position.board.first_occupied(rook, UP) is None,)


def _compare_towers(position: Position, m: int, enabled: tuple[int, ...]) -> list[str]:
    layout = figures.chain_layout(m)
    chain = figures.gen_omega2_times_k(m)
    failures: list[str] = []
    for j in enabled:
        item = figures.diagonal_tower(j)
        expected = layout.towers[j]
        locked = expected.lock is not None
        if tower_signature(position, item.rook, locked, mirror=True) != tower_signature(chain, expected.rook, locked):
            failures.append(f"m={m}: tower {j} at {item.rook} differs from chain tower {j}")
        for square, color in ((item.key, Color.WHITE), (item.lock, Color.BLACK)):
            found = position.piece_at(square)
            if found is None or found.color is not color:
                failures.append(f"m={m}: tower {j} is missing its piece on {square}")
        if j:
            stride = item.rook[0] - figures.diagonal_tower(j - 1).rook[0]
            if stride != expected.column - layout.towers[j - 1].column:
                failures.append(f"m={m}: tower {j} stands {stride} files from the previous one")
    return failures


def omega_cubed_formula() -> FamilyValueFormula:
    return FamilyValueFormula.linear(2, 1, 0).successor()


def certify_omega_cubed(
    samples: tuple[int, ...] = (1, 2, 3),
    budget: SearchBudget | None = None,
    *,
    workers: int = 1,
    position: Position | None = None,
) -> StructuralReport:
    """Checks that a bishop stop enabling ``m`` towers leads into the ``m``-tower chain.

    For each sample ``m`` the bishop move and its capture must be legal on the
    bishop position, each enabled tower must match the chain's tower of the same
    index (files mirrored), and the chain position with ``m`` towers must carry a
    passing omega-squared-times-``m`` certificate.
    """
    budget = budget or SearchBudget()
    position = position or figures.gen_omega_cubed()
    arena = ChessArena(budget)
    report = StructuralReport(passed=True, claim=sup_family(omega_cubed_formula()))
    for m in samples:
        distance = figures.distance_for_towers(m)
        landing = figures.bishop_landing(distance)
        move = arena.family_member(position, (figures.OMEGA3_BISHOP, figures.OMEGA3_DIAGONAL), distance)
        if move is None:
            report.failures.append(f"m={m}: bishop cannot stop at distance {distance}")
            continue
        after = movegen.apply(position, move, check=False)
        if arena.resolve(after, _ref((landing[0] + 1, landing[1] - 1), landing)) is None:
            report.failures.append(f"m={m}: pawn cannot take the bishop on {landing}")
        enabled = figures.enabled_towers(distance)
        if len(enabled) != m:
            report.failures.append(f"m={m}: distance {distance} enables {len(enabled)} towers")
            continue
        report.failures.extend(_compare_towers(after, m, enabled))
        chain = omega2_times_k_certificate(m)
        chain_report = verify_certificate(figures.gen_omega2_times_k(m), chain, budget, workers=workers)
        report.chain_reports[m] = chain_report
        if not chain_report.passed:
            report.failures.append(f"m={m}: chain certificate failed: {chain_report.detail}")
        expected_claim = nat_mul(omega_pow(2), m) + 1
        if omega_cubed_formula().evaluate(m) != expected_claim:
            report.failures.append(f"m={m}: formula disagrees with the chain value")
        report.checks.append(f"m={m}: bishop to {landing}, towers {list(enabled)}, chain {chain_report.claim}")
    report.passed = not report.failures
    logger.info("Structural check of the bishop position: %s", "pass" if report.passed else report.failures)
    return report


# --- registry ----------------------------------------------------------------------------

CERTIFICATE_BUILDERS: dict[str, tuple[Callable[[], Position], Callable[[], ValueCertificate]]] = {
    "fig2": (figures.gen_fig2_omega, fig2_certificate),
    "fig2-left": (lambda: figures.gen_fig2_omega("left"), lambda: fig2_certificate("left")),
    "fig2-right": (lambda: figures.gen_fig2_omega("right"), lambda: fig2_certificate("right")),
    "door-rook-mate-door": (lambda: figures.gen_door("rook-mate-door"), door_certificate),
    "omega2-door-harass": (figures.gen_omega_squared, omega_squared_certificate),
    "omega2-sacrifice": (figures.gen_omega_squared, omega_squared_sacrifice_certificate),
    "omega2x1": (lambda: figures.gen_omega2_times_k(1), lambda: omega2_times_k_certificate(1)),
    "omega2x2": (lambda: figures.gen_omega2_times_k(2), lambda: omega2_times_k_certificate(2)),
}


def build(name: str) -> tuple[Position, ValueCertificate]:
    try:
        make_position, make_certificate = CERTIFICATE_BUILDERS[name]
    except KeyError as exc:
        raise LayoutError(f"no certificate builder named {name!r}") from exc
    return make_position(), make_certificate()


__all__ = [
    "fig2_moves",
    "fig2_certificate",
    "door_free_moves",
    "door_certificate",
    "Harassment",
    "HarassmentLadder",
    "omega_squared_certificate",
    "omega_squared_sacrifice_certificate",
    "tower_free_moves",
    "tower_claim",
    "TowerChainBuilder",
    "omega2_times_k_certificate",
    "StructuralReport",
    "tower_signature",
    "certify_omega_cubed",
    "CERTIFICATE_BUILDERS",
    "build",
]
