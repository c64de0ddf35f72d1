"""Positions of the value constructions: the mate-in-n roll, value-omega rooks, doors, harassment and rook towers.

Every figure-backed generator reproduces the printed window square for square and
continues it with infinite pawn regions where the pattern is meant to go on. The
window transcriptions live in ``FIGURES``; tests compare generator output to them.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from infchess.core.errors import LayoutError
from infchess.models.board import Board, LatticeFill, RectFill, Region, Span, Square
from infchess.models.moves import Move
from infchess.models.pieces import Color, Piece, piece
from infchess.models.position import Position

logger = logging.getLogger(__name__)

WK, WQ, WR, WB, WN, WP = (piece(code) for code in ("WK", "WQ", "WR", "WB", "WN", "WP"))
BK, BR, BB, BP = (piece(code) for code in ("BK", "BR", "BB", "BP"))


@dataclass(frozen=True)
class FigureWindow:
    """A printed board: FEN-style rows from the top rank down, ``width`` files wide."""

    rows: tuple[str, ...]
    width: int
    top: int | None = None

    @property
    def height(self) -> int:
        return self.top if self.top is not None else len(self.rows)

    def squares(self) -> dict[Square, Piece | None]:
        """Every square of the window, ``None`` where the diagram is empty."""
        bottom = self.height - len(self.rows) + 1
        table: dict[Square, Piece | None] = {
            (x, y): None for x in range(1, self.width + 1) for y in range(bottom, self.height + 1)
        }
        for offset, row in enumerate(self.rows):
            y = self.height - offset
            x = 1
            digits = ""
            for char in row:
                if char.isdigit():
                    digits += char
                    continue
                if digits:
                    x += int(digits)
                    digits = ""
                color = Color.WHITE if char.isupper() else Color.BLACK
                table[(x, y)] = Piece.parse(color.letter, char)
                x += 1
            if x + int(digits or 0) - 1 > self.width:
                raise LayoutError(f"row {row!r} is wider than {self.width} files")
        return table


def _rows(text: str) -> tuple[str, ...]:
    """Rows from the top rank down; empty rows (leading or trailing slashes included) are empty ranks."""
    return tuple(text.split("/"))


FIGURES: dict[str, FigureWindow] = {
    "mate-in-17": FigureWindow(_rows("//2Q/4k17K/2R//"), 25),
    "mate-in-17-final": FigureWindow(_rows("//18Q/20k1K/20R//"), 26),
    "omega": FigureWindow(_rows("/////2r1r1r/4k//2PQ1RP//"), 9),
    "omega-left": FigureWindow(_rows("////1r1r3r1r//1r1r1r1r1r/5k//3PQ1RP///"), 11),
    "omega-right": FigureWindow(_rows("//3r3r//3r3r//3r1r1r/5k//3PQ1RP/5K//"), 11),
    "rook-door": FigureWindow(
        _rows(
            "PP3PPPP/PP3PPPP/PP3PPPP/PP3PPPP/PP3PBPP/PP1krPPPP/PPp1pPRRP/"
            "P1P1P1PPP/PBPBPBPPP/PPPPPPPPP/PPPPPPPPP"
        ),
        9,
    ),
    "bishop-queen-door": FigureWindow(
        _rows(
            "PP3PPP/PP3PPP/PP3PPP/PP3PPP/PP3PBP/PP1krPPP/PP1p1PPP/"
            "PP1P1PPP/PPBPBPPP/PPPPPQPP/PPPPPPPP"
        ),
        8,
    ),
    "rook-mate-door": FigureWindow(
        _rows(
            "3PP1PPP/3PP1PPP/3PP1PPP/3PP1PPP/1p1PP1PPP/3PPrPPP/3PPBPPP/"
            "3PPkPPP/3PRPRPP/3PPPPPP/3PPPPPP"
        ),
        9,
    ),
    "door-harass": FigureWindow(
        _rows(
            "3PP1PPP/3PP1PPP/3PP1PPP/1p1PP1PPP2K/3PP1PPP/3PPrPPP/3PPBPPP/"
            "3PPkPPP/3PRPRPP1r/3PPPPPP/3PPPPPP"
        ),
        13,
    ),
    "bishop-door-harass": FigureWindow(
        _rows(
            "3PP1PPPP/3PP1PPPP/1p1PP1PPPP/3PP1PPPP/3PP1kPPPK/3PPrP1PP/"
            "3PPBPBPP1r/3PPPPPPP/3PPPPPPP/3PPPPPPP/3PPPPPPP"
        ),
        13,
    ),
    "knight-door": FigureWindow(
        _rows(
            "3PP1PPPPPP/3PP1PPPPPP/3PP1PPPPPP/3PPrPPPPPP/1p1PP1PPPPPP2K/"
            "3PP1PPPPPP/3PPNPPkPPP/3PPPPNPNPP1r/3PPPPPPPPP/3PPPPPPPPP/3PPPPPPPPP"
        ),
        17,
    ),
    "hordes": FigureWindow(
        _rows("4P1P/4P1P/4P1P4r/4P1P/4PrP/Q3PBP3K/QQ2PPP/QQQ2P/QQ3P1k/Q4P/5P/5P/5P"),
        15,
    ),
    "lock": FigureWindow(_rows("2P1PP/2P1PP/2P1PP/2P1PP/2PrPP/2pB1P/2P1BP/2PBPP/2P1P/4P/4P"), 9),
    "lock-key": FigureWindow(_rows("2P1PP/2P1PP/2P1PP/2P1PP/2PrPP/2pB1P/2P1BP/2PBPP/2P1P/1P2P/4P"), 9),
    "omega2x4": FigureWindow(
        _rows(
            "3PP1PP1PP1PP1PPPP/3PP1PP1PP1PP1PPPP/3PP1PP1PP1PP1PPPP/3PP1PP1PP1PP1PPPP/"
            "3PP1PP1PP1PP1PPPP/3PP1PP1PP1PP1kPPP/1p1PP1PP1PP1PPrP1PP3r/"
            "3PP1PP1PPrPpB1BPP/3PP1PPrPpB1P1BPPP/3PPrPpB1P1BPBPPPP/"
            "3PPB1P1BPBPPPPPPP2K/3PPPBPBPPPPPPPPPP/3PPPPPPPPPPPPPPPP/"
            "3PPPPPPPPPPPPPPPP/3PPPPPPPPPPPPPPPP"
        ),
        25,
    ),
    "omega3": FigureWindow(
        _rows(
            "6PPPPP1PP1PP1PP1PP1PB/6PPPPP1PP1PP1PP1PPrP1/6PPPPP1PP1PP1PP1P1BpB/"
            "6PPPPP1PP1PP1PP1PB1P1/6PPPPP1PP1PP1PPrP1BPB/6PPPPP1PP1PP1P1BpB1PP/"
            "6PPPPP1PP1PP1PB1P1BPB/6PPPPP1PP1PPrP1BPB1Pp/6PPPPP1PP1P1BpB1PPBpP/"
            "6PPPPP1PP1PB1P1BPBpP1/2K3PPPPP1PPrP1BPB1PpP2/6PPPPP1P1BpB1PPBpP2p/"
            "6PPPPP1PB1P1BPBpP2pP/6PPPPPrP1BPB1PpP2pP/6PPPP1BpB1PPBpP2pP/"
            "6PPPPB1P1BPBpP2pP/3r2PPPP1BPB1PpP2pP/6PPPkB1PPBpP2pP/6PP1P1BPBpP2pP/"
            "6PPBPB1PpP2pP/6PPPPPBpP2pP/6PPPPBpP2pP/6PPPP1P2pP/6PPPPBPbpP/"
            "6PPPPPP1p/6PPPPPP1P/6PPPPPP/6PPPPPP/6PPPPPP"
        ),
        26,
    ),
    "omega3-detail": FigureWindow(
        _rows("1P1BPBpP2pP/BPB1PpP2pP/1PPBpP2pP/BPBpP2pP/1PpP2pP/BpP2pP/pP2pP/P2pP/2pP/1pP/pP/P"),
        13,
        top=29,
    ),
}


def figure_window(name: str) -> dict[Square, Piece | None]:
    try:
        return FIGURES[name].squares()
    except KeyError as exc:
        raise LayoutError(f"unknown figure {name!r}") from exc


def _fill(x: tuple[int | None, int | None], y: tuple[int | None, int | None], code: Piece = WP) -> RectFill:
    return RectFill((Span(*x), Span(*y)), code)


def _from_window(
    name: str,
    regions: Iterable[Region],
    to_move: Color,
    extra: Mapping[Square, Piece | None] | None = None,
) -> Position:
    """Window contents over continuation regions; window squares always win."""
    table = figure_window(name)
    table.update(extra or {})
    board = Board(2, tuple(regions), tuple(table.items()))
    position = Position.create(board, to_move)
    logger.debug("Built figure %s with %s overrides", name, len(board.overrides))
    return position


# --- finite positions ----------------------------------------------------------------


def gen_mate_in_n(n: int) -> Position:
    """Kings ``n`` files apart; white queen and rook roll the black king along the fourth rank."""
    if n < 1:
        raise LayoutError("mate-in-n needs n >= 1")
    board = Board.build(2, {(5, 4): BK, (n + 6, 4): WK, (3, 5): WQ, (3, 3): WR})
    return Position.create(board, Color.WHITE)


def mate_in_n_moves(n: int) -> list[Move]:
    """The roll line: rook checks on odd moves, queen checks on even ones, the last one mates."""
    position = gen_mate_in_n(n)
    rook, queen, king = (3, 3), (3, 5), (5, 4)
    moves: list[Move] = []
    for i in range(1, n + 1):
        if i % 2:
            target = (4 + i, 3)
            moves.append(Move(rook, target, WR))
            rook = target
        else:
            target = (3 + i, 5)
            moves.append(Move(queen, target, WQ))
            queen = target
        if i < n:
            moves.append(Move(king, (king[0] + 1, 4), BK))
            king = (king[0] + 1, 4)
    logger.debug("Mate-in-%s line has %s plies from %s", n, len(moves), position.king(Color.BLACK))
    return moves


def mate_in_n_line(n: int) -> str:
    from infchess.services.notation import format_line

    return format_line(mate_in_n_moves(n), gen_mate_in_n(n))


OMEGA_VARIANTS = {"base": "omega", "left": "omega-left", "right": "omega-right"}


def omega_shift(variant: str = "base") -> tuple[int, int]:
    """Translation of the variant's rook, king, queen and rook battery from the base diagram."""
    if variant not in OMEGA_VARIANTS:
        raise LayoutError(f"unknown value-omega variant {variant!r}")
    return (0, 0) if variant == "base" else (1, 1)


def gen_fig2_omega(variant: str = "base") -> Position:
    """Black rook above the king may climb any distance; each step buys one more white check."""
    if variant not in OMEGA_VARIANTS:
        raise LayoutError(f"unknown value-omega variant {variant!r}")
    return _from_window(OMEGA_VARIANTS[variant], (), Color.BLACK)


# --- doors ---------------------------------------------------------------------------

DOOR_KINDS = ("rook-door", "bishop-queen-door", "rook-mate-door")


def _door_regions(kind: str) -> tuple[RectFill, ...]:
    if kind == "rook-door":
        return (_fill((None, 2), (None, None)), _fill((3, 5), (None, 2)), _fill((6, None), (None, None)))
    if kind == "bishop-queen-door":
        return (_fill((None, 2), (None, None)), _fill((3, 5), (None, 2)), _fill((6, None), (None, None)))
    return (_fill((4, 5), (None, None)), _fill((6, 6), (None, 3)), _fill((7, None), (None, None)))


def gen_door(kind: str) -> Position:
    """Black rook in a pawn corridor; capturing it leaves a column white must push before mating."""
    if kind not in DOOR_KINDS:
        raise LayoutError(f"unknown door {kind!r}")
    return _from_window(kind, _door_regions(kind), Color.BLACK)


# --- harassment ------------------------------------------------------------------------

OMEGA_SQUARED_KINDS = ("door-harass", "bishop-door-harass", "knight-door", "hordes")


def _omega_squared_regions(kind: str) -> tuple[RectFill, ...]:
    if kind == "door-harass":
        return (_fill((4, 5), (None, None)), _fill((6, 6), (None, 3)), _fill((7, 9), (None, None)))
    if kind == "bishop-door-harass":
        return (_fill((4, 5), (None, None)), _fill((6, 6), (None, 4)), _fill((7, 10), (None, None)))
    if kind == "knight-door":
        return (_fill((4, 5), (None, None)), _fill((6, 6), (None, 4)), _fill((7, 12), (None, None)))
    return (_fill((5, 5), (7, None)), _fill((6, 6), (None, 7)), _fill((7, 7), (7, None)))


def gen_omega_squared(kind: str = "door-harass") -> Position:
    """A door next to an open area where a free black rook can keep checking the white king."""
    if kind not in OMEGA_SQUARED_KINDS:
        raise LayoutError(f"unknown omega-squared position {kind!r}")
    return _from_window(kind, _omega_squared_regions(kind), Color.BLACK)


# --- lock and key ----------------------------------------------------------------------


def gen_lock_key(with_key: bool = True) -> Position:
    """A tower rook guarded by a black pawn; the optional free white pawn on b2 is the key."""
    regions = (_fill((3, 3), (3, None)), _fill((5, 5), (None, None)), _fill((6, 6), (4, None)))
    return _from_window("lock-key" if with_key else "lock", regions, Color.WHITE)


@dataclass(frozen=True)
class Tower:
    """Squares of one rook tower in the chained position.

    ``key`` is the white pawn of the previous tower that ends up taking this tower's lock.
    """

    index: int
    rook: Square
    bishops: tuple[Square, Square]
    lock: Square | None
    key: Square | None

    @property
    def column(self) -> int:
        return self.rook[0]


def tower(index: int) -> Tower:
    """Tower ``index``; each tower sits three files right and one rank up from the previous one."""
    c, y = 6 + 3 * index, 6 + index
    lock = (c - 1, y - 1) if index else None
    key = (c - 2, y - 4) if index else None
    return Tower(index, (c, y), ((c, y - 1), (c + 1, y - 2)), lock, key)


@dataclass(frozen=True)
class ChainLayout:
    """Where the pieces of ``gen_omega2_times_k(k)`` stand."""

    towers: tuple[Tower, ...]
    king: Square
    final_bishop: Square
    final_key: Square
    white_king: Square
    free_rook: Square
    filler: Square

    @property
    def free_file(self) -> int:
        return self.towers[-1].column + 5


def chain_layout(k: int) -> ChainLayout:
    if k < 1:
        raise LayoutError("a tower chain needs at least one tower")
    towers = tuple(tower(i) for i in range(k))
    c, y = towers[-1].rook
    return ChainLayout(
        towers=towers,
        king=(c + 1, y + 1),
        final_bishop=(c + 2, y - 1),
        final_key=(c + 2, y - 2),
        white_king=(3 * k + 10, k + 1),
        free_rook=(3 * k + 11, k + 5),
        filler=(2, k + 5),
    )


def gen_omega2_times_k(k: int) -> Position:
    """``k`` rook towers chained by lock pawns, then the mating net around the black king.

    Pawn columns between the towers run infinitely up and down; each tower's file is
    open above its rook. To the right of the last tower is the free area where the
    black rook harasses the white king.
    """
    layout = chain_layout(k)
    last = layout.towers[-1].column
    regions = [_fill((4, 5), (None, None)), _fill((last + 1, last + 4), (None, None))]
    table: dict[Square, Piece | None] = {}
    for item in layout.towers:
        c, y = item.rook
        if item.index < k - 1:
            regions.append(_fill((c + 1, c + 2), (None, None)))
        if item.index:
            regions.append(_fill((c, c), (None, y - 4)))
            table[(c, y - 3)] = WB
            table[(c, y - 2)] = None
            table[item.lock] = BP  # type: ignore[index]
        else:
            regions.append(_fill((c, c), (None, y - 2)))
        table[item.rook] = BR
        for square in item.bishops:
            table[square] = WB
        table[(c + 1, y - 1)] = None
    table[layout.king] = BK
    table[layout.final_bishop] = WB
    table[(layout.final_bishop[0], layout.final_bishop[1] + 1)] = None
    table[layout.white_king] = WK
    table[layout.free_rook] = BR
    table[layout.filler] = BP
    board = Board(2, tuple(regions), tuple(table.items()))
    logger.debug("Built a %s-tower chain with free area from file %s", k, layout.free_file)
    return Position.create(board, Color.BLACK)


# --- omega cubed ---------------------------------------------------------------------

OMEGA3_BISHOP: Square = (13, 6)
OMEGA3_DIAGONAL = (1, 1)
OMEGA3_TOWERS_SHOWN = 5
OMEGA3_TOWERS = 8
OMEGA3_FIRST_FILE = 12
OMEGA3_REFERENCE = 2
# x - y of the tower band; files are constant above it
OMEGA3_BAND = (-4, 5)


@dataclass(frozen=True)
class DiagonalTower:
    index: int
    key: Square
    lock: Square
    rook: Square


def diagonal_tower(index: int) -> DiagonalTower:
    """Towers of the bishop position climb the board in steps of three files and three ranks."""
    step = 3 * index
    return DiagonalTower(index, (14 + step, 12 + step), (13 + step, 15 + step), (12 + step, 16 + step))


def bishop_landing(distance: int) -> Square:
    return (OMEGA3_BISHOP[0] + distance, OMEGA3_BISHOP[1] + distance)


def enabled_towers(distance: int) -> tuple[int, ...]:
    """Towers activated once the bishop stops ``distance`` squares out and is taken.

    The capturing pawn lands on the bishop's square; the key pawn one file to its left
    and every key further left become reachable.
    """
    if distance < 2:
        return ()
    return tuple(range((distance - 2) // 3 + 1))


def distance_for_towers(count: int) -> int:
    """Smallest bishop distance that enables exactly ``count`` towers."""
    if count < 1:
        raise LayoutError("at least one tower must be enabled")
    return 3 * count - 1


def _omega3_motif(window: Mapping[Square, Piece | None], square: Square) -> Piece | None:
    """Tower band square read off the reference tower, which the window shows whole."""
    x, y = square
    shift = 3 * ((x - OMEGA3_FIRST_FILE) // 3 - OMEGA3_REFERENCE)
    return window[(x - shift, y - shift)]


def gen_omega_cubed(towers: int = OMEGA3_TOWERS) -> Position:
    """The bishop position with ``towers`` diagonal towers.

    Below the window the left pawn block runs down forever and its first five files run
    up forever. Tower ``j`` owns files ``12 + 3j`` to ``14 + 3j``; within
    ``OMEGA3_BAND`` of the diagonal through its rook the pattern repeats every three files
    and ranks, and above the band every file is constant. The bishop channel, the black
    pawn diagonal and the white pawn diagonal continue up and to the right without end.
    Right of the last tower only those diagonals remain.
    """
    if towers < OMEGA3_TOWERS_SHOWN:
        raise LayoutError(f"the bishop position shows {OMEGA3_TOWERS_SHOWN} towers; asked for {towers}")
    window = figure_window("omega3")
    regions: list[Region] = [
        _fill((7, 12), (None, 0)),
        _fill((7, 11), (1, None)),
        LatticeFill((14, 6), OMEGA3_DIAGONAL, None, BP),
        LatticeFill((15, 6), OMEGA3_DIAGONAL, None, WP),
    ]
    extra: dict[Square, Piece | None] = {}
    low, high = OMEGA3_BAND
    for x in range(OMEGA3_FIRST_FILE, OMEGA3_FIRST_FILE + 3 * towers):
        top = _omega3_motif(window, (x, x - low + 1))
        if top is not None:
            regions.append(RectFill((Span(x, x), Span(x - low + 1, None)), top))
        for y in range(x - high, x - low + 1):
            if (x, y) not in window:
                extra[(x, y)] = _omega3_motif(window, (x, y))
    logger.debug("Bishop position with %s towers, %s squares past the window", towers, len(extra))
    return _from_window("omega3", regions, Color.BLACK, extra)


def gen_omega_cubed_detail() -> Position:
    """The second printed board of the bishop position, a pawn staircase with no kings."""
    return _from_window("omega3-detail", (), Color.BLACK)


# --- registry --------------------------------------------------------------------------

FIGURE_GENERATORS: dict[str, Callable[[], Position]] = {
    "fig1": lambda: gen_mate_in_n(17),
    "fig2": gen_fig2_omega,
    "fig2-left": lambda: gen_fig2_omega("left"),
    "fig2-right": lambda: gen_fig2_omega("right"),
    **{f"door-{kind}": (lambda kind=kind: gen_door(kind)) for kind in DOOR_KINDS},
    **{f"omega2-{kind}": (lambda kind=kind: gen_omega_squared(kind)) for kind in OMEGA_SQUARED_KINDS},
    "lock": lambda: gen_lock_key(with_key=False),
    "lock-key": gen_lock_key,
    "omega2x4": lambda: gen_omega2_times_k(4),
    "fig-omega3": gen_omega_cubed,
    "fig-omega3-detail": gen_omega_cubed_detail,
}


def generate(name: str) -> Position:
    try:
        generator = FIGURE_GENERATORS[name]
    except KeyError as exc:
        raise LayoutError(f"unknown figure {name!r}; known: {', '.join(FIGURE_GENERATORS)}") from exc
    return generator()


def window_matches(position: Position, name: str) -> list[Square]:
    """Squares of the printed window where ``position`` differs from the transcription."""
    return [sq for sq, expected in sorted(figure_window(name).items()) if position.piece_at(sq) != expected]


__all__ = [
    "FigureWindow",
    "FIGURES",
    "figure_window",
    "window_matches",
    "gen_mate_in_n",
    "mate_in_n_moves",
    "mate_in_n_line",
    "omega_shift",
    "gen_fig2_omega",
    "DOOR_KINDS",
    "gen_door",
    "OMEGA_SQUARED_KINDS",
    "gen_omega_squared",
    "gen_lock_key",
    "Tower",
    "tower",
    "ChainLayout",
    "chain_layout",
    "gen_omega2_times_k",
    "DiagonalTower",
    "diagonal_tower",
    "bishop_landing",
    "enabled_towers",
    "distance_for_towers",
    "OMEGA3_TOWERS",
    "gen_omega_cubed",
    "gen_omega_cubed_detail",
    "FIGURE_GENERATORS",
    "generate",
]
