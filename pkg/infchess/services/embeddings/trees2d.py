"""Binary trees drawn as king channels in the plane.

Each present address of a binary tree becomes a node square. An edge is a
diagonal run of channel squares whose length halves at every level, so sibling
subtrees never touch. Addresses at the layout depth that are still present go
on forever as a vertical zigzag; that is what lets an infinite branch survive.

Fillings:

* ``zugzwang``: empty channels lined with bishops in a rook field. The white
  king follows two squares behind and a pawn trap closes every dead-end.
* ``pawn-check``: channels of pawns in a rook field. Every white move pushes a
  pawn into the square the black king just left, with check.
* ``rook-pawn``: a pawn field; a rook stands on the one diagonal square that
  would otherwise protect the next channel pawn.
* ``symmetric``: the rook-pawn tree plus its colour-swapped dual turned half a
  circle, with the white king climbing the dual.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from infchess.core.errors import LayoutError
from infchess.models.board import Board, LatticeFill, RectFill, Region, Span, Square
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position

logger = logging.getLogger(__name__)

Address = tuple[int, ...]
BinaryTree = Callable[[Address], bool]

SPACING = 3
BORDER = 4
LEFT = BORDER + 1
BOTTOM = BORDER + 1
MARGIN = 4
MAX_DEPTH = 8

_N4 = ((1, 0), (-1, 0), (0, 1), (0, -1))
# rows above the window that fix the periodic column patterns
_EVEN_ROW, _ODD_ROW = 4, 3


class TreeStyle(str, Enum):
    ZUGZWANG = "zugzwang"
    PAWN_CHECK = "pawn-check"
    ROOK_PAWN = "rook-pawn"
    SYMMETRIC = "symmetric"


def full_tree(address: Address) -> bool:
    return True


def trap_tree(death: int) -> BinaryTree:
    """Every branch stops before length ``death``."""

    def member(address: Address) -> bool:
        return len(address) < death

    return member


def path_tree(path: Sequence[int], side: int = 1) -> BinaryTree:
    """One infinite branch repeating ``path``; side branches end ``side`` levels after leaving it."""
    if not path or any(bit not in (0, 1) for bit in path):
        raise LayoutError("a branch path is a nonempty sequence of 0 and 1")

    def member(address: Address) -> bool:
        for i, bit in enumerate(address):
            if bit != path[i % len(path)]:
                return len(address) - i <= side
        return True

    return member


def _add(a: Square, b: Square) -> Square:
    return (a[0] + b[0], a[1] + b[1])


def _turn(square: Square, turn: int) -> Square:
    return (square[0] * turn, square[1] * turn)


@dataclass(frozen=True, eq=False)
class ChannelLayout:
    """Where a tree went on the board, in the tree's own frame.

    ``turn`` is -1 for a dual copy; public methods take and return board squares.
    """

    style: TreeStyle
    depth: int
    spacing: int
    climber: Color
    top: int
    root: Square
    entry: Square
    start: Square
    nodes: Mapping[Address, Square]
    parents: Mapping[Square, Square]
    bands: tuple[int, ...]
    traps: Mapping[Square, tuple[Square, Square]] = field(default_factory=dict)
    follower: Square | None = None
    turn: int = 1

    @property
    def pusher_color(self) -> Color:
        return self.climber.opponent

    def board_square(self, local: Square) -> Square:
        return _turn(local, self.turn)

    def local(self, square: Sequence[int]) -> Square:
        return _turn((square[0], square[1]), self.turn)

    def node_square(self, address: Address) -> Square:
        return self.board_square(self.nodes[address])

    def address_at(self, square: Sequence[int]) -> Address | None:
        local = self.local(square)
        for address, node in self.nodes.items():
            if node == local:
                return address
        return None

    def _band_phase(self, local: Square) -> int | None:
        x, y = local
        if y < self.top:
            return None
        phase = (y - self.top) % 2
        for x0 in self.bands:
            if x == x0 + phase:
                return phase
        return None

    def predecessor(self, square: Sequence[int]) -> Square | None:
        """The channel square the climbing king came from."""
        local = self.local(square)
        x, y = local
        if y > self.top:
            phase = self._band_phase(local)
            if phase is None:
                return None
            return self.board_square((x + 1, y - 1) if phase == 0 else (x - 1, y - 1))
        previous = self.parents.get(local)
        return None if previous is None else self.board_square(previous)

    def successors(self, square: Sequence[int]) -> tuple[Square, ...]:
        """Channel squares one king step further up the tree."""
        local = self.local(square)
        phase = self._band_phase(local)
        if phase is not None:
            x, y = local
            return (self.board_square((x + 1, y + 1) if phase == 0 else (x - 1, y + 1)),)
        found = [child for child, parent in self.parents.items() if parent == local]
        return tuple(self.board_square(child) for child in sorted(found))

    def branch(self, square: Sequence[int], bit: int) -> Square | None:
        """The successor towards child ``bit`` (0 left, 1 right), if it exists."""
        x, y = self.local(square)
        wanted = self.board_square((x + (1 if bit else -1), y + 1))
        return wanted if wanted in self.successors(square) else None

    def push_square(self, square: Sequence[int]) -> Square:
        """Where the pawn that refills ``square`` stands."""
        x, y = self.local(square)
        return self.board_square((x, y - 1))

    def trap_at(self, square: Sequence[int]) -> tuple[Square, Square] | None:
        """For a dead-end's last cell: the pawn cell and the pawn that mates by moving into it."""
        found = self.traps.get(self.local(square))
        if found is None:
            return None
        return self.board_square(found[0]), self.board_square(found[1])

    def in_channel(self, square: Sequence[int]) -> bool:
        local = self.local(square)
        return local in self.parents or local == self.entry or self._band_phase(local) is not None


@dataclass(frozen=True, eq=False)
class TreeEmbedding:
    position: Position
    layout: ChannelLayout
    dual: ChannelLayout | None = None

    def layout_for(self, climber: Color) -> ChannelLayout:
        if self.layout.climber is climber:
            return self.layout
        if self.dual is not None and self.dual.climber is climber:
            return self.dual
        raise LayoutError(f"no tree in this position is climbed by {climber.value}")


@dataclass
class _Plan:
    root: Square
    top: int
    right: int
    nodes: dict[Address, Square] = field(default_factory=dict)
    parents: dict[Square, Square] = field(default_factory=dict)
    live: list[Square] = field(default_factory=list)
    leaves: list[Square] = field(default_factory=list)


def _plan(tree: BinaryTree, depth: int, spacing: int, lift: int) -> _Plan:
    reach = spacing * (2**depth - 1)
    root = (LEFT + reach + MARGIN, BOTTOM + lift)
    plan = _Plan(root, root[1] + reach, root[0] + reach + MARGIN)
    plan.nodes[()] = root
    pending: list[tuple[Address, Square]] = [((), root)]
    while pending:
        address, square = pending.pop()
        level = len(address)
        if level == depth:
            plan.live.append(square)
            continue
        width = spacing * 2 ** (depth - 1 - level)
        grown = False
        for bit in (0, 1):
            child = address + (bit,)
            if not tree(child):
                continue
            step = (1 if bit else -1, 1)
            previous = square
            for _ in range(width):
                current = _add(previous, step)
                plan.parents[current] = previous
                previous = current
            plan.nodes[child] = previous
            pending.append((child, previous))
            grown = True
        if not grown:
            plan.leaves.append(square)
    return plan


def _neighbours(squares: Iterable[Square]) -> set[Square]:
    return {_add(square, offset) for square in squares for offset in _N4}


def _band_cells(x0: int, top: int, rows: int) -> dict[Square, Square]:
    """Zigzag cells above ``top`` mapped to their predecessors."""
    cells: dict[Square, Square] = {}
    previous = (x0, top)
    for k in range(1, rows + 1):
        current = (x0 + (1 if k % 2 else 0), top + k)
        cells[current] = previous
        previous = current
    return cells


def _marks(
    style: TreeStyle, parents: Mapping[Square, Square], traps: Mapping[Square, tuple[Square, Square]]
) -> tuple[Piece, dict[Square, Piece | None]]:
    """The background piece and every square that differs from it."""
    cells = set(parents) | set(parents.values())
    marks: dict[Square, Piece | None] = {}
    if style is TreeStyle.PAWN_CHECK:
        for square in cells | _neighbours(cells):
            marks[square] = Piece(Color.WHITE, Kind.PAWN)
        return Piece(Color.WHITE, Kind.ROOK), marks
    if style is TreeStyle.ROOK_PAWN:
        for square, previous in parents.items():
            slope = square[0] - previous[0]
            marks[(previous[0] + 2 * slope, previous[1])] = Piece(Color.WHITE, Kind.ROOK)
        return Piece(Color.WHITE, Kind.PAWN), marks
    pawn_cells = {pawn for pawn, _ in traps.values()}
    pushers = {pusher for _, pusher in traps.values()}
    for square in _neighbours(cells) - cells - pushers:
        marks[square] = Piece(Color.WHITE, Kind.BISHOP)
    for square in cells - pawn_cells:
        marks[square] = None
    for square in pawn_cells | pushers:
        marks[square] = Piece(Color.WHITE, Kind.PAWN)
    return Piece(Color.WHITE, Kind.ROOK), marks


def _column_regions(
    background: Piece, marks: Mapping[Square, Piece | None], left: int, right: int, top: int
) -> list[Region]:
    regions: list[Region] = []
    run_start: int | None = None

    def close_run(end: int) -> None:
        if run_start is not None:
            regions.append(RectFill((Span(run_start, end), Span(top + 1, None)), background))

    for x in range(left, right + 1):
        even = marks.get((x, top + _EVEN_ROW), background)
        odd = marks.get((x, top + _ODD_ROW), background)
        if even == odd == background:
            if run_start is None:
                run_start = x
            continue
        close_run(x - 1)
        run_start = None
        if even == odd:
            if even is not None:
                regions.append(RectFill((Span(x, x), Span(top + 1, None)), even))
            continue
        if even is not None:
            regions.append(LatticeFill((x, top + 2), (0, 2), None, even))
        if odd is not None:
            regions.append(LatticeFill((x, top + 1), (0, 2), None, odd))
    close_run(right)
    return regions


def _render(
    style: TreeStyle, tree: BinaryTree, depth: int, spacing: int, *, free_king: bool
) -> tuple[ChannelLayout, list[Region], dict[Square, Piece | None]]:
    """One tree in its own frame, white pieces building it and the black king climbing."""
    zugzwang = style is TreeStyle.ZUGZWANG
    plan = _plan(tree, depth, spacing, lift=5 if zugzwang else 1)
    root, top = plan.root, plan.top
    parents = dict(plan.parents)
    diagonal = (1, 1)
    entry = (root[0] - 1, root[1] - 1)
    parents[root] = entry
    traps: dict[Square, tuple[Square, Square]] = {}
    follower: Square | None = None
    start = root
    if zugzwang:
        # the corridor below the root: last cell, white king, gap, black king
        cells = [(root[0] - k, root[1] - k) for k in range(1, 5)]
        for upper, lower in zip(cells, cells[1:]):
            parents[upper] = lower
        start, follower, entry = cells[0], cells[2], cells[3]
        for leaf in plan.leaves:
            slope = leaf[0] - parents[leaf][0]
            pawn = (leaf[0] + slope, leaf[1] + 1)
            final = (pawn[0] + slope, pawn[1] + 1)
            parents[pawn] = leaf
            parents[final] = pawn
            traps[final] = (pawn, (pawn[0], pawn[1] - 1))
    bands = tuple(sorted(square[0] for square in plan.live))
    extended = dict(parents)
    for x0 in bands:
        extended.update(_band_cells(x0, top, _EVEN_ROW + 2))
    background, marks = _marks(style, extended, traps)

    def in_window(square: Square) -> bool:
        return LEFT <= square[0] <= plan.right and BOTTOM <= square[1] <= top

    overrides: dict[Square, Piece | None] = {sq: v for sq, v in marks.items() if in_window(sq)}
    if zugzwang:
        overrides[start] = Piece(Color.BLACK, Kind.KING)
        overrides[follower] = Piece(Color.WHITE, Kind.KING)  # type: ignore[index]
        for pawn, _ in traps.values():
            overrides[(pawn[0], pawn[1] - 2)] = background
    else:
        overrides[entry] = None
        overrides[root] = Piece(Color.BLACK, Kind.KING)
        if free_king:
            overrides[(BORDER - 2, BORDER - 2)] = Piece(Color.WHITE, Kind.KING)
    pawn = Piece(Color.WHITE, Kind.PAWN)
    regions: list[Region] = [
        RectFill((Span(BORDER, BORDER), Span(BORDER, None)), pawn),
        RectFill((Span(LEFT, None), Span(BORDER, BORDER)), pawn),
        RectFill((Span(LEFT, plan.right), Span(BOTTOM, top)), background),
        RectFill((Span(plan.right + 1, None), Span(BOTTOM, None)), background),
    ]
    regions.extend(_column_regions(background, marks, LEFT, plan.right, top))
    layout = ChannelLayout(
        style=style,
        depth=depth,
        spacing=spacing,
        climber=Color.BLACK,
        top=top,
        root=root,
        entry=entry,
        start=start,
        nodes=dict(plan.nodes),
        parents=parents,
        bands=bands,
        traps=traps,
        follower=follower,
    )
    logger.debug(
        "tree channels: style=%s depth=%d nodes=%d live=%d leaves=%d overrides=%d regions=%d",
        style.value,
        depth,
        len(plan.nodes),
        len(plan.live),
        len(plan.leaves),
        len(overrides),
        len(regions),
    )
    return layout, regions, overrides


def _swap(value: Piece | None) -> Piece | None:
    return None if value is None else Piece(value.color.opponent, value.kind)


def _flip_span(span: Span) -> Span:
    return Span(None if span.hi is None else -span.hi, None if span.lo is None else -span.lo)


def _dual_region(region: Region) -> Region:
    """The region turned half a circle with its colour swapped."""
    piece = _swap(region.piece)
    if isinstance(region, RectFill):
        return RectFill(tuple(_flip_span(span) for span in region.spans), piece)  # type: ignore[arg-type]
    if isinstance(region, LatticeFill):
        return LatticeFill(_turn(region.base, -1), _turn(region.step, -1), region.count, piece)  # type: ignore[arg-type]
    raise LayoutError(f"cannot turn region {region!r}")


def embed_tree_2d(
    tree: BinaryTree,
    style: TreeStyle | str = TreeStyle.ROOK_PAWN,
    depth: int = 3,
    *,
    spacing: int = SPACING,
    first: Color = Color.WHITE,
) -> TreeEmbedding:
    """Position plus the layouts that strategies navigate by."""
    style = TreeStyle(style)
    if not 0 <= depth <= MAX_DEPTH:
        raise LayoutError(f"tree depth must be between 0 and {MAX_DEPTH}, got {depth}")
    if spacing < SPACING:
        raise LayoutError(f"channel spacing below {SPACING} lets subtrees touch")
    if not tree(()):
        raise LayoutError("the tree has no root")
    if style is not TreeStyle.SYMMETRIC:
        layout, regions, overrides = _render(style, tree, depth, spacing, free_king=True)
        to_move = Color.BLACK if style is TreeStyle.ZUGZWANG else Color.WHITE
        board = Board(2, tuple(regions), tuple(overrides.items()))
        return TreeEmbedding(Position.create(board, to_move), layout)
    layout, regions, overrides = _render(TreeStyle.ROOK_PAWN, tree, depth, spacing, free_king=False)
    layout = _retag(layout, TreeStyle.SYMMETRIC, Color.BLACK, 1)
    dual = _retag(layout, TreeStyle.SYMMETRIC, Color.WHITE, -1)
    all_regions = list(regions) + [_dual_region(region) for region in regions]
    table = dict(overrides)
    table.update({_turn(square, -1): _swap(value) for square, value in overrides.items()})
    board = Board(2, tuple(all_regions), tuple(table.items()))
    return TreeEmbedding(Position.create(board, first), layout, dual)


def _retag(layout: ChannelLayout, style: TreeStyle, climber: Color, turn: int) -> ChannelLayout:
    return ChannelLayout(
        style=style,
        depth=layout.depth,
        spacing=layout.spacing,
        climber=climber,
        top=layout.top,
        root=layout.root,
        entry=layout.entry,
        start=layout.start,
        nodes=layout.nodes,
        parents=layout.parents,
        bands=layout.bands,
        traps=layout.traps,
        follower=layout.follower,
        turn=turn,
    )


def gen_tree_2d(
    tree: BinaryTree, style: TreeStyle | str = TreeStyle.ROOK_PAWN, depth: int = 3, **options: object
) -> Position:
    return embed_tree_2d(tree, style, depth, **options).position  # type: ignore[arg-type]


def binary_from_children(children: Callable[[Address], int]) -> BinaryTree:
    """A binary tree from a child-count function on addresses (counts above two are rejected)."""

    def member(address: Address) -> bool:
        if not address:
            return True
        count = children(address[:-1])
        if count > 2:
            raise LayoutError(f"node {address[:-1]} has {count} children; plane channels branch in two")
        return address[-1] < count and member(address[:-1])

    return member


__all__ = [
    "Address",
    "BinaryTree",
    "TreeStyle",
    "ChannelLayout",
    "TreeEmbedding",
    "SPACING",
    "MAX_DEPTH",
    "full_tree",
    "trap_tree",
    "path_tree",
    "binary_from_children",
    "embed_tree_2d",
    "gen_tree_2d",
]
