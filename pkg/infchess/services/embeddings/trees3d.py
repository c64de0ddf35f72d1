"""Well-founded trees built as king staircases in space.

Every king square of the construction lies on the plane ``y = x + z - 1``. A
staircase climbs one step along ``(0, 1, 1)`` or ``(1, 1, 0)`` per move and is
lined with a fixed pawn pattern on each layer; white checks by pushing the pawn
under the square the black king just left, which also protects the previous
checker. Tree nodes become pieces of staircase:

* a leaf is a capped end: the next check mates;
* a node with one child is a single straight step;
* a node with several children is a trunk with one side exit per child,
  turning the staircase onto the other axis; the trunk is capped above the
  last exit;
* an omega node is a trunk whose next square is held by a black bishop. The
  checker for the entry is one rank short, so white needs a quiet move and
  black spends that tempo sliding the bishop up the trunk; how far it goes
  decides which exits the king can still reach.

Omega nodes are laid out for their sampled children only. An optional far
region gives black the mate-in-two threat against a caged white king.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from infchess.core.errors import LayoutError
from infchess.models.board import Board, Square
from infchess.models.ordinal import Ordinal
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import Position
from infchess.services.arenas import MoveRef
from infchess.services.certificates import (
    CertNode,
    Mode,
    MoveEdge,
    ValueCertificate,
    black,
    black_move,
    family,
    leaf,
    white,
)
from infchess.services.trees import Leaf, Node, OmegaNode, WFTree, rank

logger = logging.getLogger(__name__)

ROOT_LATERAL = 5
ROOT_LAYER = 1
FIRST_JUNCTION = 4
MIN_SPACING = 5
# S0 and S1 of a side exit; the child starts on the third square
EXIT_STEPS = 3
COUNTER_THREAT_ORIGIN: Square = (-40, -40, 0)

UP: Square = (0, 1, 0)

WP = Piece(Color.WHITE, Kind.PAWN)
BP = Piece(Color.BLACK, Kind.PAWN)
WR = Piece(Color.WHITE, Kind.ROOK)
WK = Piece(Color.WHITE, Kind.KING)
BK = Piece(Color.BLACK, Kind.KING)
BB = Piece(Color.BLACK, Kind.BISHOP)

# (lateral offset, rank above the layer base, colour); the king squares are ranks 4 and 5 of offset 0
_PATTERN: tuple[tuple[int, int, Color], ...] = (
    (0, 1, Color.WHITE),
    (-1, 2, Color.WHITE),
    (0, 2, Color.BLACK),
    (1, 2, Color.WHITE),
    (-1, 3, Color.BLACK),
    (0, 3, Color.WHITE),
    (1, 3, Color.BLACK),
    (-1, 4, Color.WHITE),
    (1, 4, Color.WHITE),
    (-1, 5, Color.WHITE),
    (1, 5, Color.WHITE),
)


class SpaceBounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_sites: int = Field(default=400, ge=1)
    max_sample: int = Field(default=8, ge=1)
    max_depth: int = Field(default=10, ge=1)


class SiteKind(str, Enum):
    LEAF = "leaf"
    STEP = "step"
    BRANCH = "branch"
    OMEGA = "omega"


def _add(a: Square, b: Square, times: int = 1) -> Square:
    return tuple(x + times * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Stair:
    """A staircase climbing along x (``axis`` 0) or z (``axis`` 2) at a fixed lateral coordinate."""

    axis: int
    lateral: int

    def square(self, layer: int, offset: int, rank: int) -> Square:
        y = layer + rank + self.lateral - 5
        if self.axis == 2:
            return (self.lateral + offset, y, layer)
        return (layer, y, self.lateral + offset)

    def king(self, layer: int) -> Square:
        return self.square(layer, 0, 4)

    @property
    def step(self) -> Square:
        return (0, 1, 1) if self.axis == 2 else (1, 1, 0)

    def turned(self, layer: int) -> Stair:
        """The side staircase leaving the king square of ``layer``; its first layer is ``lateral + 1``."""
        return Stair(2 - self.axis, layer)


@dataclass(frozen=True)
class Site:
    """Where one tree node went: its staircase and the layer the king enters on."""

    path: tuple[int, ...]
    kind: SiteKind
    stair: Stair
    layer: int
    junctions: tuple[tuple[int, int], ...] = ()
    spacing: int = 0
    children: tuple[Site, ...] = ()

    @property
    def start(self) -> Square:
        return self.stair.king(self.layer)

    def junction_layer(self, label: int) -> int:
        for known, layer in self.junctions:
            if known == label:
                return layer
        raise LayoutError(f"node {self.path} has no exit {label}")

    def exit_squares(self, label: int) -> tuple[Square, Square, Square, Square]:
        """Junction square, the two exit squares and the child's first square."""
        layer = self.junction_layer(label)
        side = self.stair.turned(layer)
        base = self.stair.lateral + 1
        return self.stair.king(layer), side.king(base), side.king(base + 1), side.king(base + 2)

    def child(self, label: int) -> Site:
        for (known, _), site in zip(self.junctions, self.children):
            if known == label:
                return site
        if self.kind is SiteKind.STEP and label == 0:
            return self.children[0]
        raise LayoutError(f"node {self.path} has no child {label}")

    @property
    def bishop(self) -> Square | None:
        return self.stair.king(self.layer + 1) if self.kind is SiteKind.OMEGA else None

    def bishop_distance(self, label: int) -> int:
        """Distance that parks the bishop two squares above exit ``label``."""
        return self.spacing * label + 1

    @property
    def delayed_pawn(self) -> Square | None:
        """The checker that starts one rank short below an omega entry."""
        if self.kind is not SiteKind.OMEGA:
            return None
        return self.stair.square(self.layer - 1, 0, 2)


@dataclass(frozen=True, eq=False)
class SpaceLayout:
    root: Site
    samples: tuple[int, ...] | None
    predecessors: Mapping[Square, Square]
    owners: Mapping[Square, Site]
    dead_ends: frozenset[Square]
    threat_king: Square | None = None
    _successors: dict[Square, tuple[Square, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        found: dict[Square, list[Square]] = {}
        for square, previous in self.predecessors.items():
            found.setdefault(previous, []).append(square)
        object.__setattr__(self, "_successors", {k: tuple(sorted(v)) for k, v in found.items()})

    climber = Color.BLACK
    pusher_color = Color.WHITE

    @property
    def start(self) -> Square:
        return self.root.start

    def predecessor(self, square: Square) -> Square | None:
        return self.predecessors.get(tuple(square))

    def successors(self, square: Square) -> tuple[Square, ...]:
        return self._successors.get(tuple(square), ())

    def push_square(self, square: Square) -> Square:
        return _add(tuple(square), UP, -1)

    def in_channel(self, square: Square) -> bool:
        return tuple(square) in self.predecessors

    def site_at(self, square: Square) -> Site | None:
        return self.owners.get(tuple(square))

    def branch(self, square: Square, label: int) -> Square | None:
        """Successor of ``square`` towards child ``label`` of the node that owns it."""
        site = self.site_at(square)
        if site is None:
            return None
        options = self.successors(square)
        if site.kind in (SiteKind.BRANCH, SiteKind.OMEGA):
            for known, layer in site.junctions:
                if known == label and site.stair.king(layer) == tuple(square):
                    _, exit_square, _, _ = site.exit_squares(label)
                    return exit_square
            trunk = _add(tuple(square), site.stair.step)
            return trunk if trunk in options else None
        return options[0] if options else None

    def sites(self) -> list[Site]:
        found: list[Site] = []
        pending = [self.root]
        while pending:
            site = pending.pop()
            found.append(site)
            pending.extend(reversed(site.children))
        return found


@dataclass(frozen=True, eq=False)
class SpaceEmbedding:
    position: Position
    layout: SpaceLayout
    tree: WFTree


class _Canvas:
    def __init__(self) -> None:
        self.table: dict[Square, Piece | None] = {}

    def put(self, square: Square, piece: Piece | None) -> None:
        self.table[square] = piece

    def layer(self, stair: Stair, layer: int, *, pushed: bool = False) -> None:
        for offset, rank_, color in _PATTERN:
            self.put(stair.square(layer, offset, rank_), Piece(color, Kind.PAWN))
        self.put(stair.king(layer), WP if pushed else None)
        self.put(stair.square(layer, 0, 5), None)
        if pushed:
            self.put(stair.square(layer, 0, 3), None)

    def cap(self, stair: Stair, layer: int) -> None:
        self.put(stair.square(layer, 0, 2), WP)

    def delay(self, stair: Stair, layer: int) -> None:
        self.put(stair.square(layer, 0, 2), WP)
        self.put(stair.square(layer, 0, 3), None)


def _labelled(tree: WFTree, samples: tuple[int, ...] | None) -> list[tuple[int, WFTree]]:
    if isinstance(tree, Node):
        return list(enumerate(tree.children))
    if isinstance(tree, OmegaNode):
        return [(n, tree.child(n)) for n in sorted(set(samples or tree.samples))]
    return []


class _Planner:
    def __init__(self, samples: tuple[int, ...] | None, bounds: SpaceBounds) -> None:
        self.samples = samples
        self.bounds = bounds
        self.canvas = _Canvas()
        self.predecessors: dict[Square, Square] = {}
        self.owners: dict[Square, Site] = {}
        self.dead_ends: set[Square] = set()
        self.sites = 0
        self._extents: dict[int, tuple[WFTree, tuple[int, int]]] = {}

    def sample_set(self, tree: OmegaNode) -> tuple[int, ...]:
        samples = self.samples or tree.samples
        if not samples or min(samples) < 1 or max(samples) > self.bounds.max_sample:
            raise LayoutError(f"omega samples must lie in 1..{self.bounds.max_sample}, got {samples}")
        return tuple(sorted(set(samples)))

    def extent(self, tree: WFTree, depth: int = 0) -> tuple[int, int]:
        """Layers used along the node's own axis and the reach of its exits sideways."""
        if depth > self.bounds.max_depth:
            raise LayoutError(f"tree deeper than {self.bounds.max_depth}")
        key = id(tree)
        if key in self._extents:
            return self._extents[key][1]
        if isinstance(tree, Leaf):
            found = (2, 1)
        elif isinstance(tree, Node) and len(tree.children) == 1:
            length, width = self.extent(tree.children[0], depth + 1)
            found = (1 + length, max(1, width))
        else:
            exits, _ = self.junctions(tree, depth)
            top = exits[-1][2] + (3 if isinstance(tree, OmegaNode) else 2)
            length = max([top] + [offset + self.extent(child, depth + 1)[1] for _, child, offset in exits])
            width = max(EXIT_STEPS + self.extent(child, depth + 1)[0] for _, child, _ in exits)
            found = (length, width)
        self._extents[key] = (tree, found)
        return found

    def junctions(self, tree: WFTree, depth: int) -> tuple[list[tuple[int, WFTree, int]], int]:
        if isinstance(tree, OmegaNode):
            labelled = [(n, tree.child(n)) for n in self.sample_set(tree)]
            spacing = max(MIN_SPACING, *(self.extent(child, depth + 1)[1] + 4 for _, child in labelled))
            return [(n, child, spacing * n) for n, child in labelled], spacing
        offset = FIRST_JUNCTION
        exits = []
        for label, child in _labelled(tree, None):
            exits.append((label, child, offset))
            offset += max(MIN_SPACING, self.extent(child, depth + 1)[1] + 4)
        return exits, 0

    def place(self, tree: WFTree, path: tuple[int, ...], stair: Stair, layer: int, previous: Square) -> Site:
        self.sites += 1
        if self.sites > self.bounds.max_sites:
            raise LayoutError(f"more than {self.bounds.max_sites} tree nodes to lay out")
        if len(path) > self.bounds.max_depth:
            raise LayoutError(f"tree deeper than {self.bounds.max_depth}")
        canvas = self.canvas
        start = stair.king(layer)
        self.predecessors[start] = previous
        if isinstance(tree, Leaf):
            canvas.layer(stair, layer)
            canvas.layer(stair, layer + 1)
            canvas.cap(stair, layer + 2)
            self.dead_ends.add(start)
            site = Site(path, SiteKind.LEAF, stair, layer)
            self.owners[start] = site
            return site
        if isinstance(tree, Node) and len(tree.children) == 1:
            canvas.layer(stair, layer)
            child = self.place(tree.children[0], (*path, 0), stair, layer + 1, start)
            site = Site(path, SiteKind.STEP, stair, layer, children=(child,))
            self.owners[start] = site
            return site
        if not isinstance(tree, (Node, OmegaNode)):
            raise LayoutError(f"not a tree: {tree!r}")
        omega = isinstance(tree, OmegaNode)
        exits, spacing = self.junctions(tree, len(path))
        last = exits[-1][2]
        top = last + (3 if omega else 1)
        for offset in range(top + 1):
            canvas.layer(stair, layer + offset)
        if omega:
            canvas.put(stair.king(layer + 1), BB)
            canvas.delay(stair, layer - 1)
        else:
            canvas.cap(stair, layer + last + 2)
        climb = top if omega else last
        for offset in range(1, climb + 1):
            self.predecessors[stair.king(layer + offset)] = stair.king(layer + offset - 1)
        children = []
        base = stair.lateral + 1
        for label, child, offset in exits:
            junction = stair.king(layer + offset)
            side = stair.turned(layer + offset)
            canvas.layer(side, base)
            canvas.layer(side, base + 1)
            self.predecessors[side.king(base)] = junction
            self.predecessors[side.king(base + 1)] = side.king(base)
            children.append(self.place(child, (*path, label), side, base + 2, side.king(base + 1)))
        kind = SiteKind.OMEGA if omega else SiteKind.BRANCH
        site = Site(
            path,
            kind,
            stair,
            layer,
            junctions=tuple((label, layer + offset) for label, _, offset in exits),
            spacing=spacing,
            children=tuple(children),
        )
        for offset in range(climb + 1):
            self.owners[stair.king(layer + offset)] = site
        return site


def counter_threat(origin: Square = COUNTER_THREAT_ORIGIN) -> dict[Square, Piece]:
    """A white king caged by its own men; black mates in two with a pawn step and a capture."""
    pieces: dict[Square, Piece] = {origin: WK}
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            for dz in (-1, 0, 1):
                if (dx, dy, dz) != (0, 0, 0) and sum(map(abs, (dx, dy, dz))) <= 2:
                    pieces[_add(origin, (dx, dy, dz))] = WP
    for offset in ((1, 1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1)):
        pieces[_add(origin, offset)] = WR
    pieces[_add(origin, (2, 3, 0))] = BP
    pieces[_add(origin, (1, 2, 1))] = BP
    return pieces


def _check_rays(layout: SpaceLayout, table: Mapping[Square, Piece | None]) -> None:
    occupied = [square for square, piece in table.items() if piece is not None]
    reach = max(max(abs(v) for v in square) for square in occupied) + 2
    for site in layout.sites():
        if site.kind is not SiteKind.OMEGA:
            continue
        square = site.bishop
        assert square is not None
        for _ in range(2 * reach):
            square = _add(square, site.stair.step)
            if table.get(square) is not None and square != site.bishop:
                raise LayoutError(f"the bishop ray of node {site.path} runs into {square}")


def embed_tree_3d(
    tree: WFTree,
    samples: tuple[int, ...] | None = None,
    *,
    bounds: SpaceBounds | None = None,
    threat: bool = True,
) -> SpaceEmbedding:
    """Lays ``tree`` out as staircases; omega nodes keep the children at ``samples`` (their own by default)."""
    bounds = bounds or SpaceBounds()
    planner = _Planner(samples, bounds)
    planner.extent(tree)
    stair = Stair(2, ROOT_LATERAL)
    canvas = planner.canvas
    for layer in range(ROOT_LAYER - 3, ROOT_LAYER):
        canvas.layer(stair, layer, pushed=layer < ROOT_LAYER - 1)
    root = planner.place(tree, (), stair, ROOT_LAYER, stair.king(ROOT_LAYER - 1))
    canvas.put(root.start, BK)
    threat_king = None
    if threat:
        canvas.table.update(counter_threat())
        threat_king = COUNTER_THREAT_ORIGIN
    layout = SpaceLayout(
        root=root,
        samples=samples,
        predecessors=dict(planner.predecessors),
        owners=dict(planner.owners),
        dead_ends=frozenset(planner.dead_ends),
        threat_king=threat_king,
    )
    _check_rays(layout, canvas.table)
    pieces = {square: piece for square, piece in canvas.table.items() if piece is not None}
    board = Board.build(3, pieces)
    logger.debug("Embedded tree in space: %d sites, %d pieces", planner.sites, len(pieces))
    return SpaceEmbedding(Position.create(board, Color.WHITE), layout, tree)


def gen_tree_3d(
    tree: WFTree,
    samples: tuple[int, ...] | None = None,
    *,
    bounds: SpaceBounds | None = None,
    threat: bool = True,
) -> tuple[Position, SpaceLayout]:
    embedding = embed_tree_3d(tree, samples, bounds=bounds, threat=threat)
    return embedding.position, embedding.layout


def gen_stairway(steps: int = 24, *, threat: bool = False) -> Position:
    """A straight staircase of ``steps`` checks ending in a capped dead-end; the king starts on b:e5."""
    if steps < 0:
        raise LayoutError("a stairway needs a non-negative number of steps")
    tree: WFTree = Leaf()
    for _ in range(steps):
        tree = Node((tree,))
    return embed_tree_3d(tree, threat=threat).position


STAIRWAY_LINE = "1.a:e4+ Kc:e6 2.b:e5+ Kd:e7 3.c:e6+ Ke:e8 4.d:e7+"


# --- certificates --------------------------------------------------------------------


def _check(previous: Square) -> MoveRef:
    """The push into the square the king just left."""
    return MoveRef(_add(previous, UP, -1), previous)


class _CertificateBuilder:
    def __init__(self, layout: SpaceLayout) -> None:
        self.layout = layout

    def site(self, site: Site, previous: Square) -> CertNode:
        """King on ``site.start`` having come from ``previous``; white to move."""
        if site.kind is SiteKind.LEAF:
            return white(_check(previous), leaf(0))
        if site.kind is SiteKind.STEP:
            child = site.children[0]
            return white(_check(previous), black_move(MoveRef(site.start, child.start), self.site(child, site.start)))
        if site.kind is SiteKind.BRANCH:
            return self.trunk(site, site.layer, previous)
        return self.omega(site, previous)

    def exit(self, site: Site, label: int) -> CertNode:
        """King on the first exit square; white to move."""
        junction, first, second, third = site.exit_squares(label)
        child = site.child(label)
        return white(
            _check(junction),
            black_move(
                MoveRef(first, second),
                white(_check(first), black_move(MoveRef(second, third), self.site(child, second))),
            ),
        )

    def trunk(self, site: Site, layer: int, previous: Square) -> CertNode:
        here = site.stair.king(layer)
        edges = []
        top = site.junctions[-1][1]
        for label, junction in site.junctions:
            if junction == layer:
                _, first, _, _ = site.exit_squares(label)
                edges.append(MoveEdge(MoveRef(here, first), self.exit(site, label)))
        if layer < top:
            above = site.stair.king(layer + 1)
            edges.append(MoveEdge(MoveRef(here, above), self.trunk(site, layer + 1, here)))
        return white(_check(previous), black(*edges))

    def climb(self, site: Site, layer: int, previous: Square, label: int) -> CertNode:
        here = site.stair.king(layer)
        if layer == site.junction_layer(label):
            _, first, _, _ = site.exit_squares(label)
            return white(_check(previous), black_move(MoveRef(here, first), self.exit(site, label)))
        above = site.stair.king(layer + 1)
        return white(_check(previous), black_move(MoveRef(here, above), self.climb(site, layer + 1, here, label)))

    def omega(self, site: Site, previous: Square) -> CertNode:
        delayed = site.delayed_pawn
        bishop = site.bishop
        assert delayed is not None and bishop is not None
        labels = tuple(label for label, _ in site.junctions)

        def template(n: int) -> CertNode:
            return self.climb(site, site.layer, previous, n)

        edge = family((bishop, site.stair.step), template, labels, step=site.spacing, offset=1)
        return white(MoveRef(delayed, _add(delayed, UP)), black(edge))


def build_embedding_certificate(tree: WFTree, position: Position, layout: SpaceLayout) -> ValueCertificate:
    """Lower certificate following the pusher's checks; its claim is at least the tree's rank."""
    if position.piece_at(layout.start) != BK or position.to_move is not Color.WHITE:
        raise LayoutError("position does not start with the black king at the root of the layout")
    _match(tree, layout.root, layout.samples)
    root = _CertificateBuilder(layout).site(layout.root, layout.predecessor(layout.start))  # type: ignore[arg-type]
    claim = root.claim
    if claim < rank(tree):
        raise LayoutError(f"certificate claims {claim}, below the rank {rank(tree)}")
    return ValueCertificate(Mode.LOWER, root)


def _match(tree: WFTree, site: Site, samples: tuple[int, ...] | None) -> None:
    expected = {
        Leaf: SiteKind.LEAF,
        OmegaNode: SiteKind.OMEGA,
    }.get(type(tree))
    if isinstance(tree, Node):
        expected = SiteKind.STEP if len(tree.children) == 1 else SiteKind.BRANCH
    if expected is not site.kind:
        raise LayoutError(f"layout node {site.path} is a {site.kind.value}, the tree has {type(tree).__name__}")
    labelled = _labelled(tree, samples)
    if site.kind is SiteKind.STEP:
        _match(labelled[0][1], site.children[0], samples)
        return
    if [label for label, _ in labelled] != [label for label, _ in site.junctions]:
        raise LayoutError(f"layout node {site.path} has exits {site.junctions}, the tree differs")
    for (_, child), child_site in zip(labelled, site.children):
        _match(child, child_site, samples)


def embedding_claim(tree: WFTree, samples: tuple[int, ...] | None = None) -> Ordinal:
    """Claim of the certificate for ``tree`` without building the position."""
    embedding = embed_tree_3d(tree, samples, threat=False)
    return build_embedding_certificate(tree, embedding.position, embedding.layout).claim


__all__ = [
    "ROOT_LATERAL",
    "ROOT_LAYER",
    "STAIRWAY_LINE",
    "SpaceBounds",
    "SiteKind",
    "Stair",
    "Site",
    "SpaceLayout",
    "SpaceEmbedding",
    "counter_threat",
    "embed_tree_3d",
    "gen_tree_3d",
    "gen_stairway",
    "build_embedding_certificate",
    "embedding_claim",
]
