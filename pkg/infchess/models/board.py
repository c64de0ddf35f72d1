"""Sparse boards over Z^2 and Z^3: pattern regions layered under a finite override map."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from infchess.core.errors import BoardError, RegionOverlapError
from infchess.models.pieces import Color, Kind, Piece

logger = logging.getLogger(__name__)

Square = tuple[int, ...]
Vector = tuple[int, ...]
Box = tuple[tuple[int | None, int | None], ...]

# Unbounded lattice pairs are compared over this many points.
LATTICE_SCAN = 2048


class Coord(NamedTuple):
    file: int
    rank: int


class Coord3(NamedTuple):
    x: int
    y: int
    z: int


def shift(square: Square, direction: Vector, distance: int = 1) -> Square:
    return tuple(c + distance * d for c, d in zip(square, direction))


def chebyshev(a: Square, b: Square) -> int:
    return max(abs(x - y) for x, y in zip(a, b))


def square_color(square: Square) -> int:
    return sum(square) % 2


class Hit(NamedTuple):
    square: Square
    piece: Piece
    distance: int


@dataclass(frozen=True)
class Span:
    """Closed integer range; ``None`` marks an unbounded side."""

    lo: int | None = None
    hi: int | None = None

    def __post_init__(self) -> None:
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise BoardError(f"empty range {self.lo}..{self.hi}")

    def contains(self, value: int) -> bool:
        return (self.lo is None or value >= self.lo) and (self.hi is None or value <= self.hi)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def intersect(self, other: Span) -> Span | None:
        lo = _max_opt(self.lo, other.lo)
        hi = _min_opt(self.hi, other.hi)
        if lo is not None and hi is not None and lo > hi:
            return None
        return Span(lo, hi)

    def __len__(self) -> int:
        if not self.bounded:
            raise BoardError("unbounded span has no length")
        return self.hi - self.lo + 1  # type: ignore[operator]


def _max_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    return a if b is None else max(a, b)


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    return a if b is None else min(a, b)


class Region:
    """Infinite or finite pattern of identical pieces."""

    piece: Piece

    @property
    def dims(self) -> int:
        raise NotImplementedError

    def contains(self, square: Square) -> bool:
        raise NotImplementedError

    def ray_hit(self, origin: Square, direction: Vector, start: int = 1) -> int | None:
        """Smallest distance ``t >= start`` with ``origin + t*direction`` inside the region."""
        raise NotImplementedError

    def anchors(self) -> Iterator[tuple[int, int]]:
        """Finite (axis, value) bounds that shape the region."""
        raise NotImplementedError

    def cardinality(self) -> int | None:
        raise NotImplementedError

    def squares_in(self, box: Sequence[Span]) -> list[Square] | None:
        """Region squares inside ``box``; ``None`` when there are infinitely many."""
        raise NotImplementedError

    @property
    def period(self) -> int:
        return 1


@dataclass(frozen=True)
class RectFill(Region):
    spans: tuple[Span, ...]
    piece: Piece

    @property
    def dims(self) -> int:
        return len(self.spans)

    def contains(self, square: Square) -> bool:
        return all(span.contains(value) for span, value in zip(self.spans, square))

    def ray_hit(self, origin: Square, direction: Vector, start: int = 1) -> int | None:
        lo_t, hi_t = start, None
        for span, o, d in zip(self.spans, origin, direction):
            if d == 0:
                if not span.contains(o):
                    return None
                continue
            if d > 0:
                t_min = None if span.lo is None else span.lo - o
                t_max = None if span.hi is None else span.hi - o
            else:
                t_min = None if span.hi is None else o - span.hi
                t_max = None if span.lo is None else o - span.lo
            if t_min is not None:
                lo_t = max(lo_t, t_min)
            if t_max is not None:
                hi_t = t_max if hi_t is None else min(hi_t, t_max)
        if hi_t is not None and lo_t > hi_t:
            return None
        return lo_t

    def anchors(self) -> Iterator[tuple[int, int]]:
        for axis, span in enumerate(self.spans):
            for value in (span.lo, span.hi):
                if value is not None:
                    yield axis, value

    def cardinality(self) -> int | None:
        if not all(span.bounded for span in self.spans):
            return None
        total = 1
        for span in self.spans:
            total *= len(span)
        return total

    def squares_in(self, box: Sequence[Span]) -> list[Square] | None:
        commons = [span.intersect(limit) for span, limit in zip(self.spans, box)]
        if any(common is None for common in commons):
            return []
        if not all(common.bounded for common in commons):  # type: ignore[union-attr]
            return None
        ranges = [range(common.lo, common.hi + 1) for common in commons]  # type: ignore[arg-type, operator, union-attr]
        return list(itertools.product(*ranges))


@dataclass(frozen=True)
class LatticeFill(Region):
    base: Square
    step: Vector
    count: int | None
    piece: Piece

    def __post_init__(self) -> None:
        if len(self.base) != len(self.step):
            raise BoardError("lattice base and step differ in dimension")
        if not any(self.step):
            raise BoardError("lattice step must be nonzero")
        if self.count is not None and self.count < 1:
            raise BoardError("lattice count must be positive")

    @property
    def dims(self) -> int:
        return len(self.base)

    @property
    def period(self) -> int:
        return max(abs(s) for s in self.step)

    def point(self, index: int) -> Square:
        return shift(self.base, self.step, index)

    def _in_range(self, index: int) -> bool:
        return index >= 0 and (self.count is None or index < self.count)

    def index_of(self, square: Square) -> int | None:
        found: int | None = None
        for b, s, c in zip(self.base, self.step, square):
            if s == 0:
                if b != c:
                    return None
                continue
            candidate, rest = divmod(c - b, s)
            if rest or (found is not None and found != candidate):
                return None
            found = candidate
        if found is None or not self._in_range(found):
            return None
        return found

    def contains(self, square: Square) -> bool:
        return self.index_of(square) is not None

    def ray_hit(self, origin: Square, direction: Vector, start: int = 1) -> int | None:
        fixed: int | None = None
        lines: list[tuple[int, int]] = []
        for b, s, o, d in zip(self.base, self.step, origin, direction):
            if d == 0:
                if s == 0:
                    if b != o:
                        return None
                    continue
                candidate, rest = divmod(o - b, s)
                if rest or (fixed is not None and fixed != candidate):
                    return None
                fixed = candidate
            else:
                # distance along the ray as a function of the lattice index
                lines.append((d * (b - o), d * s))
        c0, c1 = lines[0]
        for k0, k1 in lines[1:]:
            if k1 == c1:
                if k0 != c0:
                    return None
                continue
            candidate, rest = divmod(c0 - k0, k1 - c1)
            if rest or (fixed is not None and fixed != candidate):
                return None
            fixed = candidate
        if fixed is not None:
            if not self._in_range(fixed):
                return None
            t = c0 + c1 * fixed
            return t if t >= start else None
        if c1 == 0:
            return None
        if c1 > 0:
            index = max(0, -((c0 - start) // c1))
            if not self._in_range(index):
                return None
            return c0 + c1 * index
        index = (c0 - start) // -c1
        if self.count is not None:
            index = min(index, self.count - 1)
        if index < 0:
            return None
        return c0 + c1 * index

    def anchors(self) -> Iterator[tuple[int, int]]:
        yield from enumerate(self.base)
        if self.count is not None:
            yield from enumerate(self.point(self.count - 1))

    def cardinality(self) -> int | None:
        return self.count

    def index_range(self, box: Sequence[Span]) -> tuple[int, int | None] | None:
        lo_i, hi_i = 0, None if self.count is None else self.count - 1
        for b, s, limit in zip(self.base, self.step, box):
            if s == 0:
                if not limit.contains(b):
                    return None
                continue
            low_bound, high_bound = (limit.lo, limit.hi) if s > 0 else (limit.hi, limit.lo)
            if low_bound is not None:
                lo_i = max(lo_i, -((b - low_bound) // s))
            if high_bound is not None:
                top = (high_bound - b) // s
                hi_i = top if hi_i is None else min(hi_i, top)
        if hi_i is not None and lo_i > hi_i:
            return None
        return lo_i, hi_i

    def squares_in(self, box: Sequence[Span]) -> list[Square] | None:
        bounds = self.index_range(box)
        if bounds is None:
            return []
        lo_i, hi_i = bounds
        if hi_i is None:
            return None
        return [self.point(i) for i in range(lo_i, hi_i + 1)]


def _overlap_squares(first: Region, second: Region) -> list[Square] | None:
    """Common squares of two regions, ``None`` if infinitely many."""
    if isinstance(first, RectFill) and isinstance(second, RectFill):
        return first.squares_in(second.spans)
    if isinstance(first, LatticeFill) and isinstance(second, RectFill):
        return first.squares_in(second.spans)
    if isinstance(first, RectFill) and isinstance(second, LatticeFill):
        return second.squares_in(first.spans)
    assert isinstance(first, LatticeFill) and isinstance(second, LatticeFill)
    if first.count is None and second.count is not None:
        first, second = second, first
    limit = first.count if first.count is not None else LATTICE_SCAN
    common = [first.point(i) for i in range(limit) if second.contains(first.point(i))]
    if first.count is None and common:
        return None
    return common


@lru_cache(maxsize=256)
def _region_overlaps(regions: tuple[Region, ...]) -> tuple[tuple[int, int, tuple[Square, ...] | None], ...]:
    found = []
    for i, j in itertools.combinations(range(len(regions)), 2):
        common = _overlap_squares(regions[i], regions[j])
        if common is None or common:
            found.append((i, j, None if common is None else tuple(common)))
    return tuple(found)


@lru_cache(maxsize=256)
def _anchor_box(regions: tuple[Region, ...], dims: int) -> tuple[Span, ...]:
    lows: list[int | None] = [None] * dims
    highs: list[int | None] = [None] * dims
    for region in regions:
        for axis, value in region.anchors():
            lows[axis] = _min_opt(lows[axis], value)
            highs[axis] = _max_opt(highs[axis], value)
    return tuple(Span(lo if lo is not None else 0, hi if hi is not None else 0) for lo, hi in zip(lows, highs))


def expand(box: Sequence[Span], margin: int) -> tuple[Span, ...]:
    return tuple(Span(span.lo - margin, span.hi + margin) for span in box)  # type: ignore[operator]


def box_squares(box: Sequence[Span]) -> Iterator[Square]:
    return itertools.product(*(range(span.lo, span.hi + 1) for span in box))  # type: ignore[operator]


_MISSING = object()


@dataclass(frozen=True, eq=False)
class Board:
    """Regions under a finite override map; an override of ``None`` is an explicitly empty square."""

    dims: int
    regions: tuple[Region, ...] = ()
    overrides: tuple[tuple[Square, Piece | None], ...] = ()
    _table: dict[Square, Piece | None] = field(init=False, repr=False)
    _protected: frozenset[Square] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.dims not in (2, 3):
            raise BoardError(f"unsupported dimension {self.dims}")
        for region in self.regions:
            if region.dims != self.dims:
                raise BoardError("region dimension does not match the board")
        table = {tuple(square): value for square, value in self.overrides}
        overlaps = _region_overlaps(self.regions)
        protected: set[Square] = set()
        for i, j, common in overlaps:
            if common is None:
                raise RegionOverlapError(
                    f"regions {i} and {j} overlap on infinitely many squares", first=i, second=j
                )
            for square in common:
                if square not in table:
                    raise RegionOverlapError(
                        f"regions {i} and {j} both claim {square}", first=i, second=j, square=square
                    )
                protected.add(square)
        for square in list(table):
            if square not in protected and table[square] == self.region_piece_at(square):
                del table[square]
        self._settle(table, frozenset(protected))

    def _settle(self, table: dict[Square, Piece | None], protected: frozenset[Square]) -> None:
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_protected", protected)
        object.__setattr__(self, "overrides", tuple(sorted(table.items(), key=lambda item: item[0])))

    @classmethod
    def build(
        cls,
        dims: int,
        pieces: Mapping[Square, Piece] | Iterable[tuple[Square, Piece]] = (),
        regions: Iterable[Region] = (),
        empty: Iterable[Square] = (),
    ) -> Board:
        items = pieces.items() if isinstance(pieces, Mapping) else pieces
        table: dict[Square, Piece | None] = {tuple(sq): p for sq, p in items}
        for square in empty:
            table[tuple(square)] = None
        return cls(dims, tuple(regions), tuple(table.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board):
            return NotImplemented
        return self.dims == other.dims and self.overrides == other.overrides and self.regions == other.regions

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.dims, self.regions, self.overrides))

    def region_piece_at(self, square: Square) -> Piece | None:
        for region in self.regions:
            if region.contains(square):
                return region.piece
        return None

    def piece_at(self, square: Square) -> Piece | None:
        value = self._table.get(tuple(square), _MISSING)
        if value is not _MISSING:
            return value  # type: ignore[return-value]
        return self.region_piece_at(square)

    def is_overridden(self, square: Square) -> bool:
        return square in self._table

    @cached_property
    def placed(self) -> tuple[tuple[Square, Piece], ...]:
        """Pieces standing on override squares."""
        return tuple((square, value) for square, value in self.overrides if value is not None)

    def first_occupied(
        self, origin: Square, direction: Vector, start: int = 1, limit: int | None = None
    ) -> Hit | None:
        """Nearest occupied square at distance ``start`` or more; ``None`` means empty forever.

        With ``limit`` set, ``None`` only means nothing was found up to that distance.
        """
        best: int | None = limit + 1 if limit is not None else None
        best_piece: Piece | None = None
        for square, value in self.placed:
            t = _ray_distance(origin, direction, square)
            if t is not None and t >= start and (best is None or t < best):
                best, best_piece = t, value
        for region in self.regions:
            t = region.ray_hit(origin, direction, start)
            while t is not None and (best is None or t < best) and shift(origin, direction, t) in self._table:
                t = region.ray_hit(origin, direction, t + 1)
            if t is not None and (best is None or t < best):
                best, best_piece = t, region.piece
        if best is None or best_piece is None:
            return None
        return Hit(shift(origin, direction, best), best_piece, best)

    @cached_property
    def anchor_box(self) -> tuple[Span, ...]:
        return _anchor_box(self.regions, self.dims)

    @cached_property
    def nearby_region_pieces(self) -> tuple[tuple[Square, Piece], ...]:
        """Region pieces in the anchor box or within two steps of an override."""
        margin = 2
        found: dict[Square, Piece] = {}
        box = expand(self.anchor_box, margin)
        for region in self.regions:
            squares = region.squares_in(box)
            for square in squares or ():
                if square not in self._table:
                    found[square] = region.piece
        offsets = list(itertools.product(range(-margin, margin + 1), repeat=self.dims))
        for square in self._table:
            for offset in offsets:
                near = shift(square, offset)
                if near in found or near in self._table:
                    continue
                content = self.region_piece_at(near)
                if content is not None:
                    found[near] = content
        return tuple(sorted(found.items(), key=lambda item: item[0]))

    def pieces(self, color: Color | None = None) -> list[tuple[Square, Piece]]:
        """Placed pieces plus nearby region pieces, optionally of one color."""
        result = [(sq, p) for sq, p in self.placed if color is None or p.color is color]
        result.extend(self.region_pieces(color))
        return result

    def region_pieces(self, color: Color | None = None) -> list[tuple[Square, Piece]]:
        if not any(color is None or region.piece.color is color for region in self.regions):
            return []
        return [(sq, p) for sq, p in self.nearby_region_pieces if color is None or p.color is color]

    def find(self, target: Piece) -> list[Square]:
        found = [sq for sq, p in self.placed if p == target]
        if any(region.piece == target for region in self.regions):
            found.extend(sq for sq, p in self.nearby_region_pieces if p == target)
        return found

    def census(self) -> dict[tuple[Color, Kind], int | None]:
        counts: dict[tuple[Color, Kind], int | None] = {}
        for _, value in self.placed:
            key = (value.color, value.kind)
            current = counts.get(key, 0)
            counts[key] = None if current is None else current + 1
        for region in self.regions:
            key = (region.piece.color, region.piece.kind)
            size = region.cardinality()
            current = counts.get(key, 0)
            if size is None or current is None:
                counts[key] = None
                continue
            covered = sum(1 for square in self._table if region.contains(square))
            counts[key] = current + size - covered
        return {key: value for key, value in counts.items() if value != 0}

    def with_changes(self, changes: Mapping[Square, Piece | None]) -> Board:
        """A board sharing the regions, with only the changed squares renormalised."""
        table = dict(self._table)
        for square, value in changes.items():
            square = tuple(square)
            if square not in self._protected and value == self.region_piece_at(square):
                table.pop(square, None)
            else:
                table[square] = value
        board = object.__new__(Board)
        object.__setattr__(board, "dims", self.dims)
        object.__setattr__(board, "regions", self.regions)
        board._settle(table, self._protected)
        return board


def _ray_distance(origin: Square, direction: Vector, square: Square) -> int | None:
    t: int | None = None
    for o, d, s in zip(origin, direction, square):
        delta = s - o
        if d == 0:
            if delta:
                return None
            continue
        candidate = delta * d
        if t is None:
            t = candidate
        elif t != candidate:
            return None
    if t is None or t < 1:
        return None
    return t


__all__ = [
    "Square",
    "Vector",
    "Coord",
    "Coord3",
    "Hit",
    "Span",
    "Region",
    "RectFill",
    "LatticeFill",
    "Board",
    "shift",
    "chebyshev",
    "square_color",
    "expand",
    "box_squares",
]
