"""Direction tables for the plane and for space."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from infchess.models.board import Vector
from infchess.models.pieces import Kind


@dataclass(frozen=True)
class Geometry:
    dims: int
    rook_dirs: tuple[Vector, ...]
    bishop_dirs: tuple[Vector, ...]
    knight_steps: tuple[Vector, ...]

    @property
    def queen_dirs(self) -> tuple[Vector, ...]:
        return tuple(sorted(self.rook_dirs + self.bishop_dirs))

    @property
    def king_steps(self) -> tuple[Vector, ...]:
        return self.queen_dirs

    def slider_dirs(self, kind: Kind) -> tuple[Vector, ...]:
        if kind is Kind.ROOK:
            return self.rook_dirs
        if kind is Kind.BISHOP:
            return self.bishop_dirs
        if kind is Kind.QUEEN:
            return self.queen_dirs
        return ()

    def direction_index(self, direction: Vector) -> int:
        return self.queen_dirs.index(tuple(direction))

    def is_orthogonal(self, direction: Vector) -> bool:
        return sum(1 for d in direction if d) == 1

    def pawn_captures(self, forward: Vector) -> tuple[Vector, ...]:
        """Forward step combined with one step along each other axis."""
        axis = next(i for i, d in enumerate(forward) if d)
        offsets = []
        for other in range(self.dims):
            if other == axis:
                continue
            for sign in (-1, 1):
                offsets.append(tuple(forward[i] + (sign if i == other else 0) for i in range(self.dims)))
        return tuple(sorted(offsets))


def _units(dims: int) -> tuple[Vector, ...]:
    return tuple(sorted(v for v in itertools.product((-1, 0, 1), repeat=dims) if sum(map(abs, v)) == 1))


def _planar_diagonals(dims: int) -> tuple[Vector, ...]:
    return tuple(sorted(v for v in itertools.product((-1, 0, 1), repeat=dims) if sum(map(abs, v)) == 2))


PLANE = Geometry(
    dims=2,
    rook_dirs=_units(2),
    bishop_dirs=_planar_diagonals(2),
    knight_steps=tuple(sorted(v for v in itertools.product((-2, -1, 1, 2), repeat=2) if abs(v[0]) != abs(v[1]))),
)

# No triagonal (unicorn) directions and no knight rule in space.
SPACE = Geometry(dims=3, rook_dirs=_units(3), bishop_dirs=_planar_diagonals(3), knight_steps=())


def geometry_for(dims: int) -> Geometry:
    return PLANE if dims == 2 else SPACE


__all__ = ["Geometry", "PLANE", "SPACE", "geometry_for"]
