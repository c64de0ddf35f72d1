"""Regenerates the position, certificate and tree files under ``fixtures/``."""

import argparse
import logging
from pathlib import Path

from infchess.core.config import get_settings
from infchess.models.board import Board
from infchess.models.position import Position
from infchess.services import notation, trees
from infchess.services.certificates import ValueCertificate, arena_for, dump_certificate
from infchess.services.embeddings import certify, figures, trees2d, trees3d
from infchess.services.solver import SearchBudget

logger = logging.getLogger("build_fixtures")

FIGURE_NOTES = {
    "fig2": "black rook above the king may climb any distance; value w",
    "fig2-left": "extra black rooks on the left; value w",
    "fig2-right": "extra black rooks on the right; value w",
}

CERTIFICATE_FILES = {
    "fig2": ("fig2_omega", "value w: climbing the rook d squares costs white d+1 checks"),
}

TREE_NOTES = {
    "fig_left": ("fig-left", "two steps below an omega fan of chains; rank w + 2"),
    "fig_right": ("fig-right", "three steps below a fan whose n-th branch has rank w + n; rank w*2 + 3"),
}


def _compact(position: Position) -> Position:
    """Drops explicit empty squares from boards without regions."""
    if position.board.regions:
        return position
    pieces = {square: piece for square, piece in position.board.overrides if piece is not None}
    return Position.create(Board.build(position.dims, pieces), position.to_move, position.counts, position.pawn_axis)


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)


def _write_position(path: Path, position: Position, comment: str) -> None:
    _write(path, notation.serialize_position(_compact(position), comments=[comment]))


def _write_certificate(path: Path, position: Position, cert: ValueCertificate, comment: str) -> None:
    arena, _ = arena_for(position, SearchBudget())
    _write(path, f"# {comment}\n" + dump_certificate(cert, arena))


def build(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for n in (3, 17):
        _write_position(
            out / f"fig1_n{n}.icn", figures.gen_mate_in_n(n), f"figure fig1 mate-in-{n}: four pieces, value {n}"
        )
    for name in figures.FIGURE_GENERATORS:
        if name == "fig1":
            continue
        note = FIGURE_NOTES.get(name, name)
        _write_position(out / f"{name.replace('-', '_')}.icn", figures.generate(name), f"figure {name}: {note}")
    for name in certify.CERTIFICATE_BUILDERS:
        position, cert = certify.build(name)
        stem, note = CERTIFICATE_FILES.get(name, (name.replace("-", "_"), f"builder {name}"))
        _write_certificate(out / f"{stem}.cert", position, cert, note)
    for stem, (builtin, note) in TREE_NOTES.items():
        _write(out / f"{stem}.tree", f"# {note}\n{_tree_text(builtin)}\n")
        tree = trees.BUILTINS[builtin]()
        position, layout = trees3d.gen_tree_3d(tree)
        _write_position(out / f"{stem}_3d.icn", position, f"tree {builtin} embedded in space")
        cert = trees3d.build_embedding_certificate(tree, position, layout)
        _write_certificate(out / f"{stem}_3d.cert", position, cert, f"tree {builtin}: pusher line, claim >= rank")
    _write_position(out / "stairway.icn", trees3d.gen_stairway(8), "stairway of eight checks into a dead end")
    _write_position(
        out / "tree2d_trap3.icn",
        trees2d.gen_tree_2d(trees2d.trap_tree(3), "rook-pawn", 3),
        "plane channels of a binary tree cut at depth 3, rook-pawn style",
    )


def _tree_text(builtin: str) -> str:
    return trees.format_tree(trees.BUILTINS[builtin]())


def main() -> None:
    parser = argparse.ArgumentParser(description="Regenerate the fixture files")
    parser.add_argument("--out", type=Path, help="Output directory (default: the configured fixture directory)")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    build(args.out or get_settings().fixture_dir)


if __name__ == "__main__":
    main()
