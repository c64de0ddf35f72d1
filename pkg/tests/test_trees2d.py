import pytest

from infchess.core.errors import LayoutError
from infchess.models.pieces import Color, Kind, Piece
from infchess.services.embeddings import trees2d
from infchess.services.embeddings.trees2d import TreeStyle, embed_tree_2d, full_tree, trap_tree

BK = Piece(Color.BLACK, Kind.KING)
WK = Piece(Color.WHITE, Kind.KING)


def test_full_tree_channels_in_rook_pawn_style() -> None:
    embedding = embed_tree_2d(full_tree, TreeStyle.ROOK_PAWN, 2)
    layout, position = embedding.layout, embedding.position

    assert position.to_move is Color.WHITE
    assert len(layout.nodes) == 7
    assert layout.node_square(()) == (18, 6)
    assert layout.node_square((0,)) == (12, 12)
    assert layout.node_square((1,)) == (24, 12)
    assert layout.node_square((0, 0)) == (9, 15)
    assert layout.top == 15
    assert position.piece_at((18, 6)) == BK
    assert position.piece_at(layout.entry) is None


def test_channel_navigation() -> None:
    layout = embed_tree_2d(full_tree, "rook-pawn", 2).layout

    assert layout.successors((18, 6)) == ((17, 7), (19, 7))
    assert layout.branch((18, 6), 1) == (19, 7)
    assert layout.branch((12, 12), 0) == (11, 13)
    assert layout.predecessor((18, 6)) == (17, 5)
    assert layout.predecessor((13, 11)) == (14, 10)
    assert layout.address_at((12, 12)) == (0,)
    assert layout.address_at((13, 11)) is None
    assert layout.push_square((12, 12)) == (12, 11)


def test_live_branches_continue_in_a_zigzag() -> None:
    layout = embed_tree_2d(full_tree, "rook-pawn", 2).layout

    assert layout.successors((9, 15)) == ((10, 16),)
    assert layout.successors((10, 16)) == ((9, 17),)
    assert layout.predecessor((10, 16)) == (9, 15)
    assert layout.predecessor((9, 17)) == (10, 16)
    assert layout.in_channel((9, 1001))
    assert not layout.in_channel((0, 0))


def test_cut_tree_keeps_only_live_nodes() -> None:
    layout = embed_tree_2d(trap_tree(2), "pawn-check", 3).layout
    assert sorted(layout.nodes) == [(), (0,), (1,)]
    assert layout.bands == ()


def test_zugzwang_style_puts_black_to_move() -> None:
    layout_position = embed_tree_2d(trap_tree(2), TreeStyle.ZUGZWANG, 2)
    layout, position = layout_position.layout, layout_position.position

    assert position.to_move is Color.BLACK
    assert position.piece_at(layout.start) == BK
    assert position.piece_at(layout.follower) == WK
    assert len(layout.traps) == 2
    final = next(iter(layout.traps))
    cell, pusher = layout.trap_at(final)
    assert pusher == (cell[0], cell[1] - 1)
    assert layout.trap_at(layout.start) is None


def test_symmetric_style_has_a_tree_per_side() -> None:
    embedding = embed_tree_2d(full_tree, TreeStyle.SYMMETRIC, 1, first=Color.BLACK)
    black_tree = embedding.layout_for(Color.BLACK)
    white_tree = embedding.layout_for(Color.WHITE)

    assert embedding.position.to_move is Color.BLACK
    x, y = black_tree.node_square(())
    assert white_tree.node_square(()) == (-x, -y)
    assert embedding.position.piece_at((x, y)) == BK
    assert embedding.position.piece_at((-x, -y)) == WK
    assert white_tree.successors((-x, -y)) == ((-x + 1, -y - 1), (-x - 1, -y - 1))


def test_single_tree_has_no_white_climber() -> None:
    embedding = embed_tree_2d(full_tree, "pawn-check", 1)
    with pytest.raises(LayoutError, match="climbed by white"):
        embedding.layout_for(Color.WHITE)


@pytest.mark.parametrize(
    ("tree", "options", "message"),
    [
        (full_tree, {"depth": trees2d.MAX_DEPTH + 1}, "between 0"),
        (full_tree, {"depth": 2, "spacing": 2}, "spacing"),
        (trap_tree(0), {"depth": 2}, "no root"),
    ],
)
def test_bad_embeddings_raise(tree, options, message: str) -> None:
    with pytest.raises(LayoutError, match=message):
        embed_tree_2d(tree, **options)


def test_generated_position_matches_embedding() -> None:
    tree = trap_tree(3)
    assert trees2d.gen_tree_2d(tree, "rook-pawn", 3) == embed_tree_2d(tree, "rook-pawn", 3).position


def test_path_tree_membership() -> None:
    tree = trees2d.path_tree([0, 1])
    assert tree((0, 1, 0, 1))
    assert tree((1,))
    assert not tree((1, 0))
    with pytest.raises(LayoutError):
        trees2d.path_tree([2])


def test_binary_from_children() -> None:
    tree = trees2d.binary_from_children(lambda address: 2 if len(address) < 2 else 0)
    assert tree((0, 1))
    assert not tree((0, 1, 0))
    wide = trees2d.binary_from_children(lambda address: 3)
    with pytest.raises(LayoutError, match="branch in two"):
        wide((0,))
