import pytest

from infchess.core.errors import SampleMismatchError, TreeError
from infchess.models.ordinal import FamilyValueFormula, Ordinal, parse_ordinal
from infchess.services import trees


def test_builtin_ranks() -> None:
    assert trees.rank(trees.LEAF) == Ordinal.of(0)
    assert trees.rank(trees.chain(3)) == Ordinal.of(3)
    assert trees.rank(trees.comb(2)) == Ordinal.of(2)
    assert trees.rank(trees.fan(4)) == Ordinal.of(1)
    assert trees.rank(trees.fig_left()) == parse_ordinal("w + 2")
    assert trees.rank(trees.fig_right()) == parse_ordinal("w*2 + 3")
    assert trees.rank(trees.omega_times(3)) == parse_ordinal("w*3")


def test_figure_trees_match_their_text(fixture_dir) -> None:
    for name, build in (("fig_left", trees.fig_left), ("fig_right", trees.fig_right)):
        text = (fixture_dir / f"{name}.tree").read_text(encoding="utf-8")
        assert trees.format_tree(build()) == text.splitlines()[-1]
        assert trees.rank(trees.parse_tree(text)) == trees.rank(build())


def test_parse_inline_trees() -> None:
    assert trees.rank(trees.parse_tree("node(leaf, chain(2))")) == Ordinal.of(3)
    assert trees.rank(trees.parse_tree("fig-left")) == parse_ordinal("w + 2")
    tree = trees.parse_tree("omega(rank=w + n, samples=1..2, gen=omega-plus(0))")
    assert trees.rank(tree) == parse_ordinal("w*2")


def test_declared_rank_is_checked_at_samples() -> None:
    tree = trees.parse_tree("omega(rank=2n, samples=1..2, gen=chain)")
    with pytest.raises(SampleMismatchError) as info:
        trees.rank(tree)
    assert info.value.sample == 1
    assert info.value.actual == Ordinal.of(1)


@pytest.mark.parametrize("text", ["node()", "tree(1)", "chain(x)", "omega(rank=n)", "leaf leaf"])
def test_malformed_tree_text(text: str) -> None:
    with pytest.raises(TreeError):
        trees.parse_tree(text)


def test_samples_text() -> None:
    assert trees.parse_samples("1..3") == (1, 2, 3)
    assert trees.parse_samples("(1,2,5)") == (1, 2, 5)
    assert trees.format_samples((1, 2, 5)) == "(1,2,5)"
    assert trees.format_samples((2, 3, 4)) == "2..4"
    with pytest.raises(TreeError):
        trees.parse_samples("0..2")


def test_truncation_and_size() -> None:
    tree = trees.fig_left()
    assert trees.size(tree) == 12
    assert trees.rank(trees.truncate(tree)) == Ordinal.of(6)
    assert len(list(trees.walk(tree))) == trees.size(tree) - 1


def test_unnamed_generators_cannot_be_written() -> None:
    node = trees.OmegaNode(trees.chain, FamilyValueFormula.linear())
    with pytest.raises(TreeError):
        trees.format_tree(node)


def test_prepend_adds_one_per_step() -> None:
    assert trees.rank(trees.prepend(trees.LEAF)) == Ordinal.of(1)
    assert trees.rank(trees.prepend(trees.LEAF, 3)) == Ordinal.of(3)
    assert trees.rank(trees.prepend(trees.fig_left())) == parse_ordinal("w + 3")


def test_oplus_takes_the_supremum() -> None:
    assert trees.rank(trees.oplus(trees.chain, FamilyValueFormula.linear())) == parse_ordinal("w")
    towers = trees.oplus(trees.omega_times, FamilyValueFormula.linear(exponent=1))
    assert trees.rank(towers) == parse_ordinal("w^2")
    with pytest.raises(SampleMismatchError):
        trees.oplus(trees.chain, FamilyValueFormula.linear(b=1))
