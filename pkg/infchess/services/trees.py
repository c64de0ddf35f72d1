"""Well-founded trees with omega-branching nodes, their ranks and a text format.

Text format::

    leaf
    node(<tree>, <tree>, ...)
    omega(rank=<formula in n>, samples=1..3, gen=<generator>[(<int>)])
    chain(3) | comb(2) | fan(4) | fig-left | fig-right

``rank`` in ``omega(...)`` is the declared rank of the n-th child.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator

from infchess.core.errors import MalformedFormulaError, SampleMismatchError, TreeError
from infchess.models.ordinal import (
    ZERO,
    Affine,
    FamilyValueFormula,
    Ordinal,
    eval_formula,
    parse_formula,
    succ,
    sup_family,
)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = (1, 2, 3)


class WFTree:
    """Base of the three tree shapes."""


@dataclass(frozen=True)
class Leaf(WFTree):
    def __str__(self) -> str:
        return "leaf"


@dataclass(frozen=True)
class Node(WFTree):
    children: tuple[WFTree, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise TreeError("a node needs at least one child; use a leaf")


@dataclass(frozen=True, eq=False)
class OmegaNode(WFTree):
    """Branching over every natural ``n >= 1``; ``formula`` is the declared rank of child ``n``."""

    generator: Callable[[int], WFTree]
    formula: FamilyValueFormula
    samples: tuple[int, ...] = DEFAULT_SAMPLES
    gen_text: str | None = field(default=None, compare=False)

    def child(self, n: int) -> WFTree:
        if n < 1:
            raise TreeError("omega children are numbered from 1")
        return self.generator(n)


LEAF = Leaf()


def rank(tree: WFTree) -> Ordinal:
    """Leaves 0, nodes the sup of successor ranks; omega nodes are checked at their samples."""
    if isinstance(tree, Leaf):
        return ZERO
    if isinstance(tree, Node):
        return max(succ(rank(child)) for child in tree.children)
    if isinstance(tree, OmegaNode):
        check_samples(tree)
        return sup_family(tree.formula.successor())
    raise TreeError(f"not a tree: {tree!r}")


def check_samples(tree: OmegaNode) -> None:
    for n in tree.samples:
        expected = eval_formula(tree.formula, n)
        actual = rank(tree.child(n))
        if actual != expected:
            raise SampleMismatchError(
                f"child {n} has rank {actual}, formula {tree.formula} says {expected}",
                sample=n,
                expected=expected,
                actual=actual,
            )


def children(tree: WFTree, samples: tuple[int, ...] | None = None) -> list[WFTree]:
    """Immediate successors; omega nodes contribute their sampled children."""
    if isinstance(tree, Node):
        return list(tree.children)
    if isinstance(tree, OmegaNode):
        return [tree.child(n) for n in samples or tree.samples]
    return []


def prepend(tree: WFTree, times: int = 1) -> WFTree:
    """The ``1 + T`` combinator, applied ``times`` times."""
    for _ in range(times):
        tree = Node((tree,))
    return tree


def oplus(
    family: Callable[[int], WFTree],
    formula: FamilyValueFormula,
    samples: tuple[int, ...] = DEFAULT_SAMPLES,
    gen_text: str | None = None,
) -> OmegaNode:
    tree = OmegaNode(family, formula, tuple(samples), gen_text)
    check_samples(tree)
    return tree


def truncate(tree: WFTree, samples: tuple[int, ...] | None = None) -> WFTree:
    """Finite tree that keeps only the sampled children of every omega node."""
    if isinstance(tree, Leaf):
        return tree
    if isinstance(tree, Node):
        return Node(tuple(truncate(child, samples) for child in tree.children))
    assert isinstance(tree, OmegaNode)
    return Node(tuple(truncate(tree.child(n), samples) for n in samples or tree.samples))


def walk(tree: WFTree, samples: tuple[int, ...] | None = None) -> Iterator[tuple[WFTree, WFTree]]:
    """Parent-child edges in depth-first order, omega nodes expanded at the samples."""
    for child in children(tree, samples):
        yield tree, child
        yield from walk(child, samples)


def size(tree: WFTree) -> int:
    return 1 + sum(size(child) for child in children(tree))


# --- builtins ------------------------------------------------------------------------


def chain(length: int) -> WFTree:
    """A path with ``length`` edges; rank ``length``."""
    if length < 0:
        raise TreeError("chain length must be non-negative")
    return prepend(LEAF, length)


def comb(teeth: int) -> WFTree:
    """A spine where every spine node also carries a leaf; rank ``teeth``."""
    tree: WFTree = LEAF
    for _ in range(teeth):
        tree = Node((tree, LEAF))
    return tree


def fan(width: int) -> WFTree:
    if width < 1:
        raise TreeError("fan width must be positive")
    return Node(tuple(LEAF for _ in range(width)))


def _omega_chain() -> OmegaNode:
    return OmegaNode(chain, FamilyValueFormula.linear(), DEFAULT_SAMPLES, "chain")


def _omega_plus(offset: int) -> Callable[[int], WFTree]:
    """Children of rank ``w + n + offset``."""

    def generate(n: int) -> WFTree:
        return prepend(_omega_chain(), n + offset)

    return generate


def omega_times(k: int) -> WFTree:
    """A tree of rank ``w*k``."""
    if k < 0:
        raise TreeError("multiplier must be non-negative")
    tree: WFTree = LEAF
    for level in range(k):
        base = tree
        tail: tuple[tuple[int, Affine], ...] = ((1, Affine(0, level)),) if level else ()
        formula = FamilyValueFormula((*tail, (0, Affine(1, 0))))
        tree = OmegaNode(lambda n, base=base: prepend(base, n), formula, DEFAULT_SAMPLES, f"omega-ladder({level})")
    return tree


def _omega_ladder(level: int) -> Callable[[int], WFTree]:
    base = omega_times(level)
    return lambda n: prepend(base, n)


GENERATORS: dict[str, Callable[[int], Callable[[int], WFTree]]] = {
    "chain": lambda _: chain,
    "prepend-chain": lambda k: (lambda n: prepend(chain(n), k)),
    "omega-plus": _omega_plus,
    "omega-ladder": _omega_ladder,
    "omega-times": lambda _: omega_times,
}


def fig_left() -> WFTree:
    """Two steps below an omega fan of chains; rank ``w + 2``."""
    return prepend(_omega_chain(), 2)


def fig_right() -> WFTree:
    """Three steps below a fan whose n-th branch has rank ``w + n``; rank ``w*2 + 3``."""
    node = OmegaNode(_omega_plus(0), parse_formula("w + n"), DEFAULT_SAMPLES, "omega-plus(0)")
    return prepend(node, 3)


BUILTINS: dict[str, Callable[..., WFTree]] = {
    "chain": chain,
    "comb": comb,
    "fan": fan,
    "fig-left": fig_left,
    "fig-right": fig_right,
}


def make_generator(text: str) -> Callable[[int], WFTree]:
    match = re.fullmatch(r"([a-z-]+)(?:\((\d+)\))?", text)
    if not match or match.group(1) not in GENERATORS:
        raise TreeError(f"unknown generator {text!r}")
    return GENERATORS[match.group(1)](int(match.group(2) or 0))


# --- text format ---------------------------------------------------------------------


def parse_samples(text: str) -> tuple[int, ...]:
    """``1..3``, ``1,2,5`` or ``(1,2,5)``."""
    text = text.strip().strip("()")
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = tuple(range(int(lo), int(hi) + 1))
        else:
            values = tuple(int(part) for part in text.split(",") if part)
    except ValueError as exc:
        raise TreeError(f"bad sample set {text!r}") from exc
    if not values or min(values) < 1:
        raise TreeError(f"samples must be positive: {text!r}")
    return values


def format_samples(samples: tuple[int, ...]) -> str:
    if len(samples) > 1 and list(samples) == list(range(samples[0], samples[-1] + 1)):
        return f"{samples[0]}..{samples[-1]}"
    return "(" + ",".join(str(n) for n in samples) + ")"


class _TreeParser:
    def __init__(self, text: str) -> None:
        self.text = re.sub(r"#[^\n]*", "", text)
        self.pos = 0

    def error(self, message: str) -> TreeError:
        return TreeError(f"{message} at offset {self.pos}")

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def name(self) -> str:
        self.skip()
        match = re.compile(r"[a-z][a-z-]*").match(self.text, self.pos)
        if not match:
            raise self.error("expected a name")
        self.pos = match.end()
        return match.group(0)

    def expect(self, char: str) -> None:
        self.skip()
        if not self.text.startswith(char, self.pos):
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def peek(self, char: str) -> bool:
        self.skip()
        return self.text.startswith(char, self.pos)

    def raw_argument(self) -> str:
        """Text up to the next top-level comma or closing parenthesis."""
        self.skip()
        depth = 0
        start = self.pos
        while self.pos < len(self.text):
            char = self.text[self.pos]
            if char == "(":
                depth += 1
            elif char == ")":
                if depth == 0:
                    break
                depth -= 1
            elif char == "," and depth == 0:
                break
            self.pos += 1
        return self.text[start : self.pos].strip()

    def tree(self) -> WFTree:
        keyword = self.name()
        if keyword == "leaf":
            return LEAF
        if keyword == "node":
            self.expect("(")
            items = [self.tree()]
            while self.peek(","):
                self.expect(",")
                items.append(self.tree())
            self.expect(")")
            return Node(tuple(items))
        if keyword == "omega":
            return self.omega()
        if keyword in BUILTINS:
            if keyword.startswith("fig-"):
                return BUILTINS[keyword]()
            self.expect("(")
            argument = self.raw_argument()
            self.expect(")")
            if not argument.isdigit():
                raise self.error(f"{keyword} needs an integer")
            return BUILTINS[keyword](int(argument))
        raise self.error(f"unknown tree {keyword!r}")

    def omega(self) -> WFTree:
        self.expect("(")
        fields: dict[str, str] = {}
        while True:
            key = self.name()
            self.expect("=")
            fields[key] = self.raw_argument()
            if self.peek(")"):
                self.expect(")")
                break
            self.expect(",")
        if set(fields) - {"rank", "samples", "gen"} or "rank" not in fields or "gen" not in fields:
            raise self.error("omega needs rank=, gen= and optionally samples=")
        try:
            formula = parse_formula(fields["rank"])
        except MalformedFormulaError as exc:
            raise self.error(str(exc)) from exc
        samples = parse_samples(fields.get("samples", "1..3"))
        return OmegaNode(make_generator(fields["gen"]), formula, samples, fields["gen"])

    def parse(self) -> WFTree:
        result = self.tree()
        self.skip()
        if self.pos != len(self.text):
            raise self.error("trailing text")
        return result


def parse_tree(text: str) -> WFTree:
    return _TreeParser(text).parse()


def format_tree(tree: WFTree) -> str:
    if isinstance(tree, Leaf):
        return "leaf"
    if isinstance(tree, Node):
        return "node(" + ", ".join(format_tree(child) for child in tree.children) + ")"
    assert isinstance(tree, OmegaNode)
    if tree.gen_text is None:
        raise TreeError("omega node built from an unnamed generator cannot be written out")
    return f"omega(rank={tree.formula}, samples={format_samples(tree.samples)}, gen={tree.gen_text})"


__all__ = [
    "WFTree",
    "Leaf",
    "Node",
    "OmegaNode",
    "LEAF",
    "rank",
    "check_samples",
    "children",
    "prepend",
    "oplus",
    "truncate",
    "walk",
    "size",
    "chain",
    "comb",
    "fan",
    "omega_times",
    "fig_left",
    "fig_right",
    "GENERATORS",
    "BUILTINS",
    "make_generator",
    "parse_samples",
    "format_samples",
    "parse_tree",
    "format_tree",
]
