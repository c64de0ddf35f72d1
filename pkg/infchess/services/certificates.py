"""Value certificates: claimed ordinals along a game tree, with limit nodes checked at samples.

Lower certificates follow white's main line (one move at every white node) and
list the black choices that realize the claimed value. Upper certificates
cover every black move and family; families are checked at samples only, so
their reports carry the ``sampled-upper`` caveat.

Claims are exact: a white node claims the successor of its child, a black node
the largest of its finite children and family suprema, a leaf with claim 0 must
be a finished white win and any other leaf is checked by exact search.
"""

from __future__ import annotations

import logging
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Hashable

from infchess.core.errors import CertificateFormatError, MalformedFormulaError, OrdinalError, TreeError
from infchess.models.ordinal import (
    FamilyValueFormula,
    Ordinal,
    eval_formula,
    format_ordinal,
    parse_formula,
    parse_ordinal,
    succ,
    sup_family,
)
from infchess.models.pieces import Color
from infchess.models.position import Position
from infchess.services.arenas import Arena, ChessArena, GameArena
from infchess.services.games import OpenGame
from infchess.services.solver import SearchBudget
from infchess.services.trees import format_samples, parse_samples

logger = logging.getLogger(__name__)

CERT_VERSION = 1
SAMPLED_UPPER = "sampled-upper"
HORIZON_RELATIVE = "horizon-relative"


class Mode(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class CertNode:
    claim: Ordinal
    edges: tuple[Edge, ...] = ()
    leaf: bool = False


@dataclass(frozen=True)
class MoveEdge:
    move: Any
    node: CertNode


@dataclass(frozen=True, eq=False)
class FamilyEdge:
    """Member ``n`` of the family is the move at distance ``step*n + offset``."""

    family: Hashable
    formula: FamilyValueFormula
    samples: tuple[int, ...]
    template: Callable[[int], CertNode]
    step: int = 1
    offset: int = 0

    def distance(self, n: int) -> int:
        return self.step * n + self.offset


Edge = MoveEdge | FamilyEdge


class MaterializedTemplate:
    """Template read back from text: the stored instance for each sample."""

    def __init__(self, instances: dict[int, CertNode]) -> None:
        self.instances = instances

    def __call__(self, n: int) -> CertNode:
        return self.instances[n]


@dataclass(frozen=True)
class ValueCertificate:
    mode: Mode
    root: CertNode
    arena: str = "chess"

    @property
    def claim(self) -> Ordinal:
        return self.root.claim


@dataclass
class VerificationReport:
    passed: bool
    mode: Mode
    claim: Ordinal
    reason: str | None = None
    path: tuple[str, ...] = ()
    detail: str = ""
    nodes: int = 0
    leaves: int = 0
    samples: int = 0
    caveats: tuple[str, ...] = ()

    @property
    def path_text(self) -> str:
        return " / ".join(("root", *self.path))

    def summary_line(self) -> str:
        verdict = "pass" if self.passed else f"fail reason={self.reason} at={self.path_text!r}"
        caveats = ",".join(self.caveats) or "none"
        return (
            f"certify {verdict} mode={self.mode.value} claim={format_ordinal(self.claim).replace(' ', '')} "
            f"nodes={self.nodes} leaves={self.leaves} samples={self.samples} caveats={caveats}"
        )


class CertificateFailure(Exception):
    def __init__(self, reason: str, path: tuple[str, ...], detail: str) -> None:
        super().__init__(detail)
        self.reason = reason
        self.path = path
        self.detail = detail


@dataclass
class _Stats:
    """Counters shared by the sample workers."""

    nodes: int = 0
    samples: int = 0
    families: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def bump(self, counter: str) -> None:
        with self._lock:
            setattr(self, counter, getattr(self, counter) + 1)


@dataclass
class _Verifier:
    arena: Arena
    mode: Mode
    samples: tuple[int, ...] | None = None
    workers: int = 1
    stats: _Stats = field(default_factory=_Stats)

    def fail(self, reason: str, path: tuple[str, ...], detail: str) -> CertificateFailure:
        return CertificateFailure(reason, path, detail)

    def verify(self, state: Any, node: CertNode, path: tuple[str, ...], top: bool = False) -> None:
        self.stats.bump("nodes")
        arena = self.arena
        if node.leaf:
            self._leaf(state, node, path)
            return
        if not node.edges:
            raise self.fail("bad-shape", path, "inner node without edges; mark it as a leaf")
        side = arena.to_move(state)
        if side is Color.WHITE:
            self._white(state, node, path)
            return
        contributions: list[Ordinal] = []
        covered_moves = []
        covered_families: dict[Hashable, FamilyEdge] = {}
        for edge in node.edges:
            if isinstance(edge, MoveEdge):
                move = self._resolve(state, edge, path)
                covered_moves.append(move)
                child_path = (*path, arena.move_text(move))
                self.verify(arena.apply(state, move), edge.node, child_path)
                contributions.append(edge.node.claim)
            else:
                covered_families[edge.family] = edge
                contributions.append(self._family(state, edge, path, parallel=top))
        expected = max(contributions)
        if node.claim != expected:
            raise self.fail(
                "ordinal-mismatch", path, f"black node claims {node.claim}, children give {expected}"
            )
        if self.mode is Mode.UPPER:
            self._coverage(state, covered_moves, covered_families, path)

    def _leaf(self, state: Any, node: CertNode, path: tuple[str, ...]) -> None:
        if node.edges:
            raise self.fail("bad-shape", path, "a leaf cannot have edges")
        if not node.claim:
            if not self.arena.is_white_win(state):
                raise self.fail("leaf-mismatch", path, "claim 0 but white has not won here")
            return
        if not node.claim.is_finite:
            raise self.fail("bad-shape", path, f"leaf claim {node.claim} is not finite")
        claim = int(node.claim)
        value = self.arena.leaf_value(state, claim)
        if value != claim:
            raise self.fail("leaf-mismatch", path, f"leaf claims {claim}, search gives {value}")

    def _white(self, state: Any, node: CertNode, path: tuple[str, ...]) -> None:
        if len(node.edges) != 1 or not isinstance(node.edges[0], MoveEdge):
            raise self.fail("bad-shape", path, "a white node needs exactly one move")
        edge = node.edges[0]
        move = self._resolve(state, edge, path)
        child_path = (*path, self.arena.move_text(move))
        self.verify(self.arena.apply(state, move), edge.node, child_path)
        expected = succ(edge.node.claim)
        if node.claim != expected:
            raise self.fail("ordinal-mismatch", path, f"white node claims {node.claim}, expected {expected}")

    def _resolve(self, state: Any, edge: MoveEdge, path: tuple[str, ...]) -> Any:
        move = self.arena.resolve(state, edge.move)
        if move is None:
            raise self.fail("illegal-edge", path, f"{self.arena.move_text(edge.move)} is not legal here")
        return move

    def _family(self, state: Any, edge: FamilyEdge, path: tuple[str, ...], parallel: bool) -> Ordinal:
        self.stats.bump("families")
        label = f"family {self.arena.family_text(edge.family)}"
        if edge.step < 1 or edge.offset < 0:
            raise self.fail("bad-shape", (*path, label), "family step must be positive and offset non-negative")
        samples = self.samples or edge.samples
        if parallel and self.workers > 1 and len(samples) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                list(pool.map(lambda n: self._sample(state, edge, n, path, label), samples))
        else:
            for n in samples:
                self._sample(state, edge, n, path, label)
        return sup_family(edge.formula)

    def _sample(self, state: Any, edge: FamilyEdge, n: int, path: tuple[str, ...], label: str) -> None:
        sample_path = (*path, f"{label} n={n}")
        self.stats.bump("samples")
        move = self.arena.family_member(state, edge.family, edge.distance(n))
        if move is None:
            raise self.fail("illegal-edge", sample_path, f"distance {edge.distance(n)} is not a legal family member")
        try:
            child = edge.template(n)
        except KeyError as exc:
            raise self.fail("sample-missing", sample_path, f"no instance stored for n={n}") from exc
        expected = eval_formula(edge.formula, n)
        if child.claim != expected:
            raise self.fail(
                "sample-mismatch", sample_path, f"instance claims {child.claim}, formula {edge.formula} gives {expected}"
            )
        self.verify(self.arena.apply(state, move), child, sample_path)

    def _coverage(
        self, state: Any, moves: list[Any], families: dict[Hashable, FamilyEdge], path: tuple[str, ...]
    ) -> None:
        for move in self.arena.finite_moves(state):
            if move not in moves:
                raise self.fail("uncovered-move", path, f"{self.arena.move_text(move)} has no child")
        for family, minimum in self.arena.family_ids(state).items():
            edge = families.get(family)
            if edge is None:
                raise self.fail("uncovered-family", path, f"family {self.arena.family_text(family)} has no bound")
            if edge.step != 1 or edge.offset != minimum - 1:
                raise self.fail(
                    "uncovered-family", path, f"family {self.arena.family_text(family)} skips members"
                )


def arena_for(root: Any, budget: SearchBudget) -> tuple[Arena, Any]:
    if isinstance(root, Position):
        return ChessArena(budget), root
    if isinstance(root, OpenGame):
        return GameArena(root), root.initial
    raise TypeError(f"no arena for {type(root).__name__}")


def verify_certificate(
    root: Position | OpenGame,
    cert: ValueCertificate,
    budget: SearchBudget,
    *,
    samples: tuple[int, ...] | None = None,
    workers: int = 1,
) -> VerificationReport:
    """Checks every claim of ``cert`` from ``root``; ``samples`` overrides the stored sample sets."""
    arena, state = arena_for(root, budget)
    verifier = _Verifier(arena, cert.mode, samples, workers)
    report = VerificationReport(passed=True, mode=cert.mode, claim=cert.claim)
    try:
        verifier.verify(state, cert.root, (), top=True)
    except CertificateFailure as failure:
        logger.info("Certificate failed at %s: %s", " / ".join(failure.path) or "root", failure.detail)
        report.passed = False
        report.reason = failure.reason
        report.path = failure.path
        report.detail = failure.detail
    caveats = []
    if cert.mode is Mode.UPPER and verifier.stats.families:
        caveats.append(SAMPLED_UPPER)
    if arena.horizon_relative:
        caveats.append(HORIZON_RELATIVE)
    report.caveats = tuple(caveats)
    report.nodes = verifier.stats.nodes
    report.samples = verifier.stats.samples
    report.leaves = arena.leaves
    return report


# --- building helpers ----------------------------------------------------------------


def leaf(claim: Ordinal | int = 0) -> CertNode:
    return CertNode(_ordinal(claim), leaf=True)


def white(move: Any, child: CertNode) -> CertNode:
    """White node whose claim follows from its only child."""
    return CertNode(succ(child.claim), (MoveEdge(move, child),))


def black(*edges: Edge) -> CertNode:
    """Black node claiming the largest contribution of its edges."""
    values = [edge.node.claim if isinstance(edge, MoveEdge) else sup_family(edge.formula) for edge in edges]
    return CertNode(max(values), tuple(edges))


def black_move(move: Any, child: CertNode) -> CertNode:
    return black(MoveEdge(move, child))


def family(
    family_id: Hashable,
    template: Callable[[int], CertNode],
    samples: tuple[int, ...],
    *,
    step: int = 1,
    offset: int = 0,
    formula: FamilyValueFormula | None = None,
) -> FamilyEdge:
    """Family edge; the formula is fitted to the template claims when not given."""
    if formula is None:
        formula = FamilyValueFormula.fit({n: template(n).claim for n in samples})
    return FamilyEdge(family_id, formula, tuple(samples), template, step, offset)


def line(arena: Arena, state: Any, moves: list[Any], end: CertNode | None = None) -> CertNode:
    """Certificate for a forced line: each move in turn, ending in ``end`` or a claim-0 leaf."""
    states = [state]
    for move in moves:
        resolved = arena.resolve(states[-1], move)
        states.append(arena.apply(states[-1], resolved if resolved is not None else move))
    node = end or leaf(0)
    for move, before in zip(reversed(moves), reversed(states[:-1])):
        node = white(move, node) if arena.to_move(before) is Color.WHITE else black_move(move, node)
    return node


def _ordinal(value: Ordinal | int) -> Ordinal:
    return value if isinstance(value, Ordinal) else Ordinal.of(value)


# --- text format ---------------------------------------------------------------------

_NODE_FIELDS = re.compile(r"^(?P<head>.*?)\s*claim=(?P<claim>\S+)(?P<leaf>\s+leaf)?$")
_FAMILY_FIELD = re.compile(r"(\w+)=(\S+)")


def _compact(text: str) -> str:
    return text.replace(" ", "")


def _claim_text(node: CertNode) -> str:
    return f"claim={_compact(format_ordinal(node.claim))}" + (" leaf" if node.leaf else "")


def dump_certificate(cert: ValueCertificate, arena: Arena) -> str:
    lines = [f"cert {CERT_VERSION}", f"mode {cert.mode.value}", f"arena {cert.arena}"]
    lines.append(f"root {_claim_text(cert.root)}")
    _dump_edges(cert.root, arena, 1, lines)
    return "\n".join(lines) + "\n"


def _dump_edges(node: CertNode, arena: Arena, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    for edge in node.edges:
        if isinstance(edge, MoveEdge):
            lines.append(f"{pad}move {arena.move_text(edge.move)} {_claim_text(edge.node)}")
            _dump_edges(edge.node, arena, depth + 1, lines)
            continue
        lines.append(
            f"{pad}family id={arena.family_text(edge.family)} step={edge.step} offset={edge.offset} "
            f"samples={format_samples(edge.samples)} formula={_compact(edge.formula.format())}"
        )
        for n in edge.samples:
            instance = edge.template(n)
            lines.append(f"{pad}  sample n={n} {_claim_text(instance)}")
            _dump_edges(instance, arena, depth + 2, lines)


@dataclass
class _Line:
    number: int
    depth: int
    text: str


class _CertParser:
    def __init__(self, text: str, arena: Arena) -> None:
        self.arena = arena
        self.lines: list[_Line] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].rstrip()
            if not content.strip():
                continue
            indent = len(content) - len(content.lstrip(" "))
            if indent % 2:
                raise CertificateFormatError("indentation must be a multiple of two spaces", line=number, column=1)
            self.lines.append(_Line(number, indent // 2, content.strip()))
        self.index = 0

    def error(self, message: str, line: _Line | None = None) -> CertificateFormatError:
        line = line or (self.lines[self.index] if self.index < len(self.lines) else None)
        return CertificateFormatError(message, line=line.number if line else 0, column=1)

    def take(self) -> _Line:
        if self.index >= len(self.lines):
            raise self.error("unexpected end of certificate")
        line = self.lines[self.index]
        self.index += 1
        return line

    def header(self, keyword: str) -> str:
        line = self.take()
        parts = line.text.split()
        if len(parts) != 2 or parts[0] != keyword:
            raise self.error(f"expected '{keyword} <value>'", line)
        return parts[1]

    def claim(self, line: _Line, rest: str) -> tuple[str, Ordinal, bool]:
        match = _NODE_FIELDS.match(rest)
        if not match:
            raise self.error("node lines need claim=<ordinal>", line)
        try:
            value = parse_ordinal(match.group("claim"))
        except OrdinalError as exc:
            raise self.error(str(exc), line) from exc
        return match.group("head"), value, bool(match.group("leaf"))

    def children(self, depth: int) -> tuple[Edge, ...]:
        edges: list[Edge] = []
        while self.index < len(self.lines) and self.lines[self.index].depth == depth:
            line = self.take()
            keyword, _, rest = line.text.partition(" ")
            if keyword == "move":
                head, value, is_leaf = self.claim(line, rest)
                move = self.arena.parse_move(head)
                edges.append(MoveEdge(move, CertNode(value, self.children(depth + 1), is_leaf)))
            elif keyword == "family":
                edges.append(self.family(line, rest, depth))
            else:
                raise self.error(f"expected move or family, found {keyword!r}", line)
        if self.index < len(self.lines) and self.lines[self.index].depth > depth:
            raise self.error("unexpected indentation")
        return tuple(edges)

    def family(self, line: _Line, rest: str, depth: int) -> FamilyEdge:
        fields = dict(_FAMILY_FIELD.findall(rest))
        if not {"id", "samples", "formula"} <= set(fields):
            raise self.error("family lines need id=, samples= and formula=", line)
        try:
            formula = parse_formula(fields["formula"])
            samples = parse_samples(fields["samples"])
            step, offset = int(fields.get("step", 1)), int(fields.get("offset", 0))
        except (MalformedFormulaError, OrdinalError, TreeError, ValueError) as exc:
            raise self.error(str(exc), line) from exc
        instances: dict[int, CertNode] = {}
        while self.index < len(self.lines) and self.lines[self.index].depth == depth + 1:
            sample_line = self.take()
            keyword, _, sample_rest = sample_line.text.partition(" ")
            head, value, is_leaf = self.claim(sample_line, sample_rest)
            match = re.fullmatch(r"n=(\d+)", head)
            if keyword != "sample" or not match:
                raise self.error("family children are 'sample n=<k> claim=...'", sample_line)
            instances[int(match.group(1))] = CertNode(value, self.children(depth + 2), is_leaf)
        return FamilyEdge(
            self.arena.parse_family(fields["id"]), formula, samples, MaterializedTemplate(instances), step, offset
        )

    def parse(self) -> ValueCertificate:
        version = self.header("cert")
        if version != str(CERT_VERSION):
            raise self.error(f"unsupported certificate version {version}", self.lines[self.index - 1])
        try:
            mode = Mode(self.header("mode"))
        except ValueError as exc:
            raise self.error("mode must be lower or upper", self.lines[self.index - 1]) from exc
        arena_name = self.header("arena")
        root_line = self.take()
        keyword, _, rest = root_line.text.partition(" ")
        if keyword != "root" or root_line.depth != 0:
            raise self.error("expected the root line", root_line)
        _, value, is_leaf = self.claim(root_line, rest)
        root = CertNode(value, self.children(1), is_leaf)
        if self.index != len(self.lines):
            raise self.error("trailing lines after the certificate")
        return ValueCertificate(mode, root, arena_name)


def load_certificate(text: str, arena: Arena) -> ValueCertificate:
    return _CertParser(text, arena).parse()


def read_certificate(path: str | Path, arena: Arena) -> ValueCertificate:
    logger.debug("Reading certificate %s", path)
    return load_certificate(Path(path).read_text(encoding="utf-8"), arena)


__all__ = [
    "Mode",
    "CertNode",
    "MoveEdge",
    "FamilyEdge",
    "Edge",
    "MaterializedTemplate",
    "ValueCertificate",
    "VerificationReport",
    "CertificateFailure",
    "arena_for",
    "verify_certificate",
    "leaf",
    "white",
    "black",
    "black_move",
    "family",
    "line",
    "dump_certificate",
    "load_certificate",
    "read_certificate",
]
