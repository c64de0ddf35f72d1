"""ICN position files and algebraic move text for 2D and layer-prefixed 3D play."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from infchess.core.errors import (
    BoardError,
    IllegalMoveError,
    KnightIn3DError,
    MoveParseError,
    NotationError,
    RegionOverlapError,
)
from infchess.models.board import Board, LatticeFill, RectFill, Region, Span, Square
from infchess.models.moves import FamilyMove, Move, family_distance
from infchess.models.pieces import Color, Kind, Piece
from infchess.models.position import DEFAULT_PAWN_AXIS, Position
from infchess.services import movegen
from infchess.services.movegen import Status

logger = logging.getLogger(__name__)

ICN_VERSION = 1
AXES = "xyz"
FILES = "abcdefghijklmnopqrstuvwxyz"

_COORD = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)$")
_RANGE = re.compile(r"^([xyz])=(-inf|-?\d+)\.\.(inf|-?\d+)$")
_KEYVALUE = re.compile(r"^(base|step|count)=(.+)$")
_PAWN_AXIS = re.compile(r"^([+-])([xyz])$")


@dataclass
class IcnDocument:
    version: int = ICN_VERSION
    variant: str = "2d"
    to_move: Color = Color.WHITE
    pawn_axis: tuple[int, int] = DEFAULT_PAWN_AXIS
    counts: dict[tuple[Color, Kind], int | None] = field(default_factory=dict)
    pieces: list[tuple[Square, Piece]] = field(default_factory=list)
    regions: list[Region] = field(default_factory=list)
    empties: list[Square] = field(default_factory=list)
    region_lines: list[int] = field(default_factory=list)
    count_lines: dict[tuple[Color, Kind], int] = field(default_factory=dict)

    @property
    def dims(self) -> int:
        return 3 if self.variant == "3d" else 2


def _parse_coord(text: str, dims: int, line: int, column: int) -> Square:
    match = _COORD.match(text)
    if not match:
        raise NotationError(f"bad coordinate {text!r}", line=line, column=column)
    values = tuple(int(v) for v in match.groups() if v is not None)
    if len(values) != dims:
        raise NotationError(f"expected {dims} coordinates in {text!r}", line=line, column=column)
    return values


def _parse_piece(color: str, kind: str, line: int, column: int) -> Piece:
    try:
        return Piece.parse(color, kind)
    except (KeyError, ValueError) as exc:
        raise NotationError(f"unknown piece {color} {kind}", line=line, column=column) from exc


def _split_fields(text: str) -> list[tuple[str, int]]:
    """Whitespace split that keeps parenthesised groups together, with 1-based columns."""
    fields: list[tuple[str, int]] = []
    depth = 0
    start: int | None = None
    for i, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char.isspace() and depth == 0:
            if start is not None:
                fields.append((text[start:i], start + 1))
                start = None
        elif start is None:
            start = i
    if start is not None:
        fields.append((text[start:], start + 1))
    return fields


def parse_document(text: str) -> IcnDocument:
    doc = IcnDocument()
    seen_header = False
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        fields = _split_fields(content)
        keyword, column = fields[0]
        args = fields[1:]
        if not seen_header:
            if keyword != "icn" or len(args) != 1 or args[0][0] != str(ICN_VERSION):
                raise NotationError("document must start with 'icn 1'", line=number, column=column)
            seen_header = True
            continue
        if keyword == "variant":
            if len(args) != 1 or args[0][0] not in ("2d", "3d"):
                raise NotationError("variant must be 2d or 3d", line=number, column=column)
            doc.variant = args[0][0]
        elif keyword == "to-move":
            if len(args) != 1 or args[0][0] not in ("white", "black"):
                raise NotationError("to-move must be white or black", line=number, column=column)
            doc.to_move = Color(args[0][0])
        elif keyword == "pawn-axis":
            match = _PAWN_AXIS.match(args[0][0]) if len(args) == 1 else None
            if not match:
                raise NotationError("pawn-axis must look like +y", line=number, column=column)
            doc.pawn_axis = (AXES.index(match.group(2)), 1 if match.group(1) == "+" else -1)
        elif keyword == "count":
            if len(args) != 3:
                raise NotationError("count needs color, kind and value", line=number, column=column)
            target = _parse_piece(args[0][0], args[1][0], number, args[0][1])
            value = args[2][0]
            if value != "inf" and not value.isdigit():
                raise NotationError(f"bad count {value!r}", line=number, column=args[2][1])
            doc.counts[(target.color, target.kind)] = None if value == "inf" else int(value)
            doc.count_lines[(target.color, target.kind)] = number
        elif keyword == "piece":
            if len(args) != 3:
                raise NotationError("piece needs color, kind and square", line=number, column=column)
            target = _parse_piece(args[0][0], args[1][0], number, args[0][1])
            doc.pieces.append((_parse_coord(args[2][0], doc.dims, number, args[2][1]), target))
        elif keyword == "empty":
            if len(args) != 1:
                raise NotationError("empty needs one square", line=number, column=column)
            doc.empties.append(_parse_coord(args[0][0], doc.dims, number, args[0][1]))
        elif keyword == "region":
            doc.regions.append(_parse_region(args, doc.dims, number, column))
            doc.region_lines.append(number)
        else:
            raise NotationError(f"unknown directive {keyword!r}", line=number, column=column)
    if not seen_header:
        raise NotationError("empty document", line=1, column=1)
    return doc


def _parse_region(args: list[tuple[str, int]], dims: int, line: int, column: int) -> Region:
    if len(args) < 3 or args[0][0] not in ("fill", "lattice"):
        raise NotationError("region must be 'fill' or 'lattice'", line=line, column=column)
    kind_name = args[0][0]
    target = _parse_piece(args[1][0], args[2][0], line, args[1][1])
    rest = args[3:]
    try:
        if kind_name == "fill":
            spans: dict[int, Span] = {}
            for token, col in rest:
                match = _RANGE.match(token)
                if not match:
                    raise NotationError(f"bad range {token!r}", line=line, column=col)
                axis = AXES.index(match.group(1))
                lo = None if match.group(2) == "-inf" else int(match.group(2))
                hi = None if match.group(3) == "inf" else int(match.group(3))
                spans[axis] = Span(lo, hi)
            if sorted(spans) != list(range(dims)):
                raise NotationError("fill needs one range per axis", line=line, column=column)
            return RectFill(tuple(spans[i] for i in range(dims)), target)
        values: dict[str, str] = {}
        cols: dict[str, int] = {}
        for token, col in rest:
            match = _KEYVALUE.match(token)
            if not match:
                raise NotationError(f"bad lattice field {token!r}", line=line, column=col)
            values[match.group(1)] = match.group(2)
            cols[match.group(1)] = col
        if set(values) != {"base", "step", "count"}:
            raise NotationError("lattice needs base, step and count", line=line, column=column)
        base = _parse_coord(values["base"], dims, line, cols["base"])
        step = _parse_coord(values["step"], dims, line, cols["step"])
        count_text = values["count"]
        if count_text != "inf" and not count_text.isdigit():
            raise NotationError(f"bad lattice count {count_text!r}", line=line, column=cols["count"])
        return LatticeFill(base, step, None if count_text == "inf" else int(count_text), target)
    except BoardError as exc:
        raise NotationError(str(exc), line=line, column=column) from exc


def document_to_position(doc: IcnDocument) -> Position:
    try:
        board = Board.build(doc.dims, doc.pieces, doc.regions, doc.empties)
    except RegionOverlapError as exc:
        first, second = doc.region_lines[exc.first], doc.region_lines[exc.second]
        raise NotationError(
            f"region on line {first} overlaps region on line {second}", line=second, column=1
        ) from exc
    except BoardError as exc:
        raise NotationError(str(exc), line=1, column=1) from exc
    census = board.census()
    for region, line in zip(doc.regions, doc.region_lines):
        key = (region.piece.color, region.piece.kind)
        if region.cardinality() is None and key not in doc.counts:
            raise NotationError(
                f"unbounded region needs 'count {region.piece.color.letter} {region.piece.kind.value} inf'",
                line=line,
                column=1,
            )
    counts = dict(census)
    for key, declared in doc.counts.items():
        if census.get(key, 0) != declared:
            color, kind = key
            raise NotationError(
                f"count mismatch for {color.letter} {kind.value}: declared "
                f"{'inf' if declared is None else declared}, board has "
                f"{'inf' if census.get(key, 0) is None else census.get(key, 0)}",
                line=doc.count_lines.get(key, 1),
                column=1,
            )
        counts[key] = declared
    if doc.dims == 2 and doc.pawn_axis != DEFAULT_PAWN_AXIS:
        raise NotationError("pawn-axis is only configurable in 3d", line=1, column=1)
    return Position.create(board, doc.to_move, counts, doc.pawn_axis)


def parse_position(text: str) -> Position:
    """Parses ICN text into a position; every count is filled in."""
    return document_to_position(parse_document(text))


def load_position(path: str | Path) -> Position:
    logger.debug("Loading position from %s", path)
    return parse_position(Path(path).read_text(encoding="utf-8"))


def _format_coord(square: Square) -> str:
    return "(" + ",".join(str(v) for v in square) + ")"


def _format_bound(value: int | None, low: bool) -> str:
    if value is None:
        return "-inf" if low else "inf"
    return str(value)


def _format_region(region: Region) -> str:
    target = f"{region.piece.color.letter} {region.piece.kind.value}"
    if isinstance(region, RectFill):
        ranges = " ".join(
            f"{AXES[i]}={_format_bound(span.lo, True)}..{_format_bound(span.hi, False)}"
            for i, span in enumerate(region.spans)
        )
        return f"region fill {target} {ranges}"
    assert isinstance(region, LatticeFill)
    count = "inf" if region.count is None else str(region.count)
    return (
        f"region lattice {target} base={_format_coord(region.base)} "
        f"step={_format_coord(region.step)} count={count}"
    )


def serialize_position(position: Position, *, comments: list[str] | None = None) -> str:
    lines = [f"# {comment}" for comment in comments or ()]
    lines += [f"icn {ICN_VERSION}", f"variant {position.dims}d", f"to-move {position.to_move.value}"]
    if position.dims == 3:
        axis, sign = position.pawn_axis
        lines.append(f"pawn-axis {'+' if sign > 0 else '-'}{AXES[axis]}")
    for (color, kind), value in position.declared:
        lines.append(f"count {color.letter} {kind.value} {'inf' if value is None else value}")
    for square, value in position.board.overrides:
        if value is not None:
            lines.append(f"piece {value.color.letter} {value.kind.value} {_format_coord(square)}")
    for region in position.board.regions:
        lines.append(_format_region(region))
    for square, value in position.board.overrides:
        if value is None:
            lines.append(f"empty {_format_coord(square)}")
    return "\n".join(lines) + "\n"


# --- algebraic move text -------------------------------------------------------------

_SQUARE_TEXT = r"(?:(?:[a-z]|\[-?\d+\]):)?(?:[a-z]-?\d+|\(-?\d+(?:,-?\d+){1,2}\))"
_TOKEN = re.compile(
    rf"^(?P<prefix>.*?)(?P<capture>x)?(?P<dest>{_SQUARE_TEXT})(?P<suffix>[+#])?$"
)
_MOVE_NUMBER = re.compile(r"^\d+\.(?:\.\.)?")
_ANNOTATION = re.compile(r"[?!]+$")


def _layer_value(text: str) -> int:
    if text.startswith("["):
        return int(text[1:-1])
    return FILES.index(text)


def parse_square(text: str, dims: int) -> Square:
    layer: int | None = None
    body = text
    if ":" in text:
        layer_text, body = text.split(":", 1)
        layer = _layer_value(layer_text)
    if body.startswith("("):
        values = tuple(int(v) for v in body.strip("()").split(","))
        if len(values) != dims or layer is not None:
            raise ValueError(f"bad square {text!r}")
        return values
    file_value = FILES.index(body[0]) + 1
    rank = int(body[1:])
    if dims == 3:
        if layer is None:
            raise ValueError(f"3d square {text!r} needs a layer prefix")
        return (file_value, rank, layer)
    if layer is not None:
        raise ValueError(f"2d square {text!r} cannot have a layer")
    return (file_value, rank)


def format_square(square: Square) -> str:
    x, y = square[0], square[1]
    in_window = 1 <= x <= 26
    if len(square) == 3:
        z = square[2]
        if in_window and 0 <= z < 26:
            return f"{FILES[z]}:{FILES[x - 1]}{y}"
        return _format_coord(square)
    return f"{FILES[x - 1]}{y}" if in_window else _format_coord(square)


def _candidates(position: Position, destination: Square) -> list[Move]:
    listed = movegen.legal_moves(position)
    found = [m for m in listed.moves if m.to_sq == destination]
    for family in listed.families:
        distance = family_distance(family.from_sq, family.direction, destination)
        if distance is not None and distance >= family.min_distance:
            found.append(family.at(distance))
    return found


def _matches_hint(square: Square, hint: str, dims: int) -> bool:
    if not hint:
        return True
    if re.fullmatch(r"[a-z]", hint):
        return square[0] == FILES.index(hint) + 1
    if re.fullmatch(r"-?\d+", hint):
        return square[1] == int(hint)
    if re.fullmatch(r"(?:[a-z]|\[-?\d+\]):", hint):
        return dims == 3 and square[2] == _layer_value(hint[:-1])
    if re.fullmatch(r"(?:[a-z]|\[-?\d+\]):[a-z]", hint):
        layer, file_letter = hint.split(":")
        return square[2] == _layer_value(layer) and square[0] == FILES.index(file_letter) + 1
    try:
        return tuple(square) == parse_square(hint, dims)
    except (ValueError, IndexError):
        return False


def _split_prefix(prefix: str) -> tuple[Kind, str]:
    letters = [c for c in prefix if c in "KQRBN"]
    if len(letters) > 1:
        raise ValueError("more than one piece letter")
    if not letters:
        return Kind.PAWN, prefix
    index = prefix.index(letters[0])
    return Kind(letters[0]), prefix[:index] + prefix[index + 1 :]


def resolve_move(position: Position, token: str, token_index: int = 1) -> Move:
    """Resolves one algebraic token to the unique legal move it names."""
    cleaned = _ANNOTATION.sub("", _MOVE_NUMBER.sub("", token))
    match = _TOKEN.match(cleaned)
    if not match:
        raise MoveParseError("unparseable move", token_index=token_index, token=token)
    try:
        kind, hint = _split_prefix(match.group("prefix"))
        destination = parse_square(match.group("dest"), position.dims)
    except (ValueError, IndexError) as exc:
        raise MoveParseError(str(exc), token_index=token_index, token=token) from exc
    try:
        options = [
            move
            for move in _candidates(position, destination)
            if move.mover.kind is kind and _matches_hint(move.from_sq, hint, position.dims)
        ]
    except KnightIn3DError as exc:
        raise MoveParseError(str(exc), token_index=token_index, token=token) from exc
    if match.group("capture"):
        options = [move for move in options if move.captured is not None]
    if not options:
        raise MoveParseError("no legal move matches", token_index=token_index, token=token)
    if len(options) > 1:
        raise MoveParseError("ambiguous move", token_index=token_index, token=token)
    move = options[0]
    expected = _suffix(position, move)
    if (match.group("suffix") or "") != expected:
        raise MoveParseError(
            f"suffix mismatch: move gives {expected or 'no check'}", token_index=token_index, token=token
        )
    return move


def _suffix(position: Position, move: Move) -> str:
    child = movegen.apply(position, move, check=False)
    if child.king(child.to_move) is None or not movegen.in_check(child, child.to_move):
        return ""
    return "#" if movegen.status(child).kind is Status.CHECKMATE else "+"


def _move_tokens(text: str) -> list[str]:
    tokens = []
    for raw in text.split():
        stripped = _MOVE_NUMBER.sub("", raw)
        if stripped:
            tokens.append(raw)
    return tokens


def replay(text: str, position: Position) -> tuple[list[Move], list[Position]]:
    """Parses a move line and returns the moves with every position reached."""
    moves: list[Move] = []
    positions = [position]
    for index, token in enumerate(_move_tokens(text), start=1):
        move = resolve_move(positions[-1], token, index)
        try:
            positions.append(movegen.apply(positions[-1], move, check=False))
        except IllegalMoveError as exc:
            raise MoveParseError(str(exc), token_index=index, token=token) from exc
        moves.append(move)
    return moves, positions


def parse_moves(text: str, position: Position) -> list[Move]:
    return replay(text, position)[0]


def _disambiguation(position: Position, move: Move) -> str:
    rivals = [
        other
        for other in _candidates(position, move.to_sq)
        if other.mover == move.mover and other.from_sq != move.from_sq
    ]
    origin = move.from_sq
    if move.mover.kind is Kind.PAWN and move.captured is not None and 1 <= origin[0] <= 26 and not rivals:
        return FILES[origin[0] - 1] if position.dims == 2 else ""
    if not rivals:
        return ""
    options: list[tuple[str, bool]] = []
    if position.dims == 3 and 0 <= origin[2] < 26:
        options.append((f"{FILES[origin[2]]}:", all(r.from_sq[2] != origin[2] for r in rivals)))
    if 1 <= origin[0] <= 26:
        options.append((FILES[origin[0] - 1], all(r.from_sq[0] != origin[0] for r in rivals)))
    options.append((str(origin[1]), all(r.from_sq[1] != origin[1] for r in rivals)))
    for hint, unique in options:
        if unique and _matches_hint(origin, hint, position.dims):
            return hint
    return format_square(origin)


def format_move(move: Move, position: Position) -> str:
    letter = "" if move.mover.kind is Kind.PAWN else move.mover.kind.value
    capture = "x" if move.captured is not None else ""
    return f"{_disambiguation(position, move)}{letter}{capture}{format_square(move.to_sq)}{_suffix(position, move)}"


def format_line(moves: list[Move], position: Position) -> str:
    parts: list[str] = []
    number = 1
    current = position
    for i, move in enumerate(moves):
        text = format_move(move, current)
        if current.to_move is Color.WHITE:
            parts.append(f"{number}.{text}")
        elif i == 0:
            parts.append(f"{number}...{text}")
            number += 1
        else:
            parts.append(text)
            number += 1
        current = movegen.apply(current, move, check=False)
    return " ".join(parts)


_GLYPHS = {kind: kind.value for kind in Kind}


def diagram(position: Position, box: tuple[Span, ...] | None = None, layer: int | None = None) -> str:
    """ASCII window of the board; white pieces upper case, black lower case."""
    box = box or movegen.window(position)
    rows = []
    x_span, y_span = box[0], box[1]
    z = layer if layer is not None else (box[2].lo if position.dims == 3 else None)
    for y in range(y_span.hi, y_span.lo - 1, -1):  # type: ignore[arg-type, operator]
        cells = []
        for x in range(x_span.lo, x_span.hi + 1):  # type: ignore[arg-type, operator]
            square = (x, y) if z is None else (x, y, z)
            content = position.piece_at(square)
            if content is None:
                cells.append(".")
            else:
                glyph = _GLYPHS[content.kind]
                cells.append(glyph if content.color is Color.WHITE else glyph.lower())
        rows.append(f"{y:>4} " + " ".join(cells))
    return "\n".join(rows)


def family_text(family: FamilyMove) -> str:
    return f"{family.mover.kind.value}{format_square(family.from_sq)}->{_format_coord(family.direction)}..."


__all__ = [
    "IcnDocument",
    "parse_document",
    "document_to_position",
    "parse_position",
    "load_position",
    "serialize_position",
    "parse_square",
    "format_square",
    "resolve_move",
    "replay",
    "parse_moves",
    "format_move",
    "format_line",
    "diagram",
    "family_text",
]
