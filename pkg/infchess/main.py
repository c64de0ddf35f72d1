"""Command-line entry point: ``infchess <command> [options]``.

Exit codes: 0 success, 1 the claim did not hold, 2 usage or input error,
3 the search budget ran out.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from infchess.core.config import get_settings
from infchess.core.errors import (
    InfChessError,
    NoValueError,
    SearchBudgetExhaustedError,
    StrategyError,
)
from infchess.i18n import translate
from infchess.models.ordinal import format_ordinal, parse_ordinal
from infchess.models.pieces import Color
from infchess.models.position import Position
from infchess.services import movegen, notation, reports, trees
from infchess.services.certificates import arena_for, dump_certificate, read_certificate, verify_certificate
from infchess.services.embeddings import certify, figures, strategies, trees2d, trees3d
from infchess.services.games import climbing_game, counting_game, generic_value
from infchess.services.movegen import Status
from infchess.services.simulation import check_runs, simulate, strategy_tournament
from infchess.services.solver import SearchBudget, mate_search, value_finite, value_reducing_move

logger = logging.getLogger("infchess")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

REPL_LISTED_MOVES = 40


class _Game:
    """A position plus the layout tree strategies navigate, when there is one."""

    def __init__(self, position: Position, layout: trees2d.ChannelLayout | trees3d.SpaceLayout | None = None) -> None:
        self.position = position
        self.layout = layout


def configure_logging(verbose: bool = False) -> None:
    settings = get_settings()
    level = logging.DEBUG if verbose or settings.debug else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


def resolve_path(text: str) -> Path:
    """``text`` as given, or the file of the same name in the fixture directory."""
    path = Path(text)
    if path.exists():
        return path
    fixture_dir = get_settings().fixture_dir
    candidate = fixture_dir / path.name
    logger.debug("Looking for %s in fixture directory %s", path.name, fixture_dir)
    if candidate.exists():
        return candidate
    raise FileNotFoundError(f"no such file: {text}")


def _load_tree(text: str) -> trees.WFTree:
    path = Path(text)
    if path.suffix == ".tree" or path.exists():
        return trees.parse_tree(resolve_path(text).read_text(encoding="utf-8"))
    return trees.parse_tree(text)


def _binary_tree(tree: trees.WFTree) -> trees2d.BinaryTree:
    def count(address: tuple[int, ...]) -> int:
        node = tree
        for index in address:
            node = trees.children(node)[index]
        return len(trees.children(node))

    return trees2d.binary_from_children(count)


def _shape(text: str) -> trees2d.BinaryTree:
    """``full``, ``trap:N`` or ``path:BITS[:SIDE]``."""
    name, _, rest = text.partition(":")
    try:
        if name == "full" and not rest:
            return trees2d.full_tree
        if name == "trap":
            return trees2d.trap_tree(int(rest))
        if name == "path":
            bits, _, side = rest.partition(":")
            return trees2d.path_tree([int(bit) for bit in bits], int(side or 1))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tree shape {text!r}") from exc
    raise argparse.ArgumentTypeError(f"unknown tree shape {text!r}; use full, trap:N or path:BITS")


def _samples(text: str) -> tuple[int, ...]:
    try:
        return trees.parse_samples(text)
    except InfChessError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _path(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad branch path {text!r}") from exc


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget.from_settings(
        mate_bound=getattr(args, "mate_in", None),
        horizon=getattr(args, "horizon", None),
        node_limit=getattr(args, "node_limit", None),
    )


def _position(args: argparse.Namespace) -> Position:
    if getattr(args, "pos", None):
        return notation.load_position(resolve_path(args.pos))
    return figures.generate(args.figure)


def _game(args: argparse.Namespace) -> _Game:
    """Position for the play commands: a file, a figure or a freshly embedded tree."""
    if args.pos or args.figure:
        return _Game(_position(args))
    if args.shape is not None:
        embedding = trees2d.embed_tree_2d(args.shape, args.style, args.depth)
        return _Game(embedding.position, embedding.layout_for(Color.BLACK))
    tree = _load_tree(args.tree)
    if args.dims == 3:
        position, layout = trees3d.gen_tree_3d(tree, args.samples, threat=not args.no_threat)
        return _Game(position, layout)
    embedding = trees2d.embed_tree_2d(_binary_tree(tree), args.style, args.depth)
    return _Game(embedding.position, embedding.layout_for(Color.BLACK))


def _emit(args: argparse.Namespace, out: TextIO, summary: str, *lines: str) -> None:
    if args.summary:
        print(summary, file=out)
        return
    for text in lines:
        print(text, file=out)


# --- commands -----------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    status = EXIT_OK
    for name in args.paths:
        position = notation.load_position(resolve_path(name))
        problems = movegen.validate(position, allow_check=args.allow_check)
        errors = [problem for problem in problems if problem.severity == "error"]
        if errors:
            status = EXIT_CLAIM_FAILED
        if args.summary:
            print(f"validate path={name} status={'fail' if errors else 'ok'} problems={len(problems)}", file=out)
            continue
        key = "validate.problems" if problems else "validate.ok"
        print(translate(key, locale=args.locale, path=name, count=len(problems)), file=out)
        for problem in problems:
            print(f"  {problem}", file=out)
    return status


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    position = _position(args)
    budget = _budget(args)
    result = mate_search(position, budget)
    if args.report:
        print(reports.solve_report(position, result, budget, locale=args.locale), end="", file=out)
        return EXIT_OK if result.found else EXIT_CLAIM_FAILED
    message = (
        translate("solve.mate", locale=args.locale, moves=result.moves)
        if result.found
        else translate("solve.none", locale=args.locale, bound=budget.mate_bound)
    )
    lines = [str(result), message]
    if result.horizon_relative:
        lines.append(translate("solve.horizon", locale=args.locale, horizon=budget.horizon))
    summary = (
        f"solve outcome={result.outcome.value} moves={result.moves if result.found else '-'} "
        f"nodes={result.nodes} horizon_relative={str(result.horizon_relative).lower()}"
    )
    _emit(args, out, summary, *lines)
    return EXIT_OK if result.found else EXIT_CLAIM_FAILED


def cmd_value(args: argparse.Namespace, out: TextIO) -> int:
    if args.counting or args.tree:
        game = counting_game(parse_ordinal(args.counting)) if args.counting else climbing_game(_load_tree(args.tree))
        value = format_ordinal(generic_value(game, node_limit=_budget(args).node_limit))
        _emit(args, out, f"value kind=game value={value.replace(' ', '')}", translate(
            "value.finite", locale=args.locale, value=value
        ))
        return EXIT_OK
    budget = _budget(args)
    finite = value_finite(_position(args), budget)
    if finite is None:
        _emit(args, out, f"value none bound={budget.mate_bound}", translate(
            "value.none", locale=args.locale, bound=budget.mate_bound
        ))
        return EXIT_CLAIM_FAILED
    _emit(args, out, f"value kind=finite value={finite}", translate("value.finite", locale=args.locale, value=finite))
    return EXIT_OK


def cmd_certify(args: argparse.Namespace, out: TextIO) -> int:
    budget = _budget(args)
    workers = args.workers or get_settings().workers
    if args.builder == "fig-omega3":
        structural = certify.certify_omega_cubed(args.samples or (1, 2, 3), budget, workers=workers)
        lines = [structural.summary_line(), *structural.checks, *structural.failures]
        _emit(args, out, structural.summary_line(), *lines)
        return EXIT_OK if structural.passed else EXIT_CLAIM_FAILED
    if args.builder:
        position, cert = certify.build(args.builder)
        if args.pos:
            position = _position(args)
    else:
        if not args.cert:
            raise argparse.ArgumentTypeError("certify needs --cert FILE or --builder NAME")
        position = _position(args)
        arena, _ = arena_for(position, budget)
        cert = read_certificate(resolve_path(args.cert), arena)
    report = verify_certificate(position, cert, budget, samples=args.samples, workers=workers)
    if args.report:
        print(reports.certificate_report(report, locale=args.locale), end="", file=out)
    else:
        message = (
            translate("certify.pass", locale=args.locale, claim=format_ordinal(report.claim))
            if report.passed
            else translate(
                "certify.fail", locale=args.locale, reason=report.reason, path=report.path_text, detail=report.detail
            )
        )
        _emit(args, out, report.summary_line(), message, report.summary_line())
    return EXIT_OK if report.passed else EXIT_CLAIM_FAILED


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    comments: list[str] = []
    certificate_text = None
    if args.figure:
        position = figures.generate(args.figure)
        comments.append(f"figure {args.figure}")
    elif args.shape is not None:
        position = trees2d.gen_tree_2d(args.shape, args.style, args.depth)
        comments.append(f"tree shape {args.shape_text} style {args.style} depth {args.depth}")
    else:
        tree = _load_tree(args.tree)
        comments.append(f"tree {trees.format_tree(tree)}")
        if args.dims == 3:
            position, layout = trees3d.gen_tree_3d(tree, args.samples, threat=not args.no_threat)
            if args.cert_out:
                cert = trees3d.build_embedding_certificate(tree, position, layout)
                arena, _ = arena_for(position, _budget(args))
                certificate_text = dump_certificate(cert, arena)
        else:
            position = trees2d.gen_tree_2d(_binary_tree(tree), args.style, args.depth)
            comments.append(f"style {args.style} depth {args.depth}")
    text = notation.serialize_position(position, comments=comments)
    if not args.out:
        print(text, end="", file=out)
        return EXIT_OK
    Path(args.out).write_text(text, encoding="utf-8")
    lines = [translate("gen.written", locale=args.locale, path=args.out)]
    if args.cert_out:
        if certificate_text is None:
            raise argparse.ArgumentTypeError("--cert-out needs a three-dimensional --tree")
        Path(args.cert_out).write_text(certificate_text, encoding="utf-8")
        lines.append(translate("gen.certificate", locale=args.locale, path=args.cert_out))
    _emit(args, out, f"gen out={args.out} dims={position.dims} regions={len(position.board.regions)}", *lines)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace, out: TextIO) -> int:
    tree = _load_tree(args.tree)
    value = format_ordinal(trees.rank(tree))
    _emit(args, out, f"rank value={value.replace(' ', '')} nodes={trees.size(tree)}", translate(
        "rank.value", locale=args.locale, rank=value
    ))
    return EXIT_OK


def _strategy(args: argparse.Namespace, name: str, side: Color, game: _Game, seed: int = 0) -> strategies.Strategy:
    return strategies.make_strategy(
        name,
        side,
        layout=game.layout,
        path=args.path,
        schedule=args.schedule,
        seed=seed,
        budget=_budget(args),
    )


def cmd_simulate(args: argparse.Namespace, out: TextIO) -> int:
    game = _game(args)
    white = _strategy(args, args.white, Color.WHITE, game, args.seed)
    black = _strategy(args, args.black, Color.BLACK, game, args.seed)
    transcript = simulate(game.position, white, black, args.max_plies)
    if args.report:
        print(reports.simulate_report(transcript, locale=args.locale), end="", file=out)
        return EXIT_OK
    lines = [
        translate("simulate.outcome", locale=args.locale, outcome=transcript.outcome, plies=transcript.plies),
    ]
    runs = check_runs(transcript, Color.BLACK)
    if runs:
        lines.append(f"black check runs: {runs}")
    _emit(args, out, transcript.summary_line(), *lines)
    return EXIT_OK


def cmd_tournament(args: argparse.Namespace, out: TextIO) -> int:
    game = _game(args)
    whites = [_strategy(args, name, Color.WHITE, game, args.seed) for name in args.whites]
    if args.suite:
        if game.layout is None:
            raise StrategyError("the black suite needs a generated tree position", strategy="suite", reason="no-layout")
        blacks = strategies.black_suite(game.layout, args.suite)
    else:
        blacks = [_strategy(args, name, Color.BLACK, game, args.seed + i) for i, name in enumerate(args.blacks)]
    result = strategy_tournament(game.position, whites, blacks, args.max_plies, workers=args.workers)
    if args.report:
        print(reports.tournament_report(result, locale=args.locale), end="", file=out)
        return EXIT_OK
    message = translate(
        "tournament.done",
        locale=args.locale,
        games=result.games,
        white=result.wins(Color.WHITE),
        black=result.wins(Color.BLACK),
    )
    _emit(args, out, result.summary_line(), message)
    return EXIT_OK


def cmd_repl(args: argparse.Namespace, out: TextIO) -> int:
    return repl(_position(args), _budget(args), stdin=sys.stdin, out=out, locale=args.locale)


def repl(
    position: Position,
    budget: SearchBudget,
    *,
    stdin: TextIO,
    out: TextIO,
    locale: str | None = None,
    engine: Color = Color.WHITE,
) -> int:
    """Engine plays ``engine`` by value-reducing moves; the other side is read from ``stdin``."""
    print(translate("repl.welcome", locale=locale, side=engine.value), file=out)
    current = position
    while True:
        state = movegen.status(current)
        if state.kind is not Status.ONGOING:
            print(translate("repl.status", locale=locale, status=state), file=out)
            return EXIT_OK
        if current.to_move is engine:
            move = value_reducing_move(current, budget)
            print(translate("repl.engine", locale=locale, move=notation.format_move(move, current)), file=out)
            current = movegen.apply(current, move, check=False)
            print(translate("repl.status", locale=locale, status=movegen.status(current)), file=out)
            continue
        print("> ", end="", file=out)
        text = stdin.readline()
        if not text:
            print(translate("repl.bye", locale=locale), file=out)
            return EXIT_OK
        command = text.strip()
        if not command:
            continue
        if command == "quit":
            print(translate("repl.bye", locale=locale), file=out)
            return EXIT_OK
        if command == "board":
            board = notation.diagram(current) if current.dims == 2 else notation.serialize_position(current)
            print(board, file=out)
            continue
        if command == "moves":
            moves = movegen.legal_moves(current).instantiate(budget.horizon)[:REPL_LISTED_MOVES]
            print(" ".join(notation.format_move(move, current) for move in moves), file=out)
            continue
        try:
            move = notation.resolve_move(current, command)
        except InfChessError as exc:
            print(translate("repl.illegal", locale=locale, detail=exc), file=out)
            continue
        current = movegen.apply(current, move, check=False)
        print(translate("repl.status", locale=locale, status=movegen.status(current)), file=out)


# --- parser -------------------------------------------------------------------------


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--summary", action="store_true", help="Print one machine-readable line")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--locale", help="Message language (en, ru)")


def _budget_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mate-in", dest="mate_in", type=int, help="Longest mate searched, in white moves")
    parser.add_argument("--horizon", type=int, help="Largest family distance instantiated")
    parser.add_argument("--node-limit", dest="node_limit", type=int, help="Search node budget")


def _source(parser: argparse.ArgumentParser, *, required: bool = True) -> argparse._MutuallyExclusiveGroup:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--pos", help="ICN position file")
    group.add_argument("--figure", choices=sorted(figures.FIGURE_GENERATORS), help="Built-in figure")
    return group


def _tree_options(parser: argparse.ArgumentParser, group: argparse._MutuallyExclusiveGroup) -> None:
    group.add_argument("--tree", help="Tree file or inline tree text")
    group.add_argument("--shape", dest="shape_text", help="Binary tree for the plane: full, trap:N or path:BITS")
    parser.add_argument("--dims", type=int, choices=(2, 3), default=2)
    parser.add_argument("--style", choices=[style.value for style in trees2d.TreeStyle], default="rook-pawn")
    parser.add_argument("--depth", type=int, default=3, help="Channel levels drawn in the plane")
    parser.add_argument("--samples", type=_samples, help="Omega children kept in space, e.g. 1..3")
    parser.add_argument("--no-threat", dest="no_threat", action="store_true", help="Leave out the counter-threat")


def _play_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-plies", dest="max_plies", type=int, default=10_000)
    parser.add_argument("--path", type=_path, default=(0,), help="Branch labels the follower repeats")
    parser.add_argument("--schedule", type=_path, default=(1, 2, 3), help="Harassment check counts")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--report", action="store_true", help="Render the full text report")
    _budget_options(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infchess", description="Ordinal values of infinite chess positions")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="Check that positions are well formed")
    validate.add_argument("paths", nargs="+")
    validate.add_argument("--allow-check", dest="allow_check", action="store_true")
    _common(validate)

    solve = sub.add_parser("solve", help="Search for a forced mate")
    _source(solve)
    _budget_options(solve)
    solve.add_argument("--report", action="store_true")
    _common(solve)

    value = sub.add_parser("value", help="Finite value of a position or the value of a game")
    group = value.add_mutually_exclusive_group(required=True)
    group.add_argument("--pos")
    group.add_argument("--figure", choices=sorted(figures.FIGURE_GENERATORS))
    group.add_argument("--counting", help="Counting-down game from this ordinal")
    group.add_argument("--tree", help="Climbing game on this tree")
    _budget_options(value)
    _common(value)

    cert = sub.add_parser("certify", help="Verify a value certificate")
    _source(cert, required=False)
    cert.add_argument("--cert", help="Certificate file")
    cert.add_argument(
        "--builder", choices=[*certify.CERTIFICATE_BUILDERS, "fig-omega3"], help="Built-in certificate"
    )
    cert.add_argument("--samples", type=_samples, help="Family members checked, e.g. 1..5")
    cert.add_argument("--workers", type=int)
    cert.add_argument("--report", action="store_true")
    _budget_options(cert)
    _common(cert)

    gen = sub.add_parser("gen", help="Write a figure or a tree embedding as ICN")
    group = gen.add_mutually_exclusive_group(required=True)
    group.add_argument("--figure", choices=sorted(figures.FIGURE_GENERATORS))
    _tree_options(gen, group)
    gen.add_argument("--out", help="Output file (default: standard output)")
    gen.add_argument("--cert-out", dest="cert_out", help="Also write the embedding certificate (3D)")
    _common(gen)

    rank = sub.add_parser("rank", help="Rank of a well-founded tree")
    rank.add_argument("--tree", required=True)
    _common(rank)

    sim = sub.add_parser("simulate", help="Play two strategies against each other")
    group = _source(sim)
    _tree_options(sim, group)
    sim.add_argument("--white", choices=strategies.STRATEGY_NAMES, default="pusher")
    sim.add_argument("--black", choices=strategies.STRATEGY_NAMES, default="follower")
    _play_options(sim)
    _common(sim)

    tour = sub.add_parser("tournament", help="Every white strategy against every black one")
    group = _source(tour)
    _tree_options(tour, group)
    tour.add_argument("--whites", nargs="+", choices=strategies.STRATEGY_NAMES, default=["pusher"])
    tour.add_argument("--blacks", nargs="*", choices=strategies.STRATEGY_NAMES, default=["follower"])
    tour.add_argument("--suite", type=int, default=0, help="Use this many generated black strategies instead")
    tour.add_argument("--workers", type=int)
    _play_options(tour)
    _common(tour)

    rep = sub.add_parser("repl", help="Play black against the value-reducing engine")
    _source(rep)
    _budget_options(rep)
    _common(rep)
    return parser


COMMANDS: dict[str, Callable[[argparse.Namespace, TextIO], int]] = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "value": cmd_value,
    "certify": cmd_certify,
    "gen": cmd_gen,
    "rank": cmd_rank,
    "simulate": cmd_simulate,
    "tournament": cmd_tournament,
    "repl": cmd_repl,
}


def run(argv: Sequence[str] | None = None, *, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    configure_logging(args.verbose)
    args.locale = args.locale or get_settings().locale
    if "shape_text" in args:
        try:
            args.shape = _shape(args.shape_text) if args.shape_text else None
        except argparse.ArgumentTypeError as exc:
            print(translate("error.input", locale=args.locale, detail=exc), file=err)
            return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except SearchBudgetExhaustedError as exc:
        print(translate("error.budget", locale=args.locale, nodes=exc.nodes), file=err)
        return EXIT_BUDGET
    except NoValueError as exc:
        print(translate("error.input", locale=args.locale, detail=exc), file=err)
        return EXIT_CLAIM_FAILED
    except StrategyError as exc:
        print(translate("error.strategy", locale=args.locale, strategy=exc.strategy, detail=exc), file=err)
        return EXIT_INPUT
    except (InfChessError, OSError, argparse.ArgumentTypeError) as exc:
        print(translate("error.input", locale=args.locale, detail=exc), file=err)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        logger.exception("Command %s failed", args.command)
        print(translate("error.unexpected", locale=args.locale, detail=exc), file=err)
        return EXIT_INPUT


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
