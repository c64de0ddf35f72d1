from pathlib import Path

import pytest

from infchess.core.errors import CertificateFormatError
from infchess.models.ordinal import OMEGA, FamilyValueFormula, Ordinal
from infchess.models.pieces import Color
from infchess.services import notation
from infchess.services.arenas import ChessArena, GameArena
from infchess.services.certificates import (
    CertNode,
    Mode,
    MoveEdge,
    ValueCertificate,
    black,
    black_move,
    dump_certificate,
    family,
    leaf,
    load_certificate,
    read_certificate,
    verify_certificate,
    white,
)
from infchess.services.games import CountingState, counting_game
from infchess.services.solver import SearchBudget

BUDGET = SearchBudget(mate_bound=3, horizon=10, node_limit=100_000)


def _black_at(value: int) -> CountingState:
    return CountingState(Ordinal.of(value), Color.BLACK)


def _white_at(value: int) -> CountingState:
    return CountingState(Ordinal.of(value), Color.WHITE)


def _countdown_from_white(n: int) -> CertNode:
    """White acknowledges ``n``; black then always names the largest smaller number."""
    node = leaf(0)
    for m in range(1, n + 1):
        node = black_move(_white_at(m - 1), white(_black_at(m - 1), node))
    return white(_black_at(n), node)


def _countdown_two() -> CertNode:
    lower_branch = white(_black_at(0), leaf(0))
    upper_branch = white(_black_at(1), black(MoveEdge(_white_at(0), white(_black_at(0), leaf(0)))))
    return black(MoveEdge(_white_at(1), upper_branch), MoveEdge(_white_at(0), lower_branch))


def _omega_cert(formula: FamilyValueFormula | None = None) -> ValueCertificate:
    edge = family("cnf", _countdown_from_white, (1, 2, 3), formula=formula)
    return ValueCertificate(Mode.LOWER, black(edge), "game")


def test_upper_certificate_of_a_finite_count() -> None:
    cert = ValueCertificate(Mode.UPPER, _countdown_two(), "game")
    assert cert.claim == Ordinal.of(2)
    report = verify_certificate(counting_game(Ordinal.of(2)), cert, BUDGET)
    assert report.passed
    assert report.summary_line() == "certify pass mode=upper claim=2 nodes=7 leaves=0 samples=0 caveats=none"


def test_upper_certificate_must_cover_every_move() -> None:
    full = _countdown_two()
    cert = ValueCertificate(Mode.UPPER, black(full.edges[0]), "game")
    report = verify_certificate(counting_game(Ordinal.of(2)), cert, BUDGET)
    assert not report.passed
    assert report.reason == "uncovered-move"
    assert report.path_text == "root"


def test_wrong_claim_is_an_ordinal_mismatch() -> None:
    full = _countdown_two()
    cert = ValueCertificate(Mode.LOWER, CertNode(Ordinal.of(3), full.edges), "game")
    report = verify_certificate(counting_game(Ordinal.of(2)), cert, BUDGET)
    assert report.reason == "ordinal-mismatch"


def test_family_certificate_of_omega() -> None:
    cert = _omega_cert()
    assert cert.claim == OMEGA
    report = verify_certificate(counting_game(OMEGA), cert, BUDGET)
    assert report.passed
    assert report.samples == 3
    wider = verify_certificate(counting_game(OMEGA), cert, BUDGET, samples=(1, 2, 3, 4, 5), workers=2)
    assert wider.passed
    assert wider.samples == 5


def test_wrong_family_formula_fails_at_the_sample() -> None:
    cert = _omega_cert(FamilyValueFormula.linear(0, 1, 2))
    report = verify_certificate(counting_game(OMEGA), cert, BUDGET)
    assert report.reason == "sample-mismatch"
    assert report.path_text == "root / family cnf n=1"


def test_game_certificate_text_verifies_after_loading() -> None:
    game = counting_game(OMEGA)
    arena = GameArena(game)
    text = dump_certificate(_omega_cert(), arena)
    assert "family id=cnf step=1 offset=0 samples=1..3 formula=(n+1)" in text
    loaded = load_certificate(text, arena)
    assert loaded.claim == OMEGA
    assert verify_certificate(game, loaded, BUDGET).passed
    with pytest.raises(KeyError):
        loaded.root.edges[0].template(4)  # type: ignore[union-attr]


def _fig2_text(fixture_dir: Path) -> str:
    return (fixture_dir / "fig2_omega.cert").read_text(encoding="utf-8")


def test_rook_climb_certificate(fixture_dir: Path) -> None:
    position = notation.load_position(fixture_dir / "fig2.icn")
    cert = read_certificate(fixture_dir / "fig2_omega.cert", ChessArena(BUDGET))
    report = verify_certificate(position, cert, BUDGET)
    assert report.passed, report.detail
    assert report.claim == OMEGA
    assert (report.samples, report.leaves) == (5, 0)
    assert report.summary_line().startswith("certify pass mode=lower claim=w ")


@pytest.mark.parametrize(
    ("old", "new", "reason"),
    [
        ("sample n=1 claim=2", "sample n=1 claim=3", "sample-mismatch"),
        ("move (6,3)->(6,5) claim=1", "move (6,3)->(9,9) claim=1", "illegal-edge"),
        ("move (4,3)->(4,5) claim=0 leaf", "move (4,3)->(4,4) claim=0 leaf", "leaf-mismatch"),
    ],
)
def test_broken_rook_climb_certificates(fixture_dir: Path, old: str, new: str, reason: str) -> None:
    position = notation.load_position(fixture_dir / "fig2.icn")
    text = _fig2_text(fixture_dir).replace(old, new, 1)
    report = verify_certificate(position, load_certificate(text, ChessArena(BUDGET)), BUDGET)
    assert not report.passed
    assert report.reason == reason


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("cert 2\nmode lower\narena chess\nroot claim=0 leaf\n", 1),
        ("cert 1\nmode sideways\narena chess\nroot claim=0 leaf\n", 2),
        ("cert 1\nmode lower\narena chess\nroot claim=w\n   move (1,1)->(1,2) claim=0 leaf\n", 5),
        ("cert 1\nmode lower\narena chess\nroot claim=x\n", 4),
    ],
)
def test_certificate_format_errors(text: str, line: int) -> None:
    with pytest.raises(CertificateFormatError) as info:
        load_certificate(text, ChessArena(BUDGET))
    assert info.value.line == line
