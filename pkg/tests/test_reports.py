from infchess.models.board import Board
from infchess.models.ordinal import Ordinal
from infchess.models.pieces import Color, piece
from infchess.models.position import Position
from infchess.services import reports
from infchess.services.certificates import Mode, VerificationReport
from infchess.services.simulation import GameOutcome, OutcomeKind, TournamentResult, Transcript
from infchess.services.solver import MateResult, Outcome, SearchBudget


def _position() -> Position:
    return Position.create(Board.build(2, {(1, 1): piece("WK"), (3, 2): piece("BK")}), Color.WHITE)


def test_certificate_report_pass_and_fail() -> None:
    passed = VerificationReport(True, Mode.LOWER, Ordinal.of(2), nodes=7, samples=3)
    text = reports.certificate_report(passed, locale="en")
    assert text.startswith("Certificate report\n")
    assert "Verdict: pass" in text
    assert "Claim: 2" in text
    assert "Caveats: none" in text
    assert "Reason" not in text

    failed = VerificationReport(
        False, Mode.UPPER, Ordinal.of(1), reason="uncovered-move", path=("family cnf n=1",), detail="missing"
    )
    text = reports.certificate_report(failed, locale="ru")
    assert text.startswith("Отчёт о сертификате\n")
    assert "Путь: root / family cnf n=1" in text
    assert "отклонён" in text


def test_solve_report_shows_the_board() -> None:
    result = MateResult(Outcome.WHITE_WINS, 1, nodes=12, horizon_relative=True)
    text = reports.solve_report(_position(), result, SearchBudget(mate_bound=2, horizon=8, node_limit=100), "1.Kb2")
    assert "Mate search report" in text
    assert "Outcome: WhiteWinsIn 1" in text
    assert "mate_bound=2 horizon=8 node_limit=100" in text
    assert "Moves: 1.Kb2" in text
    assert "horizon-relative" in text


def test_simulate_report_without_moves() -> None:
    transcript = Transcript(_position(), "random[0](white)", "random[0](black)", outcome=GameOutcome(OutcomeKind.CUTOFF))
    text = reports.simulate_report(transcript, locale="en")
    assert "Game transcript" in text
    assert "Outcome: Cutoff" in text


def test_tournament_report_table() -> None:
    result = TournamentResult(["pusher(white)"], ["follower(black)"], [[GameOutcome(OutcomeKind.WHITE_MATE, 4)]])
    text = reports.tournament_report(result, locale="en")
    assert "Strategy tournament" in text
    assert "WhiteMate(4)" in text
    assert text.rstrip().endswith("tournament games=1 white_wins=1 black_wins=0 draws=0")
