import io
import sys
from pathlib import Path

import pytest

from infchess.main import EXIT_BUDGET, EXIT_CLAIM_FAILED, EXIT_INPUT, EXIT_OK, run
from infchess.services import notation
from infchess.services.embeddings import figures

BARE_KINGS = "icn 1\nvariant 2d\nto-move white\npiece B K (0,0)\npiece W K (6,6)\n"


def _run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def bare_kings(tmp_path: Path) -> str:
    path = tmp_path / "kings.icn"
    path.write_text(BARE_KINGS, encoding="utf-8")
    return str(path)


def test_validate_fixture_by_name() -> None:
    code, out, _ = _run("validate", "fig1_n17.icn")
    assert code == EXIT_OK
    assert out.strip() == "fig1_n17.icn: position is valid."


def test_missing_file_is_an_input_error() -> None:
    code, _, err = _run("validate", "nowhere.icn")
    assert code == EXIT_INPUT
    assert err.startswith("Input error:")


def test_rank_of_a_tree_file() -> None:
    assert _run("rank", "--tree", "fig_left.tree") == (EXIT_OK, "Rank: w + 2\n", "")
    code, out, _ = _run("rank", "--tree", "fig_left.tree", "--summary")
    assert code == EXIT_OK
    assert out.startswith("rank value=w+2 nodes=")
    assert _run("rank", "--tree", "fig_left.tree", "--locale", "ru")[1] == "Ранг: w + 2\n"


def test_counting_game_value() -> None:
    assert _run("value", "--counting", "w + 1", "--summary") == (EXIT_OK, "value kind=game value=w+1\n", "")


def test_certify_with_builder() -> None:
    code, out, _ = _run("certify", "--builder", "fig2", "--mate-in", "3", "--horizon", "10", "--summary")
    assert code == EXIT_OK
    assert out.startswith("certify pass mode=lower claim=w ")


def test_certify_fixture_certificate() -> None:
    code, out, _ = _run(
        "certify", "--pos", "fig2.icn", "--cert", "fig2_omega.cert", "--mate-in", "3", "--horizon", "10"
    )
    assert code == EXIT_OK
    assert out.splitlines()[0] == "Certificate holds: claim w."


def test_certify_needs_a_certificate() -> None:
    code, _, err = _run("certify", "--figure", "fig2")
    assert code == EXIT_INPUT
    assert "--cert" in err


@pytest.mark.slow
def test_solve_mate_in_three() -> None:
    code, out, _ = _run("solve", "--pos", "fig1_n3.icn", "--mate-in", "3", "--horizon", "12")
    assert code == EXIT_OK
    assert out.splitlines() == ["WhiteWinsIn 3", "White mates in 3."]


def test_solve_out_of_budget() -> None:
    code, _, err = _run("solve", "--pos", "fig1_n3.icn", "--node-limit", "1")
    assert code == EXIT_BUDGET
    assert err.startswith("Search budget exhausted after")


def test_gen_figure_to_stdout_and_file(tmp_path: Path) -> None:
    code, out, _ = _run("gen", "--figure", "fig2")
    assert code == EXIT_OK
    assert out.startswith("# figure fig2\nicn 1\n")

    target = tmp_path / "fig2.icn"
    code, out, _ = _run("gen", "--figure", "fig2", "--out", str(target))
    assert code == EXIT_OK
    assert out.strip() == f"Position written to {target}."
    assert notation.load_position(target) == figures.gen_fig2_omega()


def test_bad_shape_is_an_input_error() -> None:
    code, _, err = _run("gen", "--shape", "spiral")
    assert code == EXIT_INPUT
    assert "unknown tree shape" in err


def test_simulate_random_players(bare_kings: str) -> None:
    code, out, _ = _run(
        "simulate", "--pos", bare_kings, "--white", "random", "--black", "random", "--max-plies", "6", "--summary"
    )
    assert code == EXIT_OK
    assert out == "simulate outcome=Cutoff plies=6 white=random[0](white) black=random[0](black)\n"


def test_pusher_needs_a_tree_position(bare_kings: str) -> None:
    code, _, err = _run("simulate", "--pos", bare_kings, "--black", "random")
    assert code == EXIT_INPUT
    assert err.startswith("Strategy pusher failed")


def test_tournament_summary(bare_kings: str) -> None:
    code, out, _ = _run(
        "tournament", "--pos", bare_kings, "--whites", "random", "--blacks", "random", "random",
        "--max-plies", "4", "--summary",
    )
    assert code == EXIT_OK
    assert out == "tournament games=2 white_wins=0 black_wins=0 draws=2\n"


def test_repl_quits_and_rejects_illegal_moves(monkeypatch) -> None:
    monkeypatch.setattr(sys, "stdin", io.StringIO("Kz9\nquit\n"))
    code, out, _ = _run("repl", "--pos", "fig2.icn")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "Engine plays white. Enter moves, 'board', 'moves' or 'quit'."
    assert any(line.startswith("> Not a legal move:") for line in lines)
    assert lines[-1] == "> Bye."


def test_repl_ends_on_closed_input(monkeypatch) -> None:
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    code, out, _ = _run("repl", "--pos", "fig2.icn")
    assert code == EXIT_OK
    assert out.endswith("Bye.\n")


@pytest.mark.parametrize(("argv", "code"), [(["--help"], EXIT_OK), (["frobnicate"], EXIT_INPUT), ([], EXIT_INPUT)])
def test_argument_parsing_exit_codes(argv: list[str], code: int) -> None:
    assert run(argv, out=io.StringIO(), err=io.StringIO()) == code


def test_claim_failure_exit_code(tmp_path: Path) -> None:
    path = tmp_path / "kings.icn"
    path.write_text(BARE_KINGS, encoding="utf-8")
    code, out, _ = _run("solve", "--pos", str(path), "--mate-in", "1", "--horizon", "4", "--summary")
    assert code == EXIT_CLAIM_FAILED
    assert out.startswith("solve outcome=NoMateWithinBudget moves=-")
