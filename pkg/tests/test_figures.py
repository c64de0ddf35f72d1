import pytest

from infchess.core.errors import LayoutError
from infchess.models.pieces import Color
from infchess.services import movegen, notation
from infchess.services.embeddings import figures

WINDOWS = {
    "fig1": "mate-in-17",
    "fig2": "omega",
    "fig2-left": "omega-left",
    "fig2-right": "omega-right",
    "door-rook-door": "rook-door",
    "door-bishop-queen-door": "bishop-queen-door",
    "door-rook-mate-door": "rook-mate-door",
    "omega2-door-harass": "door-harass",
    "omega2-bishop-door-harass": "bishop-door-harass",
    "omega2-knight-door": "knight-door",
    "omega2-hordes": "hordes",
    "lock": "lock",
    "lock-key": "lock-key",
    "fig-omega3": "omega3",
    "fig-omega3-detail": "omega3-detail",
}


@pytest.mark.parametrize(("name", "window"), sorted(WINDOWS.items()))
def test_generated_figure_reproduces_its_window(name: str, window: str) -> None:
    assert figures.window_matches(figures.generate(name), window) == []


def test_window_rows_are_read_from_the_top() -> None:
    table = figures.figure_window("omega")
    assert table[(5, 5)] == figures.BK
    assert table[(4, 3)] == figures.WQ
    assert [sq for sq, piece in table.items() if piece == figures.BR] == [(3, 6), (5, 6), (7, 6)]
    assert table[(9, 11)] is None


def test_too_wide_row_is_rejected() -> None:
    with pytest.raises(LayoutError, match="wider"):
        figures.FigureWindow(("3PPP",), 4).squares()


def test_fixture_matches_value_omega_generator(fixture_dir) -> None:
    loaded = notation.load_position(fixture_dir / "fig2.icn")
    generated = figures.gen_fig2_omega()
    assert loaded.to_move is Color.BLACK
    assert sorted(loaded.board.placed) == sorted(generated.board.placed)


@pytest.mark.parametrize("n", [3, 17])
def test_fixture_matches_mate_in_n_generator(fixture_dir, n: int) -> None:
    loaded = notation.load_position(fixture_dir / f"fig1_n{n}.icn")
    assert loaded == figures.gen_mate_in_n(n)


def test_mate_in_n_line_notation() -> None:
    assert figures.mate_in_n_line(3) == "1.Re3+ Kf4 2.Qe5+ Kg4 3.Rg3#"


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_mate_in_n_line_mates(n: int) -> None:
    position = figures.gen_mate_in_n(n)
    for move in figures.mate_in_n_moves(n):
        assert movegen.is_legal(position, move)
        position = movegen.apply(position, move)
    assert movegen.is_checkmate(position)


@pytest.mark.parametrize("name", ["fig1", "fig2"])
def test_finite_figures_validate(name: str) -> None:
    assert list(movegen.validate(figures.generate(name))) == []


def test_variants_shift_the_battery() -> None:
    assert figures.omega_shift() == (0, 0)
    assert figures.omega_shift("right") == (1, 1)
    with pytest.raises(LayoutError):
        figures.omega_shift("middle")


@pytest.mark.parametrize(
    "make",
    [
        lambda: figures.generate("fig9"),
        lambda: figures.gen_mate_in_n(0),
        lambda: figures.gen_fig2_omega("middle"),
        lambda: figures.figure_window("nowhere"),
    ],
)
def test_unknown_figures_raise(make) -> None:
    with pytest.raises(LayoutError):
        make()


def test_tower_chain_layout_grows_with_k() -> None:
    assert len(figures.chain_layout(1).towers) == 1
    assert len(figures.chain_layout(3).towers) == 3


def test_bishop_distance_enables_towers() -> None:
    for count in (1, 2, 3):
        distance = figures.distance_for_towers(count)
        assert len(figures.enabled_towers(distance)) == count


@pytest.mark.parametrize("index", range(figures.OMEGA3_TOWERS))
def test_bishop_position_carries_every_tower(index: int) -> None:
    position = figures.gen_omega_cubed()
    tower = figures.diagonal_tower(index)
    assert position.piece_at(tower.rook) == figures.BR
    assert position.piece_at(tower.lock) == figures.BP
    assert position.piece_at(tower.key) == figures.WP
    assert position.board.first_occupied(tower.rook, (0, 1)) is None


def test_bishop_position_towers_reach_the_longest_enabling_move() -> None:
    towers = 10
    position = figures.gen_omega_cubed(towers)
    distance = figures.distance_for_towers(towers)
    assert len(figures.enabled_towers(distance)) == towers
    last = figures.diagonal_tower(towers - 1)
    assert position.piece_at(last.rook) == figures.BR
    assert position.piece_at(figures.diagonal_tower(towers).rook) is None


def test_bishop_position_needs_the_shown_towers() -> None:
    with pytest.raises(LayoutError):
        figures.gen_omega_cubed(figures.OMEGA3_TOWERS_SHOWN - 1)
