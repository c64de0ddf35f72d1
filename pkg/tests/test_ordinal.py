import pytest

from infchess.core.errors import MalformedFormulaError, OrdinalError, OrdinalOverflowError
from infchess.models.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    FamilyValueFormula,
    Ordering,
    Ordinal,
    add,
    compare,
    eval_formula,
    format_ordinal,
    nat_mul,
    omega_pow,
    parse_formula,
    parse_ordinal,
    succ,
    sup_family,
)


def test_parse_and_format_keep_cantor_normal_form() -> None:
    value = parse_ordinal("w^2*3 + w + 4")
    assert value.terms == ((2, 3), (1, 1), (0, 4))
    assert format_ordinal(value) == "w^2*3 + w + 4"
    assert format_ordinal(ZERO) == "0"
    assert parse_ordinal("ω*2 + 1") == parse_ordinal("w*2 + 1")


def test_left_terms_are_absorbed_by_larger_right_terms() -> None:
    assert add(ONE, OMEGA) == OMEGA
    assert Ordinal.of(5) + OMEGA == OMEGA
    assert OMEGA + 1 != OMEGA
    assert parse_ordinal("w + 3") + parse_ordinal("w*2") == parse_ordinal("w*3")
    assert parse_ordinal("w^2 + w") + parse_ordinal("w^2") == parse_ordinal("w^2*2")


def test_ordering_is_lexicographic_on_terms() -> None:
    assert OMEGA > Ordinal.of(10**9)
    assert parse_ordinal("w*2") > parse_ordinal("w + 100")
    assert parse_ordinal("w^2") > parse_ordinal("w*50 + 7")
    assert compare(succ(OMEGA), OMEGA) is Ordering.GREATER
    assert compare(OMEGA, OMEGA) is Ordering.EQUAL
    assert Ordinal.of(3) < 4


def test_finite_ordinals_equal_their_ints() -> None:
    assert Ordinal.of(3) == 3
    assert ZERO == 0
    assert OMEGA != 3
    assert Ordinal.of(3) != -3
    assert {Ordinal.of(3), 3} == {3}
    assert parse_ordinal("w + 1") == succ(OMEGA)


def test_natural_multiple_scales_the_leading_term() -> None:
    assert nat_mul(parse_ordinal("w + 3"), 2) == parse_ordinal("w*2 + 3")
    assert nat_mul(OMEGA, 0) == ZERO
    assert OMEGA * 4 == parse_ordinal("w*4")


def test_finite_parts() -> None:
    assert int(Ordinal.of(7)) == 7
    assert parse_ordinal("w + 2").finite_part == 2
    assert not OMEGA.is_finite
    with pytest.raises(OrdinalError):
        int(OMEGA)


def test_invalid_terms_are_rejected() -> None:
    with pytest.raises(OrdinalError):
        Ordinal(((0, 1), (1, 1)))
    with pytest.raises(OrdinalError):
        parse_ordinal("w^x")
    with pytest.raises(OrdinalOverflowError) as info:
        omega_pow(65)
    assert info.value.exponent == 65


def test_formula_evaluation_and_supremum() -> None:
    formula = parse_formula("w*n + 2")
    assert eval_formula(formula, 3) == parse_ordinal("w*3 + 2")
    assert sup_family(formula) == omega_pow(2)
    assert sup_family(FamilyValueFormula.linear(0, 1, 1)) == OMEGA
    assert sup_family(parse_formula("w^2*2 + w*n")) == parse_ordinal("w^2*3")
    assert parse_formula("(2n+5)").evaluate(3) == Ordinal.of(11)
    assert sup_family(FamilyValueFormula.constant(parse_ordinal("w + 1"))) == parse_ordinal("w + 1")


def test_formula_text_round_trip() -> None:
    formula = parse_formula("w^2*(n+1) + w*3 + 2n")
    assert parse_formula(formula.format()) == formula
    assert str(FamilyValueFormula.linear(1).successor()) == "w*n + 1"


def test_fit_recovers_affine_coefficients() -> None:
    values = {1: parse_ordinal("w + 3"), 2: parse_ordinal("w*2 + 5"), 3: parse_ordinal("w*3 + 7")}
    formula = FamilyValueFormula.fit(values)
    assert formula == parse_formula("w*n + (2n+1)")
    with pytest.raises(MalformedFormulaError):
        FamilyValueFormula.fit({1: Ordinal.of(1), 2: Ordinal.of(4), 3: Ordinal.of(5)})


def test_formula_parameter_starts_at_one() -> None:
    with pytest.raises(MalformedFormulaError):
        eval_formula(FamilyValueFormula.linear(), 0)
