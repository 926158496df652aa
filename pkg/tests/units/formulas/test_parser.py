import pytest
from hypothesis import given

from src.modules.algebra.domain.builtin import stone3
from src.modules.algebra.domain.entity.term import App, Var, x, z
from src.modules.formulas.application.service.parser import FormulaParser
from src.modules.formulas.application.service.printer import print_formula
from src.modules.formulas.domain.entity.formula import And, Eq, Exists, Or, free_variables
from src.modules.formulas.domain.errors import FormulaSyntaxError
from tests.units.formulas.strategies import open_formulas

SIGNATURE = stone3().signature


def test_parse_equation_with_nested_terms():
    # when
    formula = FormulaParser(SIGNATURE).parse("(= z1 (star (star x1)))")

    # then
    assert formula == Eq(z(1), App("star", (App("star", (x(1),)),)))


def test_constants_are_bare_symbols():
    # when
    formula = FormulaParser(SIGNATURE).parse("(or (= x1 zero) (= x1 one))")

    # then
    assert formula == Or((Eq(x(1), App("zero")), Eq(x(1), App("one"))))


@given(open_formulas())
def test_print_then_parse_is_identity(formula):
    # when
    text = print_formula(formula)

    # then
    assert FormulaParser(SIGNATURE).parse(text) == formula
    assert print_formula(FormulaParser(SIGNATURE).parse(text)) == text


def test_comments_and_whitespace_are_ignored():
    # given
    text = "; graph of the double star\n(=   z1\n   (star (star x1)))  "

    # then
    assert print_formula(FormulaParser(SIGNATURE).parse(text)) == "(= z1 (star (star x1)))"


def test_bound_variable_clashing_with_free_one_is_renamed():
    # when
    formula = FormulaParser(SIGNATURE).parse("(and (= x1 x2) (exists (x1) (= x1 zero)))")

    # then
    assert isinstance(formula, And)
    bound = formula.parts[1]
    assert isinstance(bound, Exists)
    assert bound.variables == (Var("u1"),)
    assert free_variables(formula) == (x(1), x(2))


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("(= x1 (star x1 x2))", 1, 7),
        ("(and\n  (= x1 (nope x1)))", 2, 9),
        ("(= x1 x2", 1, 1),
        ("(= x1 x2))", 1, 10),
        ("(frobnicate x1)", 1, 1),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    # when
    with pytest.raises(FormulaSyntaxError) as error:
        FormulaParser(SIGNATURE).parse(text)

    # then
    assert error.value.line == line
    assert error.value.column == column
    assert error.value.exit_code == 2


def test_relation_used_as_operation_is_rejected():
    # given
    signature = stone3().with_relation("le", 2, []).signature

    # then
    with pytest.raises(FormulaSyntaxError):
        FormulaParser(signature).parse("(= x1 (le x1 x2))")
