import pytest

from src.modules.algebra.domain.builtin import stone3
from src.modules.formulas.application.service.model_checker import satisfying_points
from src.modules.formulas.application.service.parser import FormulaParser
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.errors import TargetMismatch, UnassignedVariable

STAR_STAR = "(= z1 (star (star x1)))"


def test_evaluate_with_sequence_and_mapping(formula_service, stone):
    # given
    formula = formula_service.parse("(exists (u1) (= x1 (star u1)))", stone.signature)

    # when
    results = [formula_service.evaluate(stone, formula, [a]) for a in stone.universe]

    # then
    assert results == [True, False, True]
    assert formula_service.evaluate(stone, formula, {"x1": 1}) is False


def test_forall_ranges_over_the_universe(formula_service, stone):
    # given
    formula = formula_service.parse("(forall (u1) (= (meet x1 u1) x1))", stone.signature)

    # then
    assert formula_service.evaluate(stone, formula, [0])
    assert not formula_service.evaluate(stone, formula, [1])


def test_defines_graph_of_double_star(formula_service, stone):
    # given
    host = stone.with_operation("f", 1, (0, 2, 2))
    formula = formula_service.parse(STAR_STAR, host.signature)

    # then
    assert formula_service.defines([host], formula, Target.functions(["f"], 1))


def test_first_disagreement_reports_the_point(formula_service, stone):
    # given
    host = stone.with_operation("f", 1, (0, 1, 2))
    formula = formula_service.parse(STAR_STAR, host.signature)

    # when
    miss = formula_service.first_disagreement([host], formula, Target.functions(["f"], 1))

    # then
    assert miss is not None
    structure, point = miss
    assert structure.name == "stone3"
    assert point in {(1, 1), (1, 2)}


def test_free_variables_must_be_target_variables(formula_service, stone):
    # given
    host = stone.with_operation("f", 1, (0, 2, 2))
    formula = formula_service.parse("(= z1 x2)", host.signature)

    # then
    with pytest.raises(TargetMismatch):
        formula_service.defines([host], formula, Target.functions(["f"], 1))


def test_unassigned_variable(formula_service, stone):
    # given
    formula = formula_service.parse("(= x1 x2)", stone.signature)

    # then
    with pytest.raises(UnassignedVariable):
        formula_service.evaluate(stone, formula, [0])


def test_satisfying_points_of_order_relation():
    # given
    stone = stone3()
    host = stone.with_relation("le", 2, [(a, b) for a in stone.universe for b in stone.universe if a <= b])
    formula = FormulaParser(host.signature).parse("(= (meet x1 x2) x1)")

    # when
    points = satisfying_points(host, formula, Target.relation("le", 2))

    # then
    assert points == host.relations["le"]
