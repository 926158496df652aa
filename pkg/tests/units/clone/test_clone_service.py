from itertools import product as cartesian

import pytest

from src.config.config import AppConfig
from src.core.domain.errors import ResourceExceeded
from src.modules.algebra.domain.entity.term import Var, evaluate_term
from src.modules.clone.application.service.clone import CloneService, discriminator_value, majority_value
from src.modules.clone.domain.entity.term_table import ClosureFailure
from tests.conftest import unary


def test_unary_term_operations_of_bool2(clone_service, boolean):
    # when
    table = clone_service.term_operations([boolean], 1)

    # then
    assert table.fixpoint
    assert sorted(table.rows) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_binary_clone_of_bool2_is_everything(clone_service, boolean):
    # when
    table = clone_service.term_operations([boolean], 2)

    # then
    assert table.fixpoint
    assert len(table) == 16
    for i, row in enumerate(table.rows):
        term = table.witness(i)
        assert tuple(evaluate_term(boolean, term, point) for _, point in table.points) == row


def test_term_operations_use_the_given_variable_names(clone_service, stone):
    # when
    table = clone_service.term_operations([stone], 2, labels=[Var("x1"), Var("z1")])

    # then
    assert table.witness(1) == Var("z1")


def test_majority_term_of_bool2(clone_service, boolean):
    # when
    term = clone_service.find_majority_term([boolean])

    # then
    assert term is not None
    for point in cartesian(boolean.universe, repeat=3):
        if majority_value(point) is not None:
            assert evaluate_term(boolean, term, point) == majority_value(point)


def test_no_majority_term_without_lattice_operations(clone_service, boolean):
    # given
    negation_only = boolean.reduct(boolean.signature.restrict(["neg"]))

    # then
    assert clone_service.find_majority_term([negation_only]) is None


def test_discriminator_term_of_bool2(clone_service, boolean):
    # when
    term = clone_service.find_discriminator_term([boolean])

    # then
    assert term is not None
    for point in cartesian(boolean.universe, repeat=3):
        assert evaluate_term(boolean, term, point) == discriminator_value(point)


def test_quaternary_discriminator(clone_service, boolean):
    # given
    ternary = clone_service.find_discriminator_term([boolean])

    # when
    quaternary = clone_service.quaternary_discriminator(ternary)

    # then
    for a, b, c, d in cartesian(boolean.universe, repeat=4):
        assert evaluate_term(boolean, quaternary, [a, b, c, d]) == (c if a == b else d)


def test_stone_chain_has_no_discriminator(clone_service, stone):
    assert clone_service.find_discriminator_term([stone]) is None


def test_double_star_is_a_term_operation(clone_service, stone):
    # given
    host = unary(stone, "f", (0, 2, 2))

    # when
    term = clone_service.find_representing_term([host], "f")

    # then
    assert not isinstance(term, ClosureFailure)
    assert [evaluate_term(stone, term, [a]) for a in stone.universe] == [0, 2, 2]


def test_negation_needs_negation(clone_service, boolean):
    # given
    language = boolean.signature.without(["neg"])

    # when
    failure = clone_service.find_representing_term([boolean], "neg", language)

    # then
    assert isinstance(failure, ClosureFailure)
    assert failure.generators == ((0, 1),)
    assert failure.image == (1, 0)
    assert (1, 0) not in failure.elements


def test_heyting_unary_term_functions_commute_with_double_star(clone_service, heyting):
    # given
    double_star = [heyting.apply("star", [heyting.apply("star", [a])]) for a in heyting.universe]

    for values in cartesian(heyting.universe, repeat=3):
        host = unary(heyting, "f", values)
        commutes = all(values[double_star[a]] == double_star[values[a]] for a in heyting.universe)

        # when
        found = clone_service.find_representing_term([host], "f")

        # then
        assert isinstance(found, ClosureFailure) != commutes, values


def test_depth_budget_hit_is_reported(boolean):
    # given
    service = CloneService(AppConfig(DEPTH_BUDGET=1))

    # then
    with pytest.raises(ResourceExceeded) as error:
        service.find_majority_term([boolean])
    assert error.value.report["bound"] == "DEPTH_BUDGET"
