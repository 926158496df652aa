import pytest
from hypothesis import given, strategies as st

from src.core.domain.errors import ResourceExceeded
from src.modules.algebra.domain.builtin import stone3
from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.term import evaluate_term
from src.modules.subpowers.domain.entity.closure import PointedClosure
from src.modules.subpowers.domain.enums import MapKind

STONE = stone3()


def test_generators_come_first_then_constants():
    # when
    closure = PointedClosure(STONE, (1,))

    # then
    assert closure.elements[0] == 1
    assert set(closure.elements) == {0, 1, 2}
    assert closure.constant_indices == {"zero": 1, "one": 2}


@given(st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_witness_terms_evaluate_to_their_elements(generators):
    # when
    closure = PointedClosure(STONE, generators)

    # then
    for i, element in enumerate(closure.elements):
        assert evaluate_term(STONE, closure.term(i), generators) == element


@given(st.lists(st.integers(0, 2), min_size=1, max_size=2))
def test_closure_is_closed_and_idempotent(generators):
    # when
    closure = PointedClosure(STONE, generators)
    again = PointedClosure(STONE, closure.elements)

    # then
    assert again.element_set == closure.element_set
    for a in closure.elements:
        assert STONE.apply("star", [a]) in closure
        for b in closure.elements:
            assert STONE.apply("join", [a, b]) in closure
            assert STONE.apply("meet", [a, b]) in closure


def test_closure_in_a_product_frame():
    # given
    frame = ProductFrame((STONE, STONE))

    # when
    closure = PointedClosure(frame, [(2, 1), (1, 2)])

    # then
    assert (1, 1) in closure
    assert (0, 0) in closure and (2, 2) in closure
    assert (1, 0) not in closure


def test_closure_limit_raises_resource_exceeded():
    with pytest.raises(ResourceExceeded) as error:
        PointedClosure(ProductFrame((STONE, STONE)), [(2, 1), (1, 2)], limit=2)

    # then
    assert error.value.report["bound"] == "MAX_CLOSURE_SIZE"
    assert error.value.exit_code == 3


def test_double_star_is_an_endomorphism_but_not_an_embedding():
    # given
    closure = PointedClosure(STONE, (1,))

    # then
    assert closure.maps_to(STONE, (2,), MapKind.HOM)
    violation = closure.find_violation(STONE, (2,), MapKind.EMBEDDING)
    assert violation is not None
    assert not violation.positive


def test_no_homomorphism_sends_half_to_zero():
    # given
    closure = PointedClosure(STONE, (1,))

    # when
    violation = closure.find_violation(STONE, (0,), MapKind.HOM)

    # then
    assert violation is not None
    assert violation.positive
