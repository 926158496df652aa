import pytest
from hypothesis import given, strategies as st

from src.modules.algebra.domain.builtin import bool2, stone3
from src.modules.algebra.domain.entity.product import ProductFrame, decode, encode, product
from src.modules.algebra.domain.entity.term import App, Var, evaluate_term, x
from src.modules.algebra.domain.errors import SignatureMismatch

STONE = stone3()
SYMBOLS = [(op.name, op.arity) for op in STONE.signature.operations]


def terms(depth: int = 3):
    leaves = st.sampled_from([x(1), x(2)]) | st.sampled_from([App("zero"), App("one")])

    def extend(children):
        return st.one_of(
            st.builds(lambda a: App("star", (a,)), children),
            st.builds(lambda a, b: App("join", (a, b)), children, children),
            st.builds(lambda a, b: App("meet", (a, b)), children, children),
        )

    return st.recursive(leaves, extend, max_leaves=2**depth)


def test_product_has_coordinatewise_tables():
    # given
    square = product([STONE, STONE])

    # when
    left = square.elements.index("(1/2,0)")
    right = square.elements.index("(0,1)")
    joined = square.apply("join", [left, right])

    # then
    assert square.size == 9
    assert square.display(joined) == "(1/2,1)"


def test_product_of_mismatched_signatures_is_rejected():
    with pytest.raises(SignatureMismatch):
        ProductFrame((STONE, bool2()))


@given(st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=4))
def test_encode_decode_inverse(values):
    # given
    sizes = [3] * len(values)

    # then
    assert decode(encode(values, sizes), sizes) == tuple(values)


@given(terms(), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_terms_evaluate_coordinatewise_in_products(term, a1, a2, b1, b2):
    # given
    frame = ProductFrame((STONE, STONE))

    # when
    value = evaluate_term(frame, term, [(a1, b1), (a2, b2)])

    # then
    assert value == (evaluate_term(STONE, term, [a1, a2]), evaluate_term(STONE, term, [b1, b2]))


def test_materialized_product_agrees_with_frame():
    # given
    lattice = STONE.signature.restrict(["join", "meet"])
    reduced = ProductFrame((STONE.reduct(lattice), bool2().reduct(lattice)))

    # when
    materialized = reduced.materialize()
    term = App("meet", (Var("x1"), App("join", (Var("x1"), Var("x2")))))

    # then
    for i in range(materialized.size):
        for j in range(materialized.size):
            expected = evaluate_term(reduced, term, [reduced.decode(i), reduced.decode(j)])
            assert reduced.decode(evaluate_term(materialized, term, [i, j])) == expected
