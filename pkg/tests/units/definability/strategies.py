from hypothesis import strategies as st

from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure


@st.composite
def small_structures(draw):
    """At most three elements, at most two unary or binary operations and a relation ``R`` of width 1 or 2."""
    size = draw(st.integers(min_value=1, max_value=3))
    arities = draw(st.lists(st.integers(min_value=1, max_value=2), max_size=2))
    width = draw(st.integers(min_value=1, max_value=2))
    element = st.integers(min_value=0, max_value=size - 1)
    operations = {name: arity for name, arity in zip(("g", "h"), arities)}
    tables = {
        name: tuple(draw(st.lists(element, min_size=size**arity, max_size=size**arity)))
        for name, arity in operations.items()
    }
    rows = draw(st.sets(st.tuples(*[element] * width)))
    return FiniteStructure(
        name="sample",
        signature=Signature.create(operations, {"R": width}),
        size=size,
        tables=tables,
        relations={"R": frozenset(rows)},
    )


def binary_tables(size: int = 3):
    return st.tuples(*[st.integers(min_value=0, max_value=size - 1)] * size**2)
