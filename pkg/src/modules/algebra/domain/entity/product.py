from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from math import prod
from typing import Sequence

from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure, table_index
from src.modules.algebra.domain.errors import SignatureMismatch, InvalidStructure


def encode(values: Sequence[int], sizes: Sequence[int]) -> int:
    index = 0
    for value, size in zip(values, sizes):
        index = index * size + value
    return index


def decode(index: int, sizes: Sequence[int]) -> tuple[int, ...]:
    values = []
    for size in reversed(sizes):
        index, value = divmod(index, size)
        values.append(value)
    return tuple(reversed(values))


def flatten_index(index: int, grouping: Sequence[Sequence[int]]) -> int:
    """
    Re-index an element of a product of products into the flat product.

    ``grouping`` lists the factor sizes of every inner product, e.g.
    ``[[3, 3], [2]]`` for ``(A x B) x C``.
    """
    outer = [prod(sizes) for sizes in grouping]
    flat_values = []
    for inner_index, sizes in zip(decode(index, outer), grouping):
        flat_values.extend(decode(inner_index, sizes))
    return encode(flat_values, [size for sizes in grouping for size in sizes])


def nest_index(index: int, grouping: Sequence[Sequence[int]]) -> int:
    flat_sizes = [size for sizes in grouping for size in sizes]
    values = decode(index, flat_sizes)
    inner, offset = [], 0
    for sizes in grouping:
        inner.append(encode(values[offset : offset + len(sizes)], sizes))
        offset += len(sizes)
    return encode(inner, [prod(sizes) for sizes in grouping])


@dataclass(frozen=True, eq=False)
class ProductFrame:
    """
    Lazy direct product: elements are tuples, one coordinate per factor.

    Closures over big products run on a frame, only the small ones are
    materialized into a FiniteStructure.
    """

    factors: tuple[FiniteStructure, ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidStructure("A product needs at least one factor")
        first = self.factors[0].signature
        for factor in self.factors[1:]:
            mismatch = first.first_mismatch(factor.signature)
            if mismatch is not None:
                raise SignatureMismatch(f"Factor {factor.name} disagrees on symbol {mismatch!r}")

    @property
    def signature(self) -> Signature:
        return self.factors[0].signature

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(factor.size for factor in self.factors)

    @property
    def size(self) -> int:
        return prod(self.sizes)

    @property
    def name(self) -> str:
        return " x ".join(factor.name for factor in self.factors)

    def apply(self, name: str, args: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
        return tuple(
            factor.apply(name, [arg[i] for arg in args]) for i, factor in enumerate(self.factors)
        )

    def constant(self, name: str) -> tuple[int, ...]:
        return tuple(factor.constant(name) for factor in self.factors)

    def holds(self, name: str, args: Sequence[tuple[int, ...]]) -> bool:
        return all(factor.holds(name, [arg[i] for arg in args]) for i, factor in enumerate(self.factors))

    def encode(self, values: Sequence[int]) -> int:
        return encode(values, self.sizes)

    def decode(self, index: int) -> tuple[int, ...]:
        return decode(index, self.sizes)

    def display(self, element: tuple[int, ...]) -> str:
        return "(" + ",".join(factor.display(v) for factor, v in zip(self.factors, element)) + ")"

    def materialize(self, name: str | None = None) -> FiniteStructure:
        size = self.size
        decoded = [self.decode(i) for i in range(size)]
        tables = {}
        for op in self.signature.operations:
            tables[op.name] = tuple(
                self.encode(self.apply(op.name, [decoded[a] for a in args]))
                for args in cartesian(range(size), repeat=op.arity)
            )
        relations = {}
        for rel in self.signature.relations:
            rows = set()
            for combo in cartesian(*(factor.relations.get(rel.name, ()) for factor in self.factors)):
                rows.add(tuple(self.encode(column) for column in zip(*combo)))
            relations[rel.name] = frozenset(rows)
        elements = None
        if any(factor.elements for factor in self.factors):
            elements = tuple(self.display(decoded[i]) for i in range(size))
        return FiniteStructure(
            name=name or self.name,
            signature=self.signature,
            size=size,
            tables=tables,
            relations=relations,
            elements=elements,
        )


def product(factors: Sequence[FiniteStructure], name: str | None = None) -> FiniteStructure:
    return ProductFrame(tuple(factors)).materialize(name)


def power(factor: FiniteStructure, exponent: int) -> FiniteStructure:
    return product([factor] * exponent, name=f"{factor.name}^{exponent}")


__all__ = ["ProductFrame", "product", "power", "encode", "decode", "flatten_index", "nest_index", "table_index"]
