from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Sequence

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.signature import OpSymbol, RelSymbol, Signature
from src.modules.algebra.domain.errors import InvalidStructure, NotASublanguage, UnknownSymbol


def table_index(args: Sequence[int], size: int) -> int:
    index = 0
    for arg in args:
        index = index * size + arg
    return index


@dataclass(frozen=True, eq=False)
class FiniteStructure(ValueObject):
    """
    A finite structure over ``signature`` with universe ``0..size-1``.

    Operation tables are flat and row-major: the entry for ``g(a1, ..., ak)``
    sits at ``a1*n^(k-1) + ... + ak``. Relations are sets of tuples.
    """

    name: str
    signature: Signature
    size: int
    tables: dict[str, tuple[int, ...]]
    relations: dict[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)
    elements: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise InvalidStructure(f"{self.name}: universe must be non-empty")
        if self.elements is not None and len(self.elements) != self.size:
            raise InvalidStructure(f"{self.name}: {len(self.elements)} element names for universe of size {self.size}")
        for op in self.signature.operations:
            table = self.tables.get(op.name)
            if table is None:
                raise InvalidStructure(f"{self.name}: missing table for {op.name!r}")
            if len(table) != self.size**op.arity:
                raise InvalidStructure(
                    f"{self.name}: table of {op.name!r} has {len(table)} entries, expected {self.size ** op.arity}"
                )
            if any(not 0 <= value < self.size for value in table):
                raise InvalidStructure(f"{self.name}: table of {op.name!r} leaves the universe")
        for rel in self.signature.relations:
            for row in self.relations.get(rel.name, frozenset()):
                if len(row) != rel.arity or any(not 0 <= value < self.size for value in row):
                    raise InvalidStructure(f"{self.name}: bad tuple {row} in relation {rel.name!r}")
        extra = set(self.tables) - {op.name for op in self.signature.operations}
        extra |= set(self.relations) - {rel.name for rel in self.signature.relations}
        if extra:
            raise InvalidStructure(f"{self.name}: symbols {sorted(extra)} are not in the signature")

    def __repr__(self) -> str:
        return f"FiniteStructure({self.name}, size={self.size})"

    @property
    def universe(self) -> range:
        return range(self.size)

    @property
    def fingerprint(self) -> tuple:
        return (
            self.signature,
            self.size,
            tuple((op.name, self.tables[op.name]) for op in self.signature.operations),
            tuple((rel.name, tuple(sorted(self.relations.get(rel.name, ())))) for rel in self.signature.relations),
        )

    def apply(self, name: str, args: Sequence[int]) -> int:
        try:
            table = self.tables[name]
        except KeyError:
            raise UnknownSymbol(f"{self.name}: unknown operation {name!r}")
        return table[table_index(args, self.size)]

    def constant(self, name: str) -> int:
        return self.apply(name, ())

    def holds(self, name: str, args: Sequence[int]) -> bool:
        if name not in self.relations and not self.signature.is_relation(name):
            raise UnknownSymbol(f"{self.name}: unknown relation {name!r}")
        return tuple(args) in self.relations.get(name, frozenset())

    def display(self, element: int) -> str:
        return self.elements[element] if self.elements else str(element)

    def element_index(self, label: str) -> int:
        if self.elements and label in self.elements:
            return self.elements.index(label)
        try:
            value = int(label)
        except ValueError:
            raise InvalidStructure(f"{self.name}: unknown element {label!r}")
        if not 0 <= value < self.size:
            raise InvalidStructure(f"{self.name}: element {value} outside universe")
        return value

    def reduct(self, signature: Signature) -> "FiniteStructure":
        if not signature.is_sublanguage_of(self.signature):
            raise NotASublanguage(f"{signature} is not a sublanguage of {self.signature}")
        return FiniteStructure(
            name=self.name,
            signature=signature,
            size=self.size,
            tables={op.name: self.tables[op.name] for op in signature.operations},
            relations={rel.name: self.relations.get(rel.name, frozenset()) for rel in signature.relations},
            elements=self.elements,
        )

    def with_operation(
        self, name: str, arity: int, table: Sequence[int], rename: str | None = None
    ) -> "FiniteStructure":
        return FiniteStructure(
            name=rename or self.name,
            signature=Signature(
                operations=(*self.signature.operations, OpSymbol(name, arity)),
                relations=self.signature.relations,
            ),
            size=self.size,
            tables={**self.tables, name: tuple(table)},
            relations=dict(self.relations),
            elements=self.elements,
        )

    def with_relation(
        self, name: str, arity: int, tuples: Iterable[Sequence[int]], rename: str | None = None
    ) -> "FiniteStructure":
        return FiniteStructure(
            name=rename or self.name,
            signature=Signature(
                operations=self.signature.operations,
                relations=(*self.signature.relations, RelSymbol(name, arity)),
            ),
            size=self.size,
            tables=dict(self.tables),
            relations={**self.relations, name: frozenset(tuple(row) for row in tuples)},
            elements=self.elements,
        )

    def renamed(self, name: str) -> "FiniteStructure":
        return FiniteStructure(
            name=name,
            signature=self.signature,
            size=self.size,
            tables=self.tables,
            relations=self.relations,
            elements=self.elements,
        )


def table_from_function(size: int, arity: int, function) -> tuple[int, ...]:
    return tuple(function(*args) for args in cartesian(range(size), repeat=arity))


def trivial_structure(signature: Signature, name: str = "1") -> FiniteStructure:
    """The one-element structure over ``signature`` with every relation holding."""
    return FiniteStructure(
        name=name,
        signature=signature,
        size=1,
        tables={op.name: (0,) for op in signature.operations},
        relations={rel.name: frozenset({(0,) * rel.arity}) for rel in signature.relations},
        elements=("*",),
    )
