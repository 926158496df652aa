from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.structure import FiniteStructure


@dataclass(frozen=True, eq=False)
class Subuniverse(ValueObject):
    host: FiniteStructure
    mask: int
    generators: tuple[int, ...] | None = None

    @classmethod
    def create(cls, host: FiniteStructure, elements, generators=None) -> "Subuniverse":
        mask = 0
        for element in elements:
            mask |= 1 << element
        return cls(host=host, mask=mask, generators=tuple(generators) if generators is not None else None)

    @classmethod
    def full(cls, host: FiniteStructure) -> "Subuniverse":
        return cls(host=host, mask=(1 << host.size) - 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subuniverse) and self.host is other.host and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.host), self.mask))

    def __contains__(self, element: int) -> bool:
        return bool(self.mask >> element & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"Subuniverse({self.host.name}, {self.labels})"

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(e for e in self.host.universe if self.mask >> e & 1)

    @property
    def labels(self) -> list[str]:
        return [self.host.display(e) for e in self.elements]

    @property
    def sort_key(self) -> tuple:
        return len(self), self.elements

    @property
    def is_full(self) -> bool:
        return len(self) == self.host.size

    def is_closed(self) -> bool:
        for op in self.host.signature.operations:
            for args in cartesian(self.elements, repeat=op.arity):
                if self.host.apply(op.name, args) not in self:
                    return False
        return True

    def induced(self, name: str | None = None) -> FiniteStructure:
        """The substructure on these elements, renumbered 0..k-1 in increasing order."""
        position = {e: i for i, e in enumerate(self.elements)}
        k = len(self.elements)
        tables = {
            op.name: tuple(
                position[self.host.apply(op.name, [self.elements[a] for a in args])]
                for args in cartesian(range(k), repeat=op.arity)
            )
            for op in self.host.signature.operations
        }
        relations = {
            rel.name: frozenset(
                tuple(position[v] for v in row)
                for row in self.host.relations.get(rel.name, ())
                if all(v in position for v in row)
            )
            for rel in self.host.signature.relations
        }
        return FiniteStructure(
            name=name or f"{self.host.name}|{{{','.join(self.labels)}}}",
            signature=self.host.signature,
            size=k,
            tables=tables,
            relations=relations,
            elements=tuple(self.labels),
        )
