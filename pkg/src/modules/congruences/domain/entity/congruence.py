from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Sequence

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.congruences.domain.errors import SizeMismatch


class DisjointSets:
    """Union-find over ``0..size-1`` keeping the least element as the root."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> tuple[int, ...]:
        return tuple(self.find(a) for a in range(len(self.parent)))


@dataclass(frozen=True)
class Congruence(ValueObject):
    """
    An equivalence relation on the universe of ``host``.

    ``labels[a]`` is the least element of the block of ``a``, which makes
    the representation canonical. Compatibility with the operations is not
    assumed by the constructor; ``is_compatible`` sweeps the tables.
    """

    host: FiniteStructure
    labels: tuple[int, ...]

    @classmethod
    def identity(cls, host: FiniteStructure) -> "Congruence":
        return cls(host, tuple(host.universe))

    @classmethod
    def total(cls, host: FiniteStructure) -> "Congruence":
        return cls(host, (0,) * host.size)

    @classmethod
    def from_blocks(cls, host: FiniteStructure, blocks: Iterable[Iterable[int]]) -> "Congruence":
        sets = DisjointSets(host.size)
        for block in blocks:
            block = list(block)
            for element in block[1:]:
                sets.union(block[0], element)
        return cls(host, sets.labels())

    def __contains__(self, pair: tuple[int, int]) -> bool:
        a, b = pair
        return self.labels[a] == self.labels[b]

    def __le__(self, other: "Congruence") -> bool:
        return all(other.labels[a] == other.labels[self.labels[a]] for a in range(len(self.labels)))

    def __repr__(self) -> str:
        return f"Congruence({self.host.name}, {self.render()})"

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        grouped: dict[int, list[int]] = {}
        for a, label in enumerate(self.labels):
            grouped.setdefault(label, []).append(a)
        return tuple(tuple(block) for _, block in sorted(grouped.items()))

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for block in self.blocks for a in block for b in block)

    @property
    def is_identity(self) -> bool:
        return len(self.blocks) == len(self.labels)

    @property
    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def _check_host(self, other: "Congruence"):
        if len(other.labels) != len(self.labels):
            raise SizeMismatch(f"Congruences on {self.host.name} and {other.host.name} have different universes")

    def meet(self, other: "Congruence") -> "Congruence":
        self._check_host(other)
        first: dict[tuple[int, int], int] = {}
        labels = tuple(first.setdefault((a, b), i) for i, (a, b) in enumerate(zip(self.labels, other.labels)))
        return Congruence(self.host, labels)

    def join(self, other: "Congruence") -> "Congruence":
        self._check_host(other)
        sets = DisjointSets(len(self.labels))
        for a in range(len(self.labels)):
            sets.union(a, self.labels[a])
            sets.union(a, other.labels[a])
        return Congruence(self.host, sets.labels())

    def restrict(self, elements: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Blocks of the restriction to ``elements``, as positions in that sequence."""
        grouped: dict[int, list[int]] = {}
        for i, a in enumerate(elements):
            grouped.setdefault(self.labels[a], []).append(i)
        return tuple(sorted(tuple(block) for block in grouped.values()))

    def is_compatible(self) -> bool:
        host = self.host
        for op in host.signature.functions:
            for args in cartesian(host.universe, repeat=op.arity):
                moved = [self.labels[a] for a in args]
                if self.labels[host.apply(op.name, args)] != self.labels[host.apply(op.name, moved)]:
                    return False
        return True

    def quotient(self, name: str | None = None) -> FiniteStructure:
        """``host/θ`` with the blocks renumbered in order of their least element."""
        host = self.host
        representatives = [block[0] for block in self.blocks]
        position = {label: i for i, label in enumerate(representatives)}
        k = len(representatives)
        tables = {
            op.name: tuple(
                position[self.labels[host.apply(op.name, [representatives[a] for a in args])]]
                for args in cartesian(range(k), repeat=op.arity)
            )
            for op in host.signature.operations
        }
        relations = {
            rel.name: frozenset(
                tuple(position[self.labels[a]] for a in row) for row in host.relations.get(rel.name, ())
            )
            for rel in host.signature.relations
        }
        elements = tuple("{" + ",".join(host.display(a) for a in block) + "}" for block in self.blocks)
        return FiniteStructure(
            name=name or f"{host.name}/theta",
            signature=host.signature,
            size=k,
            tables=tables,
            relations=relations,
            elements=elements,
        )

    def render(self) -> str:
        return "{" + ", ".join("{" + ",".join(self.host.display(a) for a in block) + "}" for block in self.blocks) + "}"
