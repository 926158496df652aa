from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Iterator, Sequence

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Var, x, z
from src.modules.formulas.domain.enums import TargetKind
from src.modules.formulas.domain.errors import TargetMismatch


@dataclass(frozen=True)
class Target(ValueObject):
    """
    What a formula has to define: one relation symbol of arity n, or function
    symbols f1..fm sharing arity n, read through their graph of arity n+m.
    """

    kind: TargetKind
    symbols: tuple[str, ...]
    arity: int

    @classmethod
    def relation(cls, name: str, arity: int) -> "Target":
        return cls(TargetKind.RELATION, (name,), arity)

    @classmethod
    def functions(cls, names: Sequence[str], arity: int) -> "Target":
        return cls(TargetKind.FUNCTION, tuple(names), arity)

    @classmethod
    def resolve(cls, signature: Signature, names: Iterable[str]) -> "Target":
        names = tuple(names)
        if not names:
            raise TargetMismatch("Empty target")
        if len(names) == 1 and signature.is_relation(names[0]):
            return cls.relation(names[0], signature.arity(names[0]))
        arities = set()
        for name in names:
            if not signature.is_operation(name):
                raise TargetMismatch(f"Target symbol {name!r} is not interpreted as a relation or operation")
            arities.add(signature.arity(name))
        if len(arities) != 1:
            raise TargetMismatch(f"Target functions {names} do not share one arity")
        return cls.functions(names, arities.pop())

    @property
    def width(self) -> int:
        return self.arity + (len(self.symbols) if self.kind == TargetKind.FUNCTION else 0)

    @cached_property
    def variables(self) -> tuple[Var, ...]:
        if self.kind == TargetKind.RELATION:
            return tuple(x(i + 1) for i in range(self.arity))
        return tuple(x(i + 1) for i in range(self.arity)) + tuple(z(j + 1) for j in range(len(self.symbols)))

    def check(self, structure: FiniteStructure):
        for name in self.symbols:
            if name not in structure.signature:
                raise TargetMismatch(f"{structure.name} does not interpret {name!r}")
            if structure.signature.arity(name) != self.arity:
                raise TargetMismatch(f"{structure.name} interprets {name!r} with another arity")

    def holds(self, structure, point: Sequence) -> bool:
        if self.kind == TargetKind.RELATION:
            return structure.holds(self.symbols[0], point)
        args = list(point[: self.arity])
        return all(
            structure.apply(name, args) == point[self.arity + j] for j, name in enumerate(self.symbols)
        )

    def points(self, structure: FiniteStructure) -> Iterator[tuple[int, ...]]:
        return cartesian(structure.universe, repeat=self.width)

    def graph(self, structure: FiniteStructure) -> frozenset[tuple[int, ...]]:
        if self.kind == TargetKind.RELATION:
            return structure.relations.get(self.symbols[0], frozenset())
        return frozenset(
            (*args, *(structure.apply(name, args) for name in self.symbols))
            for args in cartesian(structure.universe, repeat=self.arity)
        )

    def environment(self, point: Sequence[int]) -> dict[str, int]:
        return {variable.name: value for variable, value in zip(self.variables, point)}

    def __str__(self) -> str:
        return ",".join(self.symbols)
