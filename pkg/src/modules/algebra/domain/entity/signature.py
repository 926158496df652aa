import re
from dataclasses import dataclass, field
from typing import Iterable

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.errors import InvalidStructure, UnknownSymbol

VARIABLE_PATTERN = re.compile(r"^[xyzuw][0-9]+$")


def is_variable_name(name: str) -> bool:
    return VARIABLE_PATTERN.match(name) is not None


@dataclass(frozen=True)
class OpSymbol(ValueObject):
    name: str
    arity: int


@dataclass(frozen=True)
class RelSymbol(ValueObject):
    name: str
    arity: int


@dataclass(frozen=True)
class Signature(ValueObject):
    """
    Operation and relation symbols in declaration order.

    Declaration order is significant: every closure, enumeration and witness
    tie-break walks the operations in this order.
    """

    operations: tuple[OpSymbol, ...] = ()
    relations: tuple[RelSymbol, ...] = ()
    _arities: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        arities = {}
        for symbol in (*self.operations, *self.relations):
            if symbol.name in arities:
                raise InvalidStructure(f"Symbol {symbol.name!r} declared twice")
            if is_variable_name(symbol.name) or not symbol.name or "(" in symbol.name or " " in symbol.name:
                raise InvalidStructure(f"Symbol name {symbol.name!r} is not allowed")
            if symbol.arity < 0:
                raise InvalidStructure(f"Symbol {symbol.name!r} has negative arity")
            arities[symbol.name] = symbol.arity
        for rel in self.relations:
            if rel.arity == 0:
                raise InvalidStructure(f"Relation {rel.name!r} must have positive arity")
        object.__setattr__(self, "_arities", arities)

    @classmethod
    def create(cls, operations: dict[str, int] | None = None, relations: dict[str, int] | None = None) -> "Signature":
        return cls(
            operations=tuple(OpSymbol(name, arity) for name, arity in (operations or {}).items()),
            relations=tuple(RelSymbol(name, arity) for name, arity in (relations or {}).items()),
        )

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in (*self.operations, *self.relations))

    @property
    def constants(self) -> tuple[OpSymbol, ...]:
        return tuple(op for op in self.operations if op.arity == 0)

    @property
    def functions(self) -> tuple[OpSymbol, ...]:
        return tuple(op for op in self.operations if op.arity > 0)

    def arity(self, name: str) -> int:
        if name not in self._arities:
            raise UnknownSymbol(f"Unknown symbol {name!r}")
        return self._arities[name]

    def is_operation(self, name: str) -> bool:
        return any(op.name == name for op in self.operations)

    def is_relation(self, name: str) -> bool:
        return any(rel.name == name for rel in self.relations)

    def is_sublanguage_of(self, other: "Signature") -> bool:
        return all(
            other.is_operation(op.name) and other.arity(op.name) == op.arity for op in self.operations
        ) and all(other.is_relation(rel.name) and other.arity(rel.name) == rel.arity for rel in self.relations)

    def restrict(self, names: Iterable[str]) -> "Signature":
        wanted = set(names)
        for name in wanted:
            self.arity(name)
        return Signature(
            operations=tuple(op for op in self.operations if op.name in wanted),
            relations=tuple(rel for rel in self.relations if rel.name in wanted),
        )

    def without(self, names: Iterable[str]) -> "Signature":
        dropped = set(names)
        return self.restrict(name for name in self.names if name not in dropped)

    def first_mismatch(self, other: "Signature") -> str | None:
        for mine, theirs in zip((*self.operations, *self.relations), (*other.operations, *other.relations)):
            if mine != theirs:
                return mine.name
        if len(self.names) != len(other.names):
            longer = self if len(self.names) > len(other.names) else other
            return longer.names[min(len(self.names), len(other.names))]
        return None

    def __str__(self) -> str:
        return ", ".join(f"{name}/{self._arities[name]}" for name in self.names)
