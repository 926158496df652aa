from dataclasses import dataclass, field
from typing import Callable, Iterable

from src.modules.definability.domain.entity.query import DefinabilityQuery, Member
from src.modules.formulas.application.service.model_checker import compile_formula
from src.modules.formulas.domain.entity.formula import Formula
from src.modules.subpowers.domain.entity.closure import PointedClosure, Violation
from src.modules.subpowers.domain.enums import MapKind


@dataclass
class TargetType:
    """Target-width points sharing one pointed isomorphism type of generated substructure."""

    position: int
    closure: PointedClosure
    member: int
    point: tuple[int, ...]
    inside: list[Member] = field(default_factory=list)
    outside: list[Member] = field(default_factory=list)

    @property
    def mixed(self) -> bool:
        return bool(self.inside) and bool(self.outside)

    @property
    def bit(self) -> int:
        return 1 << self.position


class TypeSpace:
    """
    The pointed types of every target-width tuple of every member, read over
    the sublanguage.

    Quantifier-free formulas take one truth value per type, so formulas are
    scored as bitmasks over type positions. Hom questions between types are
    cached.
    """

    def __init__(self, query: DefinabilityQuery, limit: int | None = None):
        self.query = query
        self.types: list[TargetType] = []
        by_key: dict[tuple, TargetType] = {}
        for k, point in query.points():
            closure = PointedClosure(query.reducts[k], point, variables=query.variables, limit=limit)
            key = closure.canonical_key
            if key not in by_key:
                by_key[key] = TargetType(len(self.types), closure, k, point)
                self.types.append(by_key[key])
            kind = by_key[key]
            (kind.inside if query.holds(k, point) else kind.outside).append((k, point))
        self._violations: dict[tuple[int, int, MapKind], Violation | None] = {}
        self._predicates: dict[tuple[int, Formula], Callable] = {}

    def __len__(self) -> int:
        return len(self.types)

    def __iter__(self):
        return iter(self.types)

    @property
    def in_types(self) -> list[TargetType]:
        return [t for t in self.types if t.inside]

    @property
    def out_types(self) -> list[TargetType]:
        return [t for t in self.types if t.outside]

    @property
    def in_mask(self) -> int:
        return sum(t.bit for t in self.in_types)

    @property
    def out_mask(self) -> int:
        return sum(t.bit for t in self.out_types)

    def violation(self, source: TargetType, target: TargetType, kind: MapKind = MapKind.HOM) -> Violation | None:
        key = (source.position, target.position, kind)
        if key not in self._violations:
            self._violations[key] = source.closure.find_violation(
                self.query.reducts[target.member], target.point, kind
            )
        return self._violations[key]

    def maps(self, source: TargetType, target: TargetType, kind: MapKind = MapKind.HOM) -> bool:
        return self.violation(source, target, kind) is None

    def sources(self, types: Iterable[TargetType]) -> list[TargetType]:
        """
        Drop every type that receives a hom from another kept one.

        Atoms true at a type also hold wherever it maps, so the dropped types
        never change the atoms common to the whole list.
        """
        kept: list[TargetType] = []
        for candidate in types:
            if any(self.maps(other, candidate) for other in kept):
                continue
            kept = [other for other in kept if not self.maps(candidate, other)]
            kept.append(candidate)
        return sorted(kept, key=lambda t: t.position)

    def holds(self, formula: Formula, kind: TargetType) -> bool:
        key = (kind.member, formula)
        if key not in self._predicates:
            self._predicates[key] = compile_formula(self.query.reducts[kind.member], formula)
        env = {variable.name: value for variable, value in zip(self.query.variables, kind.point)}
        return self._predicates[key](env)

    def mask(self, formula: Formula) -> int:
        return sum(t.bit for t in self.types if self.holds(formula, t))
