from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterator, Sequence

from src.config.config import AppConfig
from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Var
from src.modules.definability.domain.errors import QueryMismatch
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.enums import SyntacticClass

Member = tuple[int, tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class DefinabilityQuery(ValueObject):
    """
    Is ``target`` definable over ``members`` by a formula of ``syntactic_class``
    using only the symbols of ``language``?

    Members are the full structures; they interpret the language and the
    target. Identical members are kept once.
    """

    members: tuple[FiniteStructure, ...]
    language: Signature
    target: Target
    syntactic_class: SyntacticClass
    max_product_coords: int = 64
    max_poly_arity: int = 3
    oracle_depth: int = 2
    assume_cd: bool = False
    assume_rs: bool = False

    @classmethod
    def create(
        cls,
        members: Sequence[FiniteStructure],
        target: Sequence[str] | str,
        syntactic_class: SyntacticClass | str,
        language: Sequence[str] | Signature | None = None,
        settings: AppConfig | None = None,
        **options,
    ) -> "DefinabilityQuery":
        if not members:
            raise QueryMismatch("A query needs at least one structure")
        names = (target,) if isinstance(target, str) else tuple(target)
        signature = members[0].signature
        resolved = Target.resolve(signature, names)
        if language is None:
            language = signature.without(names)
        elif not isinstance(language, Signature):
            language = signature.restrict(language)
        bounds = {}
        if settings is not None:
            bounds = {
                "max_product_coords": settings.MAX_PRODUCT_COORDS,
                "max_poly_arity": settings.MAX_POLY_ARITY,
                "oracle_depth": settings.ORACLE_DEPTH,
            }
        return cls(
            members=tuple(members),
            language=language,
            target=resolved,
            syntactic_class=SyntacticClass(syntactic_class),
            **{**bounds, **options},
        )

    def __post_init__(self):
        unique, seen = [], set()
        for member in self.members:
            if member.fingerprint not in seen:
                seen.add(member.fingerprint)
                unique.append(member)
        object.__setattr__(self, "members", tuple(unique))
        clash = [name for name in self.target.symbols if name in self.language]
        if clash:
            raise QueryMismatch(f"Target symbols {clash} belong to the sublanguage {self.language}")
        for member in self.members:
            self.target.check(member)
            if not self.language.is_sublanguage_of(member.signature):
                raise QueryMismatch(f"{member.name} does not interpret the sublanguage {self.language}")

    @cached_property
    def reducts(self) -> tuple[FiniteStructure, ...]:
        return tuple(member.reduct(self.language) for member in self.members)

    @property
    def width(self) -> int:
        return self.target.width

    @property
    def variables(self) -> tuple[Var, ...]:
        return self.target.variables

    def points(self) -> Iterator[Member]:
        for k, member in enumerate(self.members):
            for point in cartesian(member.universe, repeat=self.width):
                yield k, point

    def holds(self, k: int, point: Sequence[int]) -> bool:
        return self.target.holds(self.members[k], point)

    @cached_property
    def inside(self) -> tuple[Member, ...]:
        return tuple((k, point) for k, point in self.points() if self.holds(k, point))

    @property
    def empty(self) -> bool:
        return not self.inside

    def with_class(self, syntactic_class: SyntacticClass) -> "DefinabilityQuery":
        return DefinabilityQuery(
            members=self.members,
            language=self.language,
            target=self.target,
            syntactic_class=syntactic_class,
            max_product_coords=self.max_product_coords,
            max_poly_arity=self.max_poly_arity,
            oracle_depth=self.oracle_depth,
            assume_cd=self.assume_cd,
            assume_rs=self.assume_rs,
        )

    @property
    def parameters(self) -> dict:
        return {
            "members": [member.name for member in self.members],
            "language": [symbol.name for symbol in (*self.language.operations, *self.language.relations)],
            "target": list(self.target.symbols),
            "class": self.syntactic_class.value,
            "max_product_coords": self.max_product_coords,
            "max_poly_arity": self.max_poly_arity,
            "assume_cd": self.assume_cd,
            "assume_rs": self.assume_rs,
        }
