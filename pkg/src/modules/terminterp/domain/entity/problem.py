from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.clone.domain.entity.term_table import Coordinate, coordinates
from src.modules.terminterp.domain.enums import CaseClass
from src.modules.terminterp.domain.errors import NotAFunctionSymbol


@dataclass(frozen=True, eq=False)
class InterpolationProblem(ValueObject):
    """
    Find an ``language``-term (or a definition by cases) for the ``arity``-ary
    operation ``symbol`` interpreted on every member.
    """

    members: tuple[FiniteStructure, ...]
    language: Signature
    symbol: str
    arity: int
    case_class: CaseClass = CaseClass.OPEN

    @classmethod
    def create(
        cls,
        members: Sequence[FiniteStructure],
        symbol: str,
        language: Sequence[str] | Signature | None = None,
        case_class: CaseClass | str = CaseClass.OPEN,
    ) -> "InterpolationProblem":
        if not members:
            raise NotAFunctionSymbol("An interpolation problem needs at least one structure")
        unique: dict[tuple, FiniteStructure] = {}
        for member in members:
            unique.setdefault(member.fingerprint, member)
        members = tuple(unique.values())
        signature = members[0].signature
        for member in members:
            if symbol not in member.signature or not member.signature.is_operation(symbol):
                raise NotAFunctionSymbol(f"{symbol!r} is not an operation of {member.name}")
        if language is None:
            language = signature.without([symbol])
        elif not isinstance(language, Signature):
            language = signature.restrict(language)
        if symbol in language:
            raise NotAFunctionSymbol(f"{symbol!r} belongs to the language {language}")
        return cls(
            members=members,
            language=language,
            symbol=symbol,
            arity=signature.arity(symbol),
            case_class=CaseClass(case_class),
        )

    @cached_property
    def reducts(self) -> tuple[FiniteStructure, ...]:
        return tuple(member.reduct(self.language) for member in self.members)

    @cached_property
    def points(self) -> tuple[Coordinate, ...]:
        return coordinates(self.members, self.arity)

    def value(self, k: int, point: Sequence[int]) -> int:
        return self.members[k].apply(self.symbol, point)

    @cached_property
    def row(self) -> tuple[int, ...]:
        """Values of the target at every coordinate, in coordinate order."""
        return tuple(self.value(k, point) for k, point in self.points)
