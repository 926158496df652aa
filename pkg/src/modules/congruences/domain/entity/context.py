from dataclasses import dataclass, field
from typing import Sequence

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.errors import SignatureMismatch
from src.modules.congruences.domain.entity.congruence import Congruence


@dataclass
class RelCongruenceContext:
    """
    The quasivariety generated by ``members``, known only through them.

    ``kernels`` caches, per structure fingerprint, the kernels of all
    homomorphisms into the members. Every entry can be recomputed.
    """

    members: tuple[FiniteStructure, ...]
    kernels: dict[tuple, tuple[tuple[int, ...], ...]] = field(default_factory=dict)

    @classmethod
    def create(cls, members: Sequence[FiniteStructure]) -> "RelCongruenceContext":
        unique: dict[tuple, FiniteStructure] = {}
        for member in members:
            first = members[0].signature
            if not (member.signature.is_sublanguage_of(first) and first.is_sublanguage_of(member.signature)):
                raise SignatureMismatch(f"{member.name} and {members[0].name} have different signatures")
            unique.setdefault(member.fingerprint, member)
        return cls(members=tuple(unique.values()))

    @property
    def names(self) -> list[str]:
        return [member.name for member in self.members]


@dataclass(frozen=True)
class CepFailure(ValueObject):
    """``θ(a, b)`` computed in the subalgebra differs from its trace from the member."""

    member: str
    subuniverse: tuple[str, ...]
    pair: tuple[str, str]
    inner: Congruence
    outer_trace: tuple[tuple[str, ...], ...]

    def render(self) -> str:
        trace = "{" + ", ".join("{" + ",".join(block) + "}" for block in self.outer_trace) + "}"
        return "\n".join(
            [
                f"member: {self.member}",
                f"subalgebra: {{{', '.join(self.subuniverse)}}}",
                f"pair: ({', '.join(self.pair)})",
                f"in subalgebra: {self.inner.render()}",
                f"traced from member: {trace}",
            ]
        )


@dataclass(frozen=True)
class FraserHornFailure(ValueObject):
    """A principal congruence of a product that is not the product of the principal ones."""

    factors: tuple[str, str]
    pair: tuple[str, str]
    product: Congruence
    expected: Congruence

    def render(self) -> str:
        return "\n".join(
            [
                f"product: {' x '.join(self.factors)}",
                f"pair: ({', '.join(self.pair)})",
                f"principal: {self.product.render()}",
                f"product of principals: {self.expected.render()}",
            ]
        )


@dataclass(frozen=True)
class PropertyReport(ValueObject):
    name: str
    holds: bool
    failure: CepFailure | FraserHornFailure | None = None
    checked: int = 0

    @property
    def exit_code(self) -> int:
        return 0 if self.holds else 1

    def render(self) -> str:
        lines = [f"{self.name}: {'holds' if self.holds else 'fails'} ({self.checked} instances)"]
        if self.failure is not None:
            lines.append(self.failure.render())
        return "\n".join(lines)
