from dataclasses import dataclass, field

from src.core.domain.entity import ValueObject
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.enums import VerdictKind
from src.modules.formulas.application.service.printer import print_formula
from src.modules.formulas.domain.entity.formula import Formula
from src.modules.formulas.domain.enums import SyntacticClass
from src.modules.subpowers.domain.entity.hom_map import HomMap


@dataclass(frozen=True)
class Counterexample(ValueObject):
    """
    A map ``sigma`` of the required kind that sends a target tuple outside
    the target.

    The source of ``sigma`` is a member, a substructure of a product of
    members or the trivial structure. ``factors`` lists the members whose
    product holds it (empty for the trivial structure) and ``columns`` the
    tuple read in each factor.
    """

    sigma: HomMap
    point: tuple[int, ...]
    factors: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]
    target_member: int

    @property
    def image(self) -> tuple[int, ...]:
        return self.sigma.image(self.point)

    def verify(self, query: DefinabilityQuery) -> bool:
        if not self.sigma.verify():
            return False
        inside = all(query.holds(k, column) for k, column in zip(self.factors, self.columns))
        return inside and not query.holds(self.target_member, self.image)

    def describe(self) -> dict:
        source, target = self.sigma.source, self.sigma.target
        return {
            "kind": self.sigma.kind.value,
            "source": source.host.name,
            "source_elements": source.labels,
            "target": target.host.name,
            "target_elements": target.labels,
            "sigma": [[source.host.display(a), target.host.display(b)] for a, b in self.sigma.mapping],
            "point": [source.host.display(a) for a in self.point],
            "image": [target.host.display(b) for b in self.image],
        }

    def render(self) -> str:
        info = self.describe()
        return "\n".join(
            [
                f"source: {info['source']} {{{', '.join(info['source_elements'])}}}",
                f"target: {info['target']} {{{', '.join(info['target_elements'])}}}",
                f"sigma ({info['kind']}): {self.sigma.render()}",
                f"tuple: ({', '.join(info['point'])}) -> ({', '.join(info['image'])})",
            ]
        )


@dataclass(frozen=True)
class Verdict(ValueObject):
    kind: VerdictKind
    syntactic_class: SyntacticClass
    witness: Formula | None = None
    verified: bool = False
    counterexample: Counterexample | None = None
    reason: str | None = None
    report: dict = field(default_factory=dict)

    @classmethod
    def definable(cls, query: DefinabilityQuery, witness: Formula) -> "Verdict":
        return cls(VerdictKind.DEFINABLE, query.syntactic_class, witness=witness, verified=True)

    @classmethod
    def not_definable(
        cls, query: DefinabilityQuery, counterexample: Counterexample | None = None, reason: str | None = None
    ) -> "Verdict":
        return cls(VerdictKind.NOT_DEFINABLE, query.syntactic_class, counterexample=counterexample, reason=reason)

    @classmethod
    def exceeded(cls, query: DefinabilityQuery, report: dict) -> "Verdict":
        return cls(
            VerdictKind.RESOURCE_EXCEEDED,
            query.syntactic_class,
            reason="sound but bounded",
            report=dict(report),
        )

    @property
    def is_definable(self) -> bool:
        return self.kind == VerdictKind.DEFINABLE

    @property
    def exit_code(self) -> int:
        return self.kind.exit_code

    def render(self) -> str:
        lines = [f"{self.kind.value} [{self.syntactic_class.value}]"]
        if self.witness is not None:
            lines.append(print_formula(self.witness))
        if self.counterexample is not None:
            lines.append(self.counterexample.render())
        if self.reason:
            lines.append(f"reason: {self.reason}")
        for key, value in self.report.items():
            lines.append(f"{key}: {value}")
        return "\n".join(lines)
