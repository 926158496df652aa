from dataclasses import dataclass

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.term import Term
from src.modules.definability.domain.entity.verdict import Counterexample
from src.modules.formulas.application.service.printer import print_term


@dataclass(frozen=True)
class ClosureViolation(ValueObject):
    """A subuniverse, generated by ``arguments``, that the target leaves through ``value``."""

    structure: str
    arguments: tuple[str, ...]
    subuniverse: tuple[str, ...]
    value: str

    def render(self) -> str:
        return "\n".join(
            [
                f"structure: {self.structure}",
                f"generators: ({', '.join(self.arguments)})",
                f"subuniverse: {{{', '.join(self.subuniverse)}}}",
                f"image: {self.value} not in subuniverse",
            ]
        )


@dataclass(frozen=True)
class InterpolationFailure(ValueObject):
    condition: str
    violation: ClosureViolation | None = None
    counterexample: Counterexample | None = None

    @property
    def exit_code(self) -> int:
        return 1

    def render(self) -> str:
        detail = self.violation or self.counterexample
        return f"fails: {self.condition}\n{detail.render() if detail is not None else ''}".rstrip()


@dataclass(frozen=True)
class PixleyReport(ValueObject):
    discriminator: Term | None
    quaternary: Term | None
    hom_counterexample: Counterexample | None = None

    @property
    def quasiprimal(self) -> bool:
        return self.discriminator is not None

    @property
    def exit_code(self) -> int:
        return 0 if self.quasiprimal else 1

    def render(self) -> str:
        if self.discriminator is None:
            lines = ["no discriminator term"]
        else:
            lines = [f"discriminator: {print_term(self.discriminator)}"]
            if self.quaternary is not None:
                lines.append(f"quaternary: {print_term(self.quaternary)}")
        if self.hom_counterexample is not None:
            lines += ["d is not preserved by homomorphisms:", self.hom_counterexample.render()]
        return "\n".join(lines)
