from dataclasses import dataclass

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.term import Term
from src.modules.formulas.domain.entity.formula import Formula


@dataclass(frozen=True)
class CaseDefinition(ValueObject):
    """f = t1 on phi1, ..., tk on phik; the cases cover the class and agree with f."""

    target: str
    cases: tuple[tuple[Term, Formula], ...]

    @property
    def terms(self) -> tuple[Term, ...]:
        return tuple(term for term, _ in self.cases)

    @property
    def conditions(self) -> tuple[Formula, ...]:
        return tuple(condition for _, condition in self.cases)

    def __len__(self) -> int:
        return len(self.cases)
