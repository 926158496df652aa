from src.modules.definability.application.service.strategies import (
    AtomicConjunctionStrategy,
    DefinabilityStrategy,
    ExistentialStrategy,
    OpenHornStrategy,
    OpenStrategy,
    PositiveOpenStrategy,
)
from src.modules.formulas.domain.enums import SyntacticClass


class DefinabilityStrategyFactory:
    @classmethod
    def create_strategy(cls, syntactic_class: SyntacticClass) -> type[DefinabilityStrategy]:
        match syntactic_class:
            case SyntacticClass.OPEN:
                return OpenStrategy
            case SyntacticClass.POSITIVE_OPEN:
                return PositiveOpenStrategy
            case SyntacticClass.OPEN_HORN | SyntacticClass.OPEN_STRICT_HORN:
                return OpenHornStrategy
            case SyntacticClass.ATOMIC_CONJ:
                return AtomicConjunctionStrategy
            case (
                SyntacticClass.PP
                | SyntacticClass.EXIST_POSITIVE
                | SyntacticClass.EXIST_HORN
                | SyntacticClass.EXISTENTIAL
            ):
                return ExistentialStrategy
            case _:
                raise ValueError(f"Unknown syntactic class: {syntactic_class}")
