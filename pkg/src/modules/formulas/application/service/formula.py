from typing import Iterable, Mapping, Sequence

from loguru import logger

from src.core.app.service import BaseService
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.formulas.application.service import model_checker
from src.modules.formulas.application.service.classifier import classify
from src.modules.formulas.application.service.parser import FormulaParser
from src.modules.formulas.application.service.printer import print_formula
from src.modules.formulas.domain.entity.formula import Formula
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.enums import SyntacticClass


class FormulaService(BaseService):
    NAME = "formulas"

    def parse(self, text: str, signature: Signature | None = None) -> Formula:
        return FormulaParser(signature).parse(text)

    @staticmethod
    def print(formula: Formula) -> str:
        return print_formula(formula)

    @staticmethod
    def classify(formula: Formula) -> set[SyntacticClass]:
        return classify(formula)

    @staticmethod
    def evaluate(structure: FiniteStructure, formula: Formula, assignment: Sequence[int] | Mapping[str, int]) -> bool:
        return model_checker.evaluate(structure, formula, assignment)

    def defines(self, structures: Iterable[FiniteStructure], formula: Formula, target: Target) -> bool:
        structures = list(structures)
        miss = model_checker.first_disagreement(structures, formula, target)
        if miss is not None:
            logger.debug(
                "Formula misses {target} on {name} at {point}", target=str(target), name=miss[0].name, point=miss[1]
            )
        return miss is None

    @staticmethod
    def first_disagreement(structures: Iterable[FiniteStructure], formula: Formula, target: Target):
        return model_checker.first_disagreement(structures, formula, target)
