import hashlib
import json
from pathlib import Path
from typing import Iterable, Sequence

import pydantic
from loguru import logger

from src.core.app.service import BaseService
from src.core.domain.errors import ParseError, ValidationError
from src.core.utils.encoder import canonical_dumps
from src.modules.algebra.application.dto.algebra_file import AlgebraFileDto
from src.modules.algebra.domain.builtin import BUILTINS, builtin
from src.modules.algebra.domain.entity.product import product
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Assignment, Term, evaluate_term
from src.modules.algebra.domain.errors import UnknownAlgebra


class AlgebraService(BaseService):
    NAME = "algebra"
    NOT_FOUND_ERROR = (UnknownAlgebra, "Algebra {source!r} is neither a built-in nor a readable file")

    def load(self, source: str) -> FiniteStructure:
        name = self.builtin_name(source)
        if name is not None:
            return builtin(name)
        path = Path(source)
        if not path.is_file():
            self._raise(self.NOT_FOUND_ERROR, source=source)
        structure = self.parse(path.read_text(encoding="utf-8"), origin=str(path))
        logger.info("Algebra[{name}] loaded from {path}", name=structure.name, path=str(path))
        return structure

    def load_many(self, sources: Iterable[str]) -> list[FiniteStructure]:
        return [self.load(source) for source in sources]

    @staticmethod
    def parse(text: str, origin: str = "<input>") -> FiniteStructure:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{origin}: {e.msg}", line=e.lineno, column=e.colno)
        try:
            dto = AlgebraFileDto.model_validate(raw)
        except pydantic.ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first["loc"]) or "<root>"
            raise ValidationError(f"{origin}: {where}: {first['msg']}")
        return dto.to_structure()

    @staticmethod
    def dump(structure: FiniteStructure) -> str:
        return AlgebraFileDto.from_structure(structure).model_dump_json(indent=2, exclude_none=True)

    @staticmethod
    def builtin_name(source: str) -> str | None:
        """Bare built-in names resolve directly; `stone3.alg` does too when no such file exists."""
        if source in BUILTINS:
            return source
        path = Path(source)
        if path.suffix == ".alg" and path.stem in BUILTINS and not path.is_file():
            return path.stem
        return None

    @classmethod
    def digest(cls, source: str) -> str:
        name = cls.builtin_name(source)
        if name is not None:
            payload = canonical_dumps(AlgebraFileDto.from_structure(builtin(name)).model_dump()).encode()
        else:
            payload = Path(source).read_bytes()
        return hashlib.sha256(payload).hexdigest()

    @staticmethod
    def product(factors: Sequence[FiniteStructure]) -> FiniteStructure:
        return product(factors)

    @staticmethod
    def reduct(structure: FiniteStructure, names: Iterable[str]) -> FiniteStructure:
        return structure.reduct(structure.signature.restrict(names))

    @staticmethod
    def evaluate_term(structure: FiniteStructure, term: Term, assignment: Assignment) -> int:
        return evaluate_term(structure, term, assignment)
