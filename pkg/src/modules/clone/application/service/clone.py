from itertools import product as cartesian
from typing import Callable, Sequence

from loguru import logger

from src.config.config import AppConfig
from src.core.app.service import BaseService
from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Term, Var, substitute, variables, x
from src.modules.clone.domain.entity.term_table import ClosureFailure, TermOpTable, coordinates
from src.modules.clone.domain.errors import EmptyClass, TargetNotInterpreted, WrongArity
from src.modules.subpowers.domain.entity.closure import PointedClosure

Values = Callable[[int, tuple[int, ...]], int]


def distinct_members(structures: Sequence[FiniteStructure]) -> list[FiniteStructure]:
    seen, result = set(), []
    for structure in structures:
        if structure.fingerprint not in seen:
            seen.add(structure.fingerprint)
            result.append(structure)
    return result


def majority_value(point: tuple[int, ...]) -> int | None:
    a, b, c = point
    if a == b or a == c:
        return a
    if b == c:
        return b
    return None


def discriminator_value(point: tuple[int, ...]) -> int:
    a, b, c = point
    return c if a == b else a


class CloneService(BaseService):
    NAME = "clone"
    EMPTY_CLASS_ERROR = (EmptyClass, "The class of structures is empty")
    ARITY_ERROR = (WrongArity, "Expected a ternary term, got variables {names}")
    TARGET_ERROR = (TargetNotInterpreted, "{symbol!r} is not interpreted in {name}")

    def __init__(self, settings: AppConfig):
        self.settings = settings

    def term_operations(
        self,
        structures: Sequence[FiniteStructure],
        n: int,
        depth_budget: int | None = None,
        stop: Callable[[tuple], bool] | None = None,
        labels: Sequence[Var] | None = None,
    ) -> TermOpTable:
        if not structures:
            self._raise(self.EMPTY_CLASS_ERROR)
        table = TermOpTable.build(
            structures,
            n,
            depth_budget=depth_budget if depth_budget is not None else self.settings.DEPTH_BUDGET,
            max_rows=self.settings.MAX_TERM_ROWS,
            stop=stop,
            variables=labels,
        )
        logger.info(
            "TermOps[n={n}] {rows} rows over {k} structures, fixpoint={fixpoint}",
            n=n,
            rows=len(table),
            k=len(table.structures),
            fixpoint=table.fixpoint,
        )
        return table

    def _not_closed(self, table: TermOpTable):
        return self._exceed(
            "DEPTH_BUDGET",
            self.settings.DEPTH_BUDGET,
            len(table),
            rows=len(table),
            max_rows=self.settings.MAX_TERM_ROWS,
        )

    def find_representing_term(
        self,
        structures: Sequence[FiniteStructure],
        symbol: str,
        language: Signature | None = None,
    ) -> Term | ClosureFailure:
        """
        A term of ``language`` that agrees with ``symbol`` on every member, or
        a subuniverse of a product of members that ``symbol`` does not preserve.

        ``language`` defaults to the signature without ``symbol``.
        """
        structures = distinct_members(structures)
        if not structures:
            self._raise(self.EMPTY_CLASS_ERROR)
        for structure in structures:
            if not structure.signature.is_operation(symbol):
                self._raise(self.TARGET_ERROR, symbol=symbol, name=structure.name)
        n = structures[0].signature.arity(symbol)
        language = language or structures[0].signature.without([symbol])
        reducts = [structure.reduct(language) for structure in structures]

        def values(k: int, point: tuple[int, ...]) -> int:
            return structures[k].apply(symbol, point)

        return self._represent(reducts, n, values, symbol)

    def _represent(self, reducts: list[FiniteStructure], n: int, values: Values, label: str) -> Term | ClosureFailure:
        target_row = tuple(values(k, point) for k, point in coordinates(reducts, n))
        table = self.term_operations(reducts, n, stop=lambda row: row == target_row)
        if table.closure.found is not None:
            return table.witness(table.closure.found)
        if table.fixpoint:
            return self._table_failure(table, target_row, label)
        failure = self.product_failure(reducts, n, values)
        if failure is not None:
            return failure
        raise self._not_closed(table)

    @staticmethod
    def _table_failure(table: TermOpTable, image: tuple[int, ...], label: str) -> ClosureFailure:
        logger.info("Representation[{label}] refuted by the universal product", label=label)
        return ClosureFailure(
            factors=tuple(f"{table.structures[k].name}@{point}" for k, point in table.points),
            generators=tuple(table.closure.generators),
            elements=tuple(table.rows),
            image=image,
        )

    def product_failure(self, reducts: Sequence[FiniteStructure], n: int, values: Values) -> ClosureFailure | None:
        """
        Search binary products A x B of members for generators whose
        subuniverse misses their image under the target.

        Products whose generator tuples outnumber ``MAX_TERM_ROWS`` are skipped,
        so None is not a proof that the target is a term operation.
        """
        for i, left in enumerate(reducts):
            for j in range(i, len(reducts)):
                right = reducts[j]
                pairs = list(cartesian(left.universe, right.universe))
                if len(pairs) ** n > self.settings.MAX_TERM_ROWS:
                    continue
                frame = ProductFrame((left, right))
                for generators in cartesian(pairs, repeat=n):
                    image = (
                        values(i, tuple(pair[0] for pair in generators)),
                        values(j, tuple(pair[1] for pair in generators)),
                    )
                    closure = PointedClosure(frame, generators, limit=self.settings.MAX_CLOSURE_SIZE)
                    if image not in closure:
                        logger.info("Representation refuted on {left} x {right}", left=left.name, right=right.name)
                        return ClosureFailure(
                            factors=(left.name, right.name),
                            generators=tuple(generators),
                            elements=tuple(sorted(closure.elements)),
                            image=image,
                        )
        return None

    def find_majority_term(self, structures: Sequence[FiniteStructure]) -> Term | None:
        structures = distinct_members(structures)
        if not structures:
            self._raise(self.EMPTY_CLASS_ERROR)
        constraints = [
            (column, value)
            for column, (_, point) in enumerate(coordinates(structures, 3))
            if (value := majority_value(point)) is not None
        ]
        table = self.term_operations(
            structures, 3, stop=lambda row: all(row[column] == value for column, value in constraints)
        )
        if table.closure.found is not None:
            return table.witness(table.closure.found)
        if table.fixpoint:
            logger.info("Majority term absent from a closed ternary clone")
            return None
        raise self._not_closed(table)

    def find_discriminator_term(self, structures: Sequence[FiniteStructure]) -> Term | None:
        structures = distinct_members(structures)
        if not structures:
            self._raise(self.EMPTY_CLASS_ERROR)

        def values(_: int, point: tuple[int, ...]) -> int:
            return discriminator_value(point)

        if self.product_failure(structures, 3, values) is not None:
            return None
        result = self._represent(structures, 3, values, "discriminator")
        return result if not isinstance(result, ClosureFailure) else None

    def quaternary_discriminator(self, term: Term) -> Term:
        names = sorted({v.name for v in variables(term)})
        if any(v.prefix != "x" or v.index > 3 for v in variables(term)):
            self._raise(self.ARITY_ERROR, names=names)
        return substitute(term, {x(1): term, x(2): substitute(term, {x(3): x(4)}), x(3): x(4)})
