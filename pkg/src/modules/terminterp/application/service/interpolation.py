from functools import cache
from itertools import product as cartesian
from typing import Sequence

from loguru import logger

from src.config.config import AppConfig
from src.core.app.service import BaseService
from src.core.domain.errors import ResourceExceeded, SynthesisError
from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.structure import FiniteStructure, table_from_function
from src.modules.algebra.domain.entity.term import Term, evaluate_term, substitute, x, z
from src.modules.clone.application.service.clone import CloneService, discriminator_value, distinct_members
from src.modules.clone.domain.entity.case_definition import CaseDefinition
from src.modules.clone.domain.entity.term_table import ClosureFailure, TermOpTable
from src.modules.definability.application.service.definability import DefinabilityService
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.enums import VerdictKind
from src.modules.formulas.application.service.formula import FormulaService
from src.modules.formulas.application.service.printer import print_term
from src.modules.formulas.domain.entity.formula import TRUE, Formula, substitute_formula
from src.modules.formulas.domain.enums import SyntacticClass
from src.modules.subpowers.domain.entity.closure import PointedClosure
from src.modules.terminterp.domain.entity.problem import InterpolationProblem
from src.modules.terminterp.domain.entity.report import ClosureViolation, InterpolationFailure, PixleyReport
from src.modules.terminterp.domain.enums import CaseClass
from src.modules.terminterp.domain.errors import NoMajorityTerm, NotADiscriminator

DISCRIMINATOR = "discriminator"

Interpolant = tuple[Term, tuple[int, ...]]


class TermInterpolationService(BaseService):
    NAME = "terminterp"
    CASES_ERROR = (SynthesisError, "Case definition of {symbol} fails at {point} in {name}")
    TERM_ERROR = (SynthesisError, "Term for {symbol} disagrees with it at {point} in {name}")
    DISCRIMINATOR_ERROR = (NotADiscriminator, "{term} is not the ternary discriminator on {name}")
    MAJORITY_ERROR = (NoMajorityTerm, "{members} have no majority term in {language}")
    ROUTES_ERROR = (SynthesisError, "Majority interpolation and row scan disagree for {symbol}")

    def __init__(
        self,
        settings: AppConfig,
        clone: CloneService,
        definability: DefinabilityService,
        formulas: FormulaService,
    ):
        self.settings = settings
        self.clone = clone
        self.definability = definability
        self.formulas = formulas

    # definition by cases

    def subuniverse_violation(self, problem: InterpolationProblem) -> ClosureViolation | None:
        """The first generated subuniverse of a member that the target leaves."""
        for k, reduct in enumerate(problem.reducts):
            for point in cartesian(reduct.universe, repeat=problem.arity):
                closure = PointedClosure(reduct, point, limit=self.settings.MAX_CLOSURE_SIZE)
                value = problem.value(k, point)
                if value not in closure:
                    return ClosureViolation(
                        structure=reduct.name,
                        arguments=tuple(reduct.display(a) for a in point),
                        subuniverse=tuple(reduct.display(a) for a in sorted(closure.elements)),
                        value=reduct.display(value),
                    )
        return None

    def find_term_by_cases(self, problem: InterpolationProblem) -> CaseDefinition | InterpolationFailure:
        """
        Terms ``t1, ..., tk`` with conditions ``φ(x, ti(x))`` where ``φ(x, z1)``
        defines the graph of the target by an open (or positive open) formula.
        """
        violation = self.subuniverse_violation(problem)
        if violation is not None:
            return InterpolationFailure("every subuniverse is closed under the target", violation=violation)
        positive = problem.case_class == CaseClass.POSITIVE
        query = DefinabilityQuery.create(
            problem.members,
            [problem.symbol],
            SyntacticClass.POSITIVE_OPEN if positive else SyntacticClass.OPEN,
            language=problem.language,
            settings=self.settings,
        )
        verdict = self.definability.check(query)
        if verdict.kind == VerdictKind.RESOURCE_EXCEEDED:
            raise ResourceExceeded("Graph definability hit a bound", report=verdict.report)
        if not verdict.is_definable:
            maps = "homomorphisms" if positive else "isomorphisms"
            return InterpolationFailure(
                f"{maps} between substructures preserve the target", counterexample=verdict.counterexample
            )
        table = self.clone.term_operations(problem.reducts, problem.arity)
        exact = table.find(problem.row)
        if exact is not None:
            cases = ((table.witness(exact), TRUE),)
        else:
            terms = [table.witness(i) for i in self._cover(problem, table)]
            cases = tuple((term, substitute_formula(verdict.witness, {z(1): term})) for term in terms)
        definition = CaseDefinition(problem.symbol, cases)
        self.verify_cases(problem, definition)
        logger.info("Cases[{symbol}] {count} cases", symbol=problem.symbol, count=len(definition))
        return definition

    def _cover(self, problem: InterpolationProblem, table: TermOpTable) -> list[int]:
        """Rows in discovery order, each kept when it matches the target on a new coordinate."""
        uncovered = set(range(len(problem.points)))
        chosen = []
        for i, row in enumerate(table.rows):
            hit = {c for c in uncovered if row[c] == problem.row[c]}
            if hit:
                chosen.append(i)
                uncovered -= hit
            if not uncovered:
                return chosen
        raise self._exceed(
            "DEPTH_BUDGET", self.settings.DEPTH_BUDGET, len(table), symbol=problem.symbol, uncovered=len(uncovered)
        )

    def verify_cases(self, problem: InterpolationProblem, definition: CaseDefinition):
        names = [f"x{i + 1}" for i in range(problem.arity)]
        for k, point in problem.points:
            member = problem.members[k]
            env = dict(zip(names, point))
            holding = [
                term
                for term, condition in definition.cases
                if condition == TRUE or self.formulas.evaluate(member, condition, env)
            ]
            if not holding or any(evaluate_term(member, term, point) != problem.value(k, point) for term in holding):
                self._raise(self.CASES_ERROR, symbol=problem.symbol, point=point, name=member.name)

    # discriminator merging

    def check_discriminator(self, structures: Sequence[FiniteStructure], term: Term):
        for structure in structures:
            for point in cartesian(structure.universe, repeat=3):
                if evaluate_term(structure, term, point) != discriminator_value(point):
                    self._raise(self.DISCRIMINATOR_ERROR, term=print_term(term), name=structure.name)

    @staticmethod
    def _equation(rows: Sequence[tuple[int, ...]], truth: Sequence[bool]) -> tuple[int, int] | None:
        """Rows equal exactly on the coordinates where ``truth`` holds."""
        inside = [c for c, holds in enumerate(truth) if holds]
        outside = [c for c, holds in enumerate(truth) if not holds]
        if not outside:
            return 0, 0
        buckets: dict[tuple, list[int]] = {}
        for i, row in enumerate(rows):
            key = tuple(row[c] for c in inside)
            for j in buckets.get(key, ()):
                if all(rows[j][c] != row[c] for c in outside):
                    return j, i
            buckets.setdefault(key, []).append(i)
        return None

    def equational_form(
        self, problem: InterpolationProblem, table: TermOpTable, condition: Formula
    ) -> tuple[Term, Term, bool]:
        """
        Terms ``p, q`` with ``condition`` equivalent to ``p = q`` (flag set) or
        to ``p != q`` over the members.
        """
        names = [f"x{i + 1}" for i in range(problem.arity)]
        truth = [
            self.formulas.evaluate(problem.members[k], condition, dict(zip(names, point)))
            for k, point in problem.points
        ]
        for positive, pattern in ((True, truth), (False, [not holds for holds in truth])):
            found = self._equation(table.rows, pattern)
            if found is not None:
                return table.witness(found[0]), table.witness(found[1]), positive
        raise self._exceed("MAX_TERM_ROWS", self.settings.MAX_TERM_ROWS, len(table), condition=str(condition))

    def merge_cases_discriminator(
        self, problem: InterpolationProblem, definition: CaseDefinition, discriminator: Term
    ) -> Term:
        """
        A single term equal to the case definition, built right to left as
        ``D(p1, q1, t1, D(p2, q2, t2, ...))`` so earlier cases take priority.
        """
        if len(definition) == 1:
            return definition.terms[0]
        self.check_discriminator(problem.reducts, discriminator)
        quaternary = self.clone.quaternary_discriminator(discriminator)
        table = self.clone.term_operations(problem.reducts, problem.arity)
        merged = definition.terms[-1]
        for term, condition in reversed(definition.cases[:-1]):
            p, q, positive = self.equational_form(problem, table, condition)
            first, second = (term, merged) if positive else (merged, term)
            merged = substitute(quaternary, {x(1): p, x(2): q, x(3): first, x(4): second})
        self.verify_term(problem, merged)
        return merged

    def verify_term(self, problem: InterpolationProblem, term: Term):
        for k, point in problem.points:
            member = problem.members[k]
            if evaluate_term(member, term, point) != problem.value(k, point):
                self._raise(self.TERM_ERROR, symbol=problem.symbol, point=point, name=member.name)

    def pixley_check(self, structures: Sequence[FiniteStructure]) -> PixleyReport:
        """
        Looks for a discriminator term and, independently, tests whether the
        discriminator itself is preserved by homomorphisms between substructures.
        """
        members = distinct_members(structures)
        discriminator = self.clone.find_discriminator_term(members)
        quaternary = self.clone.quaternary_discriminator(discriminator) if discriminator is not None else None
        expanded = [
            member.with_operation(
                DISCRIMINATOR, 3, table_from_function(member.size, 3, lambda a, b, c: c if a == b else a)
            )
            for member in members
        ]
        query = DefinabilityQuery.create(
            expanded,
            [DISCRIMINATOR],
            SyntacticClass.POSITIVE_OPEN,
            language=members[0].signature,
            settings=self.settings,
        )
        verdict = self.definability.check(query)
        counterexample = verdict.counterexample if verdict.kind == VerdictKind.NOT_DEFINABLE else None
        logger.info(
            "Pixley[{members}] discriminator={found}",
            members=[m.name for m in members],
            found=discriminator is not None,
        )
        return PixleyReport(discriminator, quaternary, counterexample)

    # Baker-Pixley

    def product_violation(self, problem: InterpolationProblem) -> ClosureViolation | None:
        """The first subuniverse of a binary product of members not closed under the target."""
        for i, left in enumerate(problem.reducts):
            for j in range(i, len(problem.reducts)):
                right = problem.reducts[j]
                pairs = list(cartesian(left.universe, right.universe))
                if len(pairs) ** problem.arity > self.settings.MAX_TERM_ROWS:
                    raise self._exceed(
                        "MAX_TERM_ROWS", self.settings.MAX_TERM_ROWS, len(pairs) ** problem.arity, symbol=problem.symbol
                    )
                frame = ProductFrame((left, right))
                for generators in cartesian(pairs, repeat=problem.arity):
                    image = (
                        problem.value(i, tuple(pair[0] for pair in generators)),
                        problem.value(j, tuple(pair[1] for pair in generators)),
                    )
                    closure = PointedClosure(frame, generators, limit=self.settings.MAX_CLOSURE_SIZE)
                    if image not in closure:
                        return ClosureViolation(
                            structure=frame.name,
                            arguments=tuple(frame.display(g) for g in generators),
                            subuniverse=tuple(frame.display(e) for e in sorted(closure.elements)),
                            value=frame.display(image),
                        )
        return None

    def majority_interpolation(self, problem: InterpolationProblem, majority: Term) -> Interpolant:
        """
        Interpolate the target on all coordinates from two-point interpolants.

        A term for a set of coordinates is ``M(t1, t2, t3)`` where ``ti`` handles
        the set without its i-th element. The returned term shares subterms;
        its printed form grows exponentially with the number of coordinates.
        """
        points = problem.points
        reducts = problem.reducts
        tables = [
            {args: evaluate_term(reduct, majority, args) for args in cartesian(reduct.universe, repeat=3)}
            for reduct in reducts
        ]

        def row_of(term: Term) -> tuple[int, ...]:
            return tuple(evaluate_term(reducts[k], term, point) for k, point in points)

        @cache
        def two_point(c: int, d: int) -> Interpolant:
            (k, a), (l, b) = points[c], points[d]
            frame = ProductFrame((reducts[k], reducts[l]))
            closure = PointedClosure(frame, list(zip(a, b)), limit=self.settings.MAX_CLOSURE_SIZE)
            index = closure.index.get((problem.row[c], problem.row[d]))
            if index is None:
                self._raise(self.ROUTES_ERROR, symbol=problem.symbol)
            term = closure.term(index)
            return term, row_of(term)

        @cache
        def interpolate(chosen: tuple[int, ...]) -> Interpolant:
            if len(chosen) <= 2:
                return two_point(chosen[0], chosen[-1])
            parts = [interpolate(tuple(c for c in chosen if c != dropped)) for dropped in chosen[:3]]
            row = tuple(
                tables[k][(parts[0][1][c], parts[1][1][c], parts[2][1][c])] for c, (k, _) in enumerate(points)
            )
            term = substitute(majority, {x(1): parts[0][0], x(2): parts[1][0], x(3): parts[2][0]})
            return term, row

        return interpolate(tuple(range(len(points))))

    def baker_pixley_term(self, problem: InterpolationProblem) -> Term | InterpolationFailure:
        majority = self.clone.find_majority_term(problem.reducts)
        if majority is None:
            self._raise(
                self.MAJORITY_ERROR,
                members=[member.name for member in problem.members],
                language=problem.language,
            )
        violation = self.product_violation(problem)
        if violation is not None:
            return InterpolationFailure(
                "subuniverses of binary products are closed under the target", violation=violation
            )
        term = self.clone.find_representing_term(problem.members, problem.symbol, problem.language)
        if isinstance(term, ClosureFailure):
            self._raise(self.ROUTES_ERROR, symbol=problem.symbol)
        self.verify_term(problem, term)
        _, row = self.majority_interpolation(problem, majority)
        if row != problem.row:
            self._raise(self.ROUTES_ERROR, symbol=problem.symbol)
        logger.info("BakerPixley[{symbol}] term found", symbol=problem.symbol)
        return term
