from dataclasses import replace
from itertools import combinations_with_replacement
from itertools import product as cartesian
from math import prod
from typing import Sequence

from loguru import logger

from src.config.config import AppConfig
from src.core.app.service import BaseService
from src.core.domain.errors import NotSupportedError, ResourceExceeded, SynthesisError
from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure, trivial_structure
from src.modules.algebra.domain.entity.term import App, u, x
from src.modules.clone.application.service.clone import CloneService
from src.modules.definability.application.service.factory import DefinabilityStrategyFactory
from src.modules.definability.application.service.oracle import BruteForceOracle, OracleResult
from src.modules.definability.application.service.synthesis import FormulaSynthesizer
from src.modules.definability.domain.entity.query import DefinabilityQuery, Member
from src.modules.definability.domain.entity.type_space import TargetType, TypeSpace
from src.modules.definability.domain.entity.verdict import Counterexample, Verdict
from src.modules.definability.domain.enums import VerdictKind
from src.modules.definability.domain.errors import PreconditionFailed, QueryMismatch
from src.modules.formulas.application.service.formula import FormulaService
from src.modules.formulas.application.service.model_checker import compile_formula
from src.modules.formulas.domain.entity.formula import (
    Eq,
    Exists,
    Formula,
    Implies,
    Not,
    Rel,
    conj,
    disj,
    exists,
    free_variables,
    substitute_formula,
)
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.enums import SyntacticClass
from src.modules.subpowers.application.service.subpowers import SubpowerService
from src.modules.subpowers.domain.entity.closure import PointedClosure
from src.modules.subpowers.domain.entity.hom_map import HomMap
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind

MemberMap = tuple[int, int, HomMap]

TRANSLATED = "translated"

# Classes whose formulas all hold in a one-element structure with every relation holding.
TRIVIALLY_SATISFIED = (
    SyntacticClass.ATOMIC_CONJ,
    SyntacticClass.POSITIVE_OPEN,
    SyntacticClass.OPEN_STRICT_HORN,
    SyntacticClass.PP,
    SyntacticClass.EXIST_POSITIVE,
)

EMPTY_POSITIVE_REASON = "positive classes define only nonempty-consistent relations"


class DefinabilityService(BaseService):
    NAME = "definability"
    SYNTHESIS_ERROR = (SynthesisError, "Synthesized {cls} witness fails on {target}: {formula}")
    PRECONDITION_ERROR = (
        PreconditionFailed,
        "{assumption} was asserted, yet no primitive positive witness exists for {target}",
    )
    UNSUPPORTED_ERROR = (NotSupportedError, "{cls} is not an existential class")
    CLOSED_FORMULA_ERROR = (QueryMismatch, "Cannot translate a formula without free variables")

    def __init__(
        self,
        settings: AppConfig,
        subpowers: SubpowerService,
        clone: CloneService,
        formulas: FormulaService,
    ):
        self.settings = settings
        self.subpowers = subpowers
        self.clone = clone
        self.formulas = formulas
        self._cached_space: tuple[tuple, TypeSpace] | None = None

    def check(self, query: DefinabilityQuery) -> Verdict:
        strategy = DefinabilityStrategyFactory.create_strategy(query.syntactic_class)
        logger.info(
            "Check[{cls}] {target} over {members}",
            cls=query.syntactic_class.value,
            target=str(query.target),
            members=[member.name for member in query.members],
        )
        try:
            verdict = strategy.check(self, query)
        except ResourceExceeded as error:
            return Verdict.exceeded(query, error.report)
        logger.info("Check[{cls}] -> {kind}", cls=query.syntactic_class.value, kind=verdict.kind.value)
        return verdict

    def verify(self, query: DefinabilityQuery, verdict: Verdict) -> bool:
        match verdict.kind:
            case VerdictKind.DEFINABLE:
                return self._sound(query, verdict.witness)
            case VerdictKind.NOT_DEFINABLE:
                return verdict.counterexample is None or verdict.counterexample.verify(query)
        return True

    # open classes

    def check_open(self, query: DefinabilityQuery) -> Verdict:
        if query.empty:
            return self._empty_target(query)
        space = self._space(query)
        for kind in space:
            if kind.mixed:
                return Verdict.not_definable(
                    query, self._pointed_counterexample(query, kind.inside[0], kind.outside[0], MapKind.ISOMORPHISM)
                )
        return self._definable(query, self.synthesize_diagram_formula(query, SyntacticClass.OPEN))

    def check_positive_open(self, query: DefinabilityQuery) -> Verdict:
        if query.empty:
            return self._empty_target(query)
        space = self._space(query)
        for target in space.out_types:
            for source in space.in_types:
                if space.maps(source, target):
                    return Verdict.not_definable(
                        query, self._pointed_counterexample(query, source.inside[0], target.outside[0], MapKind.HOM)
                    )
        return self._definable(query, self.synthesize_diagram_formula(query, SyntacticClass.POSITIVE_OPEN))

    def check_open_horn(self, query: DefinabilityQuery) -> Verdict:
        if query.empty:
            return self._empty_target(query)
        strict = query.syntactic_class == SyntacticClass.OPEN_STRICT_HORN
        space = self._space(query)
        for kind in space:
            if kind.mixed:
                return Verdict.not_definable(
                    query, self._pointed_counterexample(query, kind.inside[0], kind.outside[0], MapKind.ISOMORPHISM)
                )
        products: dict[tuple[int, ...], PointedClosure] = {}
        clauses: list[Formula] = []
        for target in space.out_types:
            l, point = target.outside[0]
            premise = conj(target.closure.positive_diagram())
            factors = space.sources(t for t in space.in_types if space.maps(target, t))
            if not factors and not strict:
                clauses.append(Not(premise))
                continue
            if not factors:
                closure = PointedClosure(trivial_structure(query.language), (0,) * query.width, query.variables)
            else:
                key = tuple(t.position for t in factors)
                if key not in products:
                    products[key] = self._product_closure(query, factors)
                closure = products[key]
            violation = closure.find_violation(query.reducts[l], point)
            if violation is None:
                return Verdict.not_definable(
                    query, self._product_counterexample(query, closure, factors, target, MapKind.ISOMORPHISM)
                )
            clauses.append(Implies(premise, violation.atom))
        witness = FormulaSynthesizer(space).horn(conj(clauses), strict)
        return self._definable(query, witness)

    def check_atomic_conj(self, query: DefinabilityQuery) -> Verdict:
        if query.empty:
            return self._empty_target(query)
        space = self._space(query)
        factors = space.sources(space.in_types)
        closure = self._product_closure(query, factors)
        conflicts: dict[Formula, None] = {}
        for target in space.out_types:
            l, point = target.outside[0]
            violation = closure.find_violation(query.reducts[l], point)
            if violation is None:
                return Verdict.not_definable(
                    query, self._product_counterexample(query, closure, factors, target, MapKind.HOM)
                )
            conflicts.setdefault(violation.atom, None)
        candidates = [conj(t.closure.positive_diagram()) for t in factors] + [conj(conflicts)]
        witness = FormulaSynthesizer(space).single_disjunct(disj(candidates))
        if witness is None:
            self._raise(self.SYNTHESIS_ERROR, cls="atomic-conj", target=str(query.target), formula=candidates[-1])
        return self._definable(query, witness)

    def synthesize_diagram_formula(self, query: DefinabilityQuery, kind: SyntacticClass) -> Formula:
        positive = kind == SyntacticClass.POSITIVE_OPEN
        if query.empty:
            return Not(Eq(query.variables[0], query.variables[0]))
        formula = FormulaSynthesizer(self._space(query)).diagram_formula(positive)
        self._require(query.with_class(kind), formula)
        return formula

    def horn_extract(self, formula: Formula, query: DefinabilityQuery) -> Formula:
        """
        A Horn (or, for atomic conjunctions, single-disjunct) formula over the
        atoms of ``formula``, which must already define the target.
        """
        cls = query.syntactic_class
        if cls not in (SyntacticClass.ATOMIC_CONJ, SyntacticClass.OPEN_STRICT_HORN):
            cls = SyntacticClass.OPEN_HORN
        target_query = query.with_class(cls)
        if self._sound(target_query, formula):
            return formula
        if not self.formulas.defines(query.members, formula, query.target):
            self._raise(self.SYNTHESIS_ERROR, cls=cls.value, target=str(query.target), formula=formula)
        synthesizer = FormulaSynthesizer(self._space(query))
        if cls == SyntacticClass.ATOMIC_CONJ:
            result = synthesizer.single_disjunct(formula)
            if result is None:
                self._raise(self.SYNTHESIS_ERROR, cls=cls.value, target=str(query.target), formula=formula)
        else:
            result = synthesizer.horn(formula, strict=cls == SyntacticClass.OPEN_STRICT_HORN)
        self._require(target_query, result)
        return result

    # existential classes

    def check_existential(self, query: DefinabilityQuery) -> Verdict:
        if query.empty:
            return self._empty_target(query)
        match query.syntactic_class:
            case SyntacticClass.EXISTENTIAL:
                return self._check_member_maps(query, MapKind.EMBEDDING)
            case SyntacticClass.EXIST_POSITIVE:
                return self._check_member_maps(query, MapKind.HOM)
            case SyntacticClass.PP:
                return self._check_primitive_positive(query)
            case SyntacticClass.EXIST_HORN:
                return self._check_existential_horn(query)
        self._raise(self.UNSUPPORTED_ERROR, cls=query.syntactic_class.value)

    def _check_member_maps(self, query: DefinabilityQuery, kind: MapKind) -> Verdict:
        failure = self._preservation_failure(query, self._member_maps(query, kind))
        if failure is not None:
            return Verdict.not_definable(query, failure)
        if kind == MapKind.HOM:
            open_verdict = self.check_positive_open(query.with_class(SyntacticClass.POSITIVE_OPEN))
        else:
            open_verdict = self.check_open(query.with_class(SyntacticClass.OPEN))
        if open_verdict.is_definable:
            return self._definable(query, open_verdict.witness)
        return self._definable(query, self.existential_diagram_formula(query, query.syntactic_class))

    def _check_primitive_positive(self, query: DefinabilityQuery) -> Verdict:
        assumption = "assume_cd" if query.assume_cd else "assume_rs" if query.assume_rs else None
        if assumption is not None:
            kind = MapKind.HOM if query.assume_cd else MapKind.ISOMORPHISM
            failure = self.commutes_with_endomorphisms(query, kind)
        else:
            failure = self._preservation_failure(query, self._member_maps(query, MapKind.HOM))
        if failure is not None:
            return Verdict.not_definable(query, failure)
        conjunction = self.check_atomic_conj(query.with_class(SyntacticClass.ATOMIC_CONJ))
        if conjunction.is_definable:
            return self._definable(query, conjunction.witness)
        translated = self._translated_existential(query)
        if translated is not None:
            return self._definable(query, translated)
        if assumption is not None:
            self._raise(self.PRECONDITION_ERROR, assumption=assumption, target=str(query.target))
        failure = self._product_map_failure(query, MapKind.HOM)
        if failure is not None:
            return Verdict.not_definable(query, failure)
        raise self._exceed("MAX_POLY_ARITY", query.max_poly_arity, query.max_poly_arity, cls="pp")

    def _check_existential_horn(self, query: DefinabilityQuery) -> Verdict:
        failure = self._preservation_failure(query, self._member_maps(query, MapKind.EMBEDDING))
        if failure is not None:
            return Verdict.not_definable(query, failure)
        horn = self.check_open_horn(query.with_class(SyntacticClass.OPEN_HORN))
        if horn.is_definable:
            return self._definable(query, horn.witness)
        try:
            pp = self._check_primitive_positive(query.with_class(SyntacticClass.PP))
        except (ResourceExceeded, SynthesisError):
            pp = None
        if pp is not None and pp.is_definable:
            return self._definable(query, pp.witness)
        failure = self._product_map_failure(query, MapKind.EMBEDDING)
        if failure is not None:
            return Verdict.not_definable(query, failure)
        raise self._exceed("MAX_POLY_ARITY", query.max_poly_arity, query.max_poly_arity, cls="exist-horn")

    def existential_diagram_formula(self, query: DefinabilityQuery, kind: SyntacticClass) -> Formula:
        """
        A disjunction, under one block of existential quantifiers, of the
        diagrams of whole members seen from target tuples.

        Each target tuple is completed by extra generators until it generates
        its member; a tuple elsewhere satisfies that disjunct exactly when a map
        of the member sends the target tuple onto it. Tuples already reached
        by an earlier disjunct get none of their own. Primitive positive and
        existential Horn requests additionally translate the body into a
        conjunction of atoms.
        """
        positive = kind != SyntacticClass.EXISTENTIAL
        maps = self._member_maps(query, MapKind.HOM if positive else MapKind.EMBEDDING)
        covered: set[Member] = set()
        bodies: list[Formula] = []
        width = 0
        for k, point in query.inside:
            if (k, point) in covered:
                continue
            extras = self._extra_generators(query.reducts[k], point)
            limit = self.settings.MAX_EXISTENTIAL_VARIABLES
            if len(extras) > limit:
                raise self._exceed("MAX_EXISTENTIAL_VARIABLES", limit, len(extras), member=query.members[k].name)
            bound = tuple(u(i + 1) for i in range(len(extras)))
            closure = PointedClosure(query.reducts[k], (*point, *extras), variables=(*query.variables, *bound))
            bodies.append(conj(closure.positive_diagram() if positive else closure.open_diagram()))
            width = max(width, len(extras))
            for source, target, sigma in maps:
                if source == k:
                    covered.add((target, sigma.image(point)))
        formula = exists((u(i + 1) for i in range(width)), disj(bodies))
        logger.debug("ExistentialDiagram[{cls}] {count} disjuncts", cls=kind.value, count=len(bodies))
        if kind in (SyntacticClass.PP, SyntacticClass.EXIST_HORN):
            formula = self._translate_body(query, formula)
            if formula is None:
                self._raise(self.SYNTHESIS_ERROR, cls=kind.value, target=str(query.target), formula="(none)")
        self._require(query.with_class(kind), formula)
        return formula

    def _translated_existential(self, query: DefinabilityQuery) -> Formula | None:
        try:
            positive = self.existential_diagram_formula(query, SyntacticClass.EXIST_POSITIVE)
        except (ResourceExceeded, SynthesisError):
            return None
        formula = self._translate_body(query, positive)
        if formula is not None and self._sound(query.with_class(SyntacticClass.PP), formula):
            return formula
        return None

    def _translate_body(self, query: DefinabilityQuery, formula: Formula) -> Formula | None:
        bound, body = (formula.variables, formula.body) if isinstance(formula, Exists) else ((), formula)
        verdict = self.translate_to_equations(query.members, body, query.language, (*query.variables, *bound))
        if not verdict.is_definable:
            return None
        return exists(bound, verdict.witness)

    def translate_to_equations(
        self,
        members: Sequence[FiniteStructure],
        formula: Formula,
        language: Signature,
        variables: Sequence | None = None,
    ) -> Verdict:
        """
        An equivalent conjunction of atoms over ``members`` for an open
        formula, or the counterexample showing there is none.
        """
        variables = tuple(variables) if variables is not None else free_variables(formula)
        if not variables:
            self._raise(self.CLOSED_FORMULA_ERROR)
        renaming = {v: x(i + 1) for i, v in enumerate(variables)}
        renamed = substitute_formula(formula, renaming)
        expanded = []
        for member in members:
            reduct = member.reduct(language)
            predicate = compile_formula(reduct, renamed)
            names = [f"x{i + 1}" for i in range(len(variables))]
            rows = [p for p in cartesian(reduct.universe, repeat=len(variables)) if predicate(dict(zip(names, p)))]
            expanded.append(reduct.with_relation(TRANSLATED, len(variables), rows))
        query = DefinabilityQuery(
            members=tuple(expanded),
            language=language,
            target=Target.relation(TRANSLATED, len(variables)),
            syntactic_class=SyntacticClass.ATOMIC_CONJ,
        )
        verdict = self.check(query)
        if verdict.is_definable:
            back = {x(i + 1): v for i, v in enumerate(variables)}
            verdict = replace(verdict, witness=substitute_formula(verdict.witness, back))
        return verdict

    def commutes_with_endomorphisms(
        self, query: DefinabilityQuery, kind: MapKind = MapKind.HOM
    ) -> Counterexample | None:
        """The first endomorphism (or automorphism) of a member that moves a target tuple outside the target."""
        maps = []
        for k, reduct in enumerate(query.reducts):
            full = Subuniverse.full(reduct)
            maps.extend((k, k, sigma) for sigma in self.subpowers.find_maps(full, full, kind))
        return self._preservation_failure(query, maps)

    def oracle_search(self, query: DefinabilityQuery, depth: int | None = None) -> OracleResult:
        depth = depth if depth is not None else query.oracle_depth
        return BruteForceOracle(self.clone).search(query, depth)

    # helpers

    def _space(self, query: DefinabilityQuery) -> TypeSpace:
        key = (tuple(id(member) for member in query.members), query.language, query.target)
        if self._cached_space is None or self._cached_space[0] != key:
            self._cached_space = key, TypeSpace(query, limit=self.settings.MAX_CLOSURE_SIZE)
        return self._cached_space[1]

    def _sound(self, query: DefinabilityQuery, formula: Formula | None) -> bool:
        if formula is None or query.syntactic_class not in self.formulas.classify(formula):
            return False
        return self.formulas.defines(query.members, formula, query.target)

    def _require(self, query: DefinabilityQuery, formula: Formula):
        if not self._sound(query, formula):
            self._raise(
                self.SYNTHESIS_ERROR,
                cls=query.syntactic_class.value,
                target=str(query.target),
                formula=self.formulas.print(formula),
            )

    def _definable(self, query: DefinabilityQuery, formula: Formula) -> Verdict:
        self._require(query, formula)
        return Verdict.definable(query, formula)

    def _empty_target(self, query: DefinabilityQuery) -> Verdict:
        first = query.variables[0]
        if query.syntactic_class not in TRIVIALLY_SATISFIED:
            return self._definable(query, Not(Eq(first, first)))
        atoms: list[Formula] = [Eq(v, first) for v in query.variables[1:]]
        atoms += [Eq(App(op.name), first) for op in query.language.constants]
        atoms += [Rel(rel.name, (first,) * rel.arity) for rel in query.language.relations]
        formula = conj(atoms)
        if self.formulas.defines(query.members, formula, query.target):
            return self._definable(query, formula)
        return Verdict.not_definable(query, reason=EMPTY_POSITIVE_REASON)

    def _pointed_counterexample(self, query: DefinabilityQuery, source: Member, target: Member, kind: MapKind):
        (k, point), (l, image) = source, target
        closure = PointedClosure(query.reducts[k], point)
        values = closure.replay(query.reducts[l], image)
        sigma = HomMap(
            source=Subuniverse.create(query.reducts[k], closure.elements, generators=point),
            target=Subuniverse.create(query.reducts[l], values),
            mapping=tuple(sorted(zip(closure.elements, values))),
            kind=kind,
        )
        return Counterexample(sigma=sigma, point=point, factors=(k,), columns=(point,), target_member=l)

    def _product_closure(self, query: DefinabilityQuery, factors: Sequence[TargetType]) -> PointedClosure:
        if len(factors) > query.max_product_coords:
            raise self._exceed("MAX_PRODUCT_COORDS", query.max_product_coords, len(factors))
        if not factors:
            return PointedClosure(trivial_structure(query.language), (0,) * query.width, query.variables)
        frame = ProductFrame(tuple(query.reducts[t.inside[0][0]] for t in factors))
        generators = [tuple(t.inside[0][1][j] for t in factors) for j in range(query.width)]
        return PointedClosure(frame, generators, variables=query.variables, limit=self.settings.MAX_CLOSURE_SIZE)

    def _product_counterexample(
        self,
        query: DefinabilityQuery,
        closure: PointedClosure,
        factors: Sequence[TargetType],
        target: TargetType,
        kind: MapKind,
    ) -> Counterexample:
        l, image = target.outside[0]
        names = " x ".join(query.members[t.inside[0][0]].name for t in factors) or "1"
        source = closure.induced(name=f"Sg <= {names}")
        values = closure.replay(query.reducts[l], image)
        sigma = HomMap(
            source=Subuniverse.full(source),
            target=Subuniverse.create(query.reducts[l], values),
            mapping=tuple(enumerate(values)),
            kind=kind,
        )
        return Counterexample(
            sigma=sigma,
            point=tuple(closure.aliases),
            factors=tuple(t.inside[0][0] for t in factors),
            columns=tuple(t.inside[0][1] for t in factors),
            target_member=l,
        )

    def _member_maps(self, query: DefinabilityQuery, kind: MapKind) -> list[MemberMap]:
        maps: list[MemberMap] = []
        for k, source in enumerate(query.reducts):
            for l, target in enumerate(query.reducts):
                found = self.subpowers.find_maps(Subuniverse.full(source), Subuniverse.full(target), kind)
                maps.extend((k, l, sigma) for sigma in found)
        return maps

    @staticmethod
    def _preservation_failure(query: DefinabilityQuery, maps: Sequence[MemberMap]) -> Counterexample | None:
        for k, l, sigma in maps:
            for member, point in query.inside:
                if member == k and not query.holds(l, sigma.image(point)):
                    return Counterexample(sigma=sigma, point=point, factors=(k,), columns=(point,), target_member=l)
        return None

    def _product_map_failure(self, query: DefinabilityQuery, kind: MapKind) -> Counterexample | None:
        """Maps from products of up to ``max_poly_arity`` members into members that break the target."""
        limit = self.settings.MAX_PRODUCT_SIZE
        inside = {k: [point for member, point in query.inside if member == k] for k in range(len(query.members))}
        for arity in range(2, query.max_poly_arity + 1):
            for combo in combinations_with_replacement(range(len(query.members)), arity):
                size = prod(query.reducts[k].size for k in combo)
                if size > limit or any(not inside[k] for k in combo):
                    continue
                if kind != MapKind.HOM and size > max(r.size for r in query.reducts):
                    continue
                frame = ProductFrame(tuple(query.reducts[k] for k in combo))
                product = frame.materialize()
                for l, target in enumerate(query.reducts):
                    for sigma in self.subpowers.find_maps(Subuniverse.full(product), Subuniverse.full(target), kind):
                        for columns in cartesian(*(inside[k] for k in combo)):
                            point = tuple(
                                frame.encode([column[j] for column in columns]) for j in range(query.width)
                            )
                            if not query.holds(l, sigma.image(point)):
                                return Counterexample(
                                    sigma=sigma, point=point, factors=combo, columns=columns, target_member=l
                                )
        return None

    @staticmethod
    def _extra_generators(structure: FiniteStructure, point: tuple[int, ...]) -> tuple[int, ...]:
        extras: list[int] = []
        closure = PointedClosure(structure, point)
        for element in structure.universe:
            if element not in closure:
                extras.append(element)
                closure = PointedClosure(structure, (*point, *extras))
        return tuple(extras)
