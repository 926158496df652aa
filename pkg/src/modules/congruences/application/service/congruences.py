from itertools import combinations, combinations_with_replacement
from itertools import product as cartesian
from typing import Iterable, Sequence

from loguru import logger

from src.config.config import AppConfig
from src.core.app.service import BaseService
from src.core.domain.errors import NotSupportedError, ResourceExceeded, SynthesisError
from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.congruences.domain.entity.congruence import Congruence, DisjointSets
from src.modules.congruences.domain.entity.context import (
    CepFailure,
    FraserHornFailure,
    PropertyReport,
    RelCongruenceContext,
)
from src.modules.congruences.domain.errors import NotInQuasivariety, PairOutOfRange
from src.modules.definability.application.service.definability import DefinabilityService
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.enums import VerdictKind
from src.modules.definability.domain.errors import PreconditionFailed
from src.modules.formulas.application.service.formula import FormulaService
from src.modules.formulas.domain.entity.formula import Formula
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.enums import SyntacticClass
from src.modules.subpowers.application.service.subpowers import SubpowerService
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind

CONGRUENCE_RELATION = "theta"

CEP = "relative congruence extension property"
FHP = "Fraser-Horn property"

DPC_REQUIREMENTS = {
    SyntacticClass.OPEN: (CEP,),
    SyntacticClass.POSITIVE_OPEN: (CEP,),
    SyntacticClass.ATOMIC_CONJ: (CEP, FHP),
    SyntacticClass.PP: (FHP,),
}


def kernel(values: Sequence[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    return tuple(first.setdefault(value, a) for a, value in enumerate(values))


class CongruenceService(BaseService):
    NAME = "congruences"
    PAIR_ERROR = (PairOutOfRange, "Pair ({a}, {b}) is outside {name}")
    MEMBERSHIP_ERROR = (NotInQuasivariety, "{name} is not in the quasivariety generated by {members}")
    PRECONDITION_ERROR = (PreconditionFailed, "The {property} fails for {members}:\n{failure}")
    CLASS_ERROR = (NotSupportedError, "No congruence formula synthesis for {cls}")
    SYNTHESIS_ERROR = (SynthesisError, "No {cls} formula defines relative principal congruences over {members}")

    def __init__(
        self,
        settings: AppConfig,
        subpowers: SubpowerService,
        definability: DefinabilityService,
        formulas: FormulaService,
    ):
        self.settings = settings
        self.subpowers = subpowers
        self.definability = definability
        self.formulas = formulas

    # congruences of one structure

    def generated_congruence(self, structure: FiniteStructure, pairs: Iterable[tuple[int, int]]) -> Congruence:
        """
        Least congruence containing ``pairs``.

        Each newly merged pair is pushed through every basic translation
        ``g(..., _, ...)``; union-find takes care of transitivity.
        """
        sets = DisjointSets(structure.size)
        queue: list[tuple[int, int]] = []
        for a, b in pairs:
            if not (0 <= a < structure.size and 0 <= b < structure.size):
                self._raise(self.PAIR_ERROR, a=a, b=b, name=structure.name)
            if sets.union(a, b):
                queue.append((a, b))
        functions = structure.signature.functions
        while queue:
            a, b = queue.pop()
            for op in functions:
                for position in range(op.arity):
                    for rest in cartesian(structure.universe, repeat=op.arity - 1):
                        left = structure.apply(op.name, (*rest[:position], a, *rest[position:]))
                        right = structure.apply(op.name, (*rest[:position], b, *rest[position:]))
                        if sets.union(left, right):
                            queue.append((left, right))
        return Congruence(structure, sets.labels())

    def principal_congruence(self, structure: FiniteStructure, a: int, b: int) -> Congruence:
        return self.generated_congruence(structure, [(a, b)])

    def congruence_lattice(self, structure: FiniteStructure, limit: int | None = None) -> list[Congruence]:
        """All congruences from the identity up to the total one, closed under joins of principal ones."""
        limit = limit or self.settings.LATTICE_MAX_UNIVERSE
        if structure.size > limit:
            raise self._exceed("LATTICE_MAX_UNIVERSE", limit, structure.size, structure=structure.name)
        principals = {
            self.principal_congruence(structure, a, b) for a, b in combinations(structure.universe, 2)
        }
        found = {Congruence.identity(structure), *principals}
        frontier = list(found)
        while frontier:
            fresh = []
            for theta in frontier:
                for other in principals:
                    joined = theta.join(other)
                    if joined not in found:
                        found.add(joined)
                        fresh.append(joined)
            frontier = fresh
        lattice = sorted(found, key=lambda theta: (-len(theta.blocks), theta.labels))
        logger.info("Con[{name}] {count} congruences", name=structure.name, count=len(lattice))
        return lattice

    @staticmethod
    def quotient(theta: Congruence) -> FiniteStructure:
        return theta.quotient()

    @staticmethod
    def meet(left: Congruence, right: Congruence) -> Congruence:
        return left.meet(right)

    @staticmethod
    def join(left: Congruence, right: Congruence) -> Congruence:
        return left.join(right)

    # relative congruences

    def _kernels(self, ctx: RelCongruenceContext, structure: FiniteStructure) -> tuple[tuple[int, ...], ...]:
        key = structure.fingerprint
        if key not in ctx.kernels:
            kernels = set()
            source = Subuniverse.full(structure)
            for member in ctx.members:
                for sigma in self.subpowers.find_maps(source, Subuniverse.full(member), MapKind.HOM):
                    kernels.add(kernel([sigma(a) for a in structure.universe]))
            ctx.kernels[key] = tuple(sorted(kernels))
        return ctx.kernels[key]

    def quasivariety_membership(self, ctx: RelCongruenceContext, structure: FiniteStructure) -> bool:
        """Whether the homomorphisms into the members separate every pair of elements."""
        separated = Congruence.total(structure)
        for labels in self._kernels(ctx, structure):
            separated = separated.meet(Congruence(structure, labels))
        logger.debug(
            "Q({members}) membership of {name}: {result}",
            members=ctx.names,
            name=structure.name,
            result=separated.is_identity,
        )
        return separated.is_identity

    def relative_congruences(self, ctx: RelCongruenceContext, structure: FiniteStructure) -> list[Congruence]:
        return [
            theta
            for theta in self.congruence_lattice(structure)
            if self.quasivariety_membership(ctx, theta.quotient())
        ]

    def relative_principal_congruence(
        self, ctx: RelCongruenceContext, structure: FiniteStructure, a: int, b: int
    ) -> Congruence:
        """
        Least congruence containing ``(a, b)`` whose quotient lies in the
        quasivariety, read as the meet of the hom kernels that identify the pair.
        """
        if not (0 <= a < structure.size and 0 <= b < structure.size):
            self._raise(self.PAIR_ERROR, a=a, b=b, name=structure.name)
        if not self.quasivariety_membership(ctx, structure):
            self._raise(self.MEMBERSHIP_ERROR, name=structure.name, members=ctx.names)
        theta = Congruence.total(structure)
        for labels in self._kernels(ctx, structure):
            if labels[a] == labels[b]:
                theta = theta.meet(Congruence(structure, labels))
        return theta

    # properties of the generated class

    def check_cep(self, structures: Sequence[FiniteStructure]) -> PropertyReport:
        ctx = RelCongruenceContext.create(structures)
        checked = 0
        for member in ctx.members:
            for sub in self.subpowers.all_subuniverses(member):
                if sub.is_full or len(sub) < 2:
                    continue
                inner_host = sub.induced()
                elements = sub.elements
                for i, j in combinations(range(len(elements)), 2):
                    checked += 1
                    inner = self.relative_principal_congruence(ctx, inner_host, i, j)
                    outer = self.relative_principal_congruence(ctx, member, elements[i], elements[j])
                    if outer.restrict(elements) != inner.blocks:
                        failure = CepFailure(
                            member=member.name,
                            subuniverse=tuple(sub.labels),
                            pair=(member.display(elements[i]), member.display(elements[j])),
                            inner=inner,
                            outer_trace=tuple(
                                tuple(member.display(elements[p]) for p in block)
                                for block in outer.restrict(elements)
                            ),
                        )
                        logger.info("CEP fails on {member}: {sub}", member=member.name, sub=sub.labels)
                        return PropertyReport(CEP, False, failure, checked)
        return PropertyReport(CEP, True, checked=checked)

    def _product_congruence(self, frame: ProductFrame, product: FiniteStructure, left: Congruence, right: Congruence):
        labels = tuple(
            frame.encode((left.labels[x], right.labels[y])) for x, y in map(frame.decode, product.universe)
        )
        return Congruence(product, labels)

    def check_fraser_horn(self, structures: Sequence[FiniteStructure]) -> PropertyReport:
        """
        Compares every principal congruence of each binary product of members
        with the product of the principal congruences of its coordinates.
        """
        members = RelCongruenceContext.create(structures).members
        limit = self.settings.MAX_PRODUCT_SIZE
        checked = 0
        for left, right in combinations_with_replacement(members, 2):
            if left.size * right.size > limit:
                raise self._exceed("MAX_PRODUCT_SIZE", limit, left.size * right.size, factors=[left.name, right.name])
            frame = ProductFrame((left, right))
            product = frame.materialize()
            for p, q in combinations(product.universe, 2):
                checked += 1
                (a1, a2), (b1, b2) = frame.decode(p), frame.decode(q)
                expected = self._product_congruence(
                    frame,
                    product,
                    self.principal_congruence(left, a1, b1),
                    self.principal_congruence(right, a2, b2),
                )
                theta = self.principal_congruence(product, p, q)
                if theta.labels != expected.labels:
                    failure = FraserHornFailure(
                        factors=(left.name, right.name),
                        pair=(product.display(p), product.display(q)),
                        product=theta,
                        expected=expected,
                    )
                    return PropertyReport(FHP, False, failure, checked)
        return PropertyReport(FHP, True, checked=checked)

    def find_skew_congruences(self, left: FiniteStructure, right: FiniteStructure) -> list[Congruence]:
        """Congruences of ``left x right`` that are not products of congruences of the factors."""
        limit = self.settings.LATTICE_MAX_PRODUCT
        frame = ProductFrame((left, right))
        product = frame.materialize()
        products = {
            self._product_congruence(frame, product, theta, psi).labels
            for theta in self.congruence_lattice(left, limit)
            for psi in self.congruence_lattice(right, limit)
        }
        return [theta for theta in self.congruence_lattice(product, limit) if theta.labels not in products]

    # formulas defining relative principal congruences

    def congruence_expansion(self, ctx: RelCongruenceContext, structure: FiniteStructure) -> FiniteStructure:
        """``structure`` with the relation {(a, b, c, d) : (c, d) in θ(a, b)} of relative principal congruences."""
        rows = []
        for a, b in cartesian(structure.universe, repeat=2):
            theta = self.relative_principal_congruence(ctx, structure, a, b)
            rows.extend((a, b, c, d) for c, d in sorted(theta.pairs))
        return structure.with_relation(CONGRUENCE_RELATION, 4, rows)

    def _binary_products(self, ctx: RelCongruenceContext) -> list[FiniteStructure]:
        limit = self.settings.LATTICE_MAX_PRODUCT
        return [
            ProductFrame((left, right)).materialize()
            for left, right in combinations_with_replacement(ctx.members, 2)
            if left.size * right.size <= limit
        ]

    def synthesize_dpc_formula(
        self, ctx: RelCongruenceContext, syntactic_class: SyntacticClass = SyntacticClass.POSITIVE_OPEN
    ) -> Formula:
        """
        A formula ``φ(x1, x2, x3, x4)`` saying ``(x3, x4)`` lies in the relative
        principal congruence generated by ``(x1, x2)``.

        The class-specific property is checked first. The search runs over the
        members together with their binary products, and the witness is
        re-checked on the same structures.
        """
        if syntactic_class not in DPC_REQUIREMENTS:
            self._raise(self.CLASS_ERROR, cls=syntactic_class.value)
        for requirement in DPC_REQUIREMENTS[syntactic_class]:
            report = self.check_cep(ctx.members) if requirement == CEP else self.check_fraser_horn(ctx.members)
            if not report.holds:
                self._raise(
                    self.PRECONDITION_ERROR, property=requirement, members=ctx.names, failure=report.failure.render()
                )
        structures = [*ctx.members, *self._binary_products(ctx)]
        query = DefinabilityQuery.create(
            [self.congruence_expansion(ctx, structure) for structure in structures],
            CONGRUENCE_RELATION,
            syntactic_class,
            settings=self.settings,
        )
        verdict = self.definability.check(query)
        if verdict.kind == VerdictKind.RESOURCE_EXCEEDED:
            raise ResourceExceeded("Congruence formula search hit a bound", report=verdict.report)
        if not verdict.is_definable:
            self._raise(self.SYNTHESIS_ERROR, cls=syntactic_class.value, members=ctx.names)
        self.verify_dpc_formula(ctx, verdict.witness)
        logger.info("DPC[{cls}] {formula}", cls=syntactic_class.value, formula=self.formulas.print(verdict.witness))
        return verdict.witness

    def verify_dpc_formula(self, ctx: RelCongruenceContext, formula: Formula):
        structures = [*ctx.members, *self._binary_products(ctx)]
        expanded = [self.congruence_expansion(ctx, structure) for structure in structures]
        if not self.formulas.defines(expanded, formula, Target.relation(CONGRUENCE_RELATION, 4)):
            self._raise(self.SYNTHESIS_ERROR, cls="verified", members=ctx.names)
