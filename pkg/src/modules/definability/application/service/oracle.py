from dataclasses import dataclass
from itertools import combinations
from itertools import product as cartesian

from loguru import logger

from src.core.domain.entity import ValueObject
from src.core.domain.errors import NotSupportedError
from src.modules.clone.application.service.clone import CloneService
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.formulas.domain.entity.formula import FALSE, TRUE, Eq, Formula, Implies, Not, Rel, conj, disj
from src.modules.formulas.domain.enums import SyntacticClass

OPEN_CLASSES = (
    SyntacticClass.ATOMIC_CONJ,
    SyntacticClass.POSITIVE_OPEN,
    SyntacticClass.OPEN_HORN,
    SyntacticClass.OPEN_STRICT_HORN,
    SyntacticClass.OPEN,
)


@dataclass(frozen=True)
class OracleResult(ValueObject):
    syntactic_class: SyntacticClass
    depth: int
    atoms: int
    found: bool
    witness: Formula | None = None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BruteForceOracle:
    """
    Exhaustive search over the formulas of an open class built from atoms of
    bounded term depth.

    Each target-width tuple gets the bitmask of atoms it satisfies. Whether
    some formula of the class separates the target then only depends on
    these profiles, so the search is exact for the given depth.
    """

    def __init__(self, clone: CloneService):
        self.clone = clone

    def search(self, query: DefinabilityQuery, depth: int) -> OracleResult:
        if query.syntactic_class not in OPEN_CLASSES:
            raise NotSupportedError(f"The oracle covers open classes only, not {query.syntactic_class.value}")
        atoms, profiles = self._profiles(query, depth)
        inside = {profile for profile, holds in profiles if holds}
        outside = {profile for profile, holds in profiles if not holds}
        witness = self._decide(query.syntactic_class, atoms, inside, outside)
        logger.info(
            "Oracle[{cls}, depth={depth}] {atoms} atoms -> {found}",
            cls=query.syntactic_class.value,
            depth=depth,
            atoms=len(atoms),
            found=witness is not None,
        )
        return OracleResult(query.syntactic_class, depth, len(atoms), witness is not None, witness)

    def _profiles(self, query: DefinabilityQuery, depth: int) -> tuple[list[Formula], list[tuple[int, bool]]]:
        table = self.clone.term_operations(query.reducts, query.width, depth_budget=depth, labels=query.variables)
        rows = table.rows
        terms = [table.witness(i) for i in range(len(rows))]
        atoms: list[Formula] = [TRUE]
        tests = [lambda c: True]
        for i, j in combinations(range(len(rows)), 2):
            atoms.append(Eq(terms[i], terms[j]))
            tests.append(lambda c, i=i, j=j: rows[i][c] == rows[j][c])
        for rel in query.language.relations:
            for args in cartesian(range(len(rows)), repeat=rel.arity):
                atoms.append(Rel(rel.name, tuple(terms[a] for a in args)))
                tests.append(
                    lambda c, name=rel.name, args=args: query.reducts[table.points[c][0]].holds(
                        name, [rows[a][c] for a in args]
                    )
                )
        profiles = []
        for c, (k, point) in enumerate(table.points):
            profile = sum(1 << a for a, test in enumerate(tests) if test(c))
            profiles.append((profile, query.holds(k, point)))
        return atoms, profiles

    @staticmethod
    def _decide(
        cls: SyntacticClass, atoms: list[Formula], inside: set[int], outside: set[int]
    ) -> Formula | None:
        def positive(profile: int) -> Formula:
            return conj(atoms[a] for a in _bits(profile))

        def full(profile: int) -> Formula:
            return conj(atoms[a] if profile >> a & 1 else Not(atoms[a]) for a in range(len(atoms)))

        if not inside:
            return FALSE if cls in (SyntacticClass.OPEN, SyntacticClass.OPEN_HORN) else None
        match cls:
            case SyntacticClass.OPEN:
                if inside & outside:
                    return None
                return disj(full(p) for p in sorted(inside)) if outside else TRUE
            case SyntacticClass.POSITIVE_OPEN:
                if any(p & q == p for p in inside for q in outside):
                    return None
                return disj(positive(p) for p in sorted(inside))
            case SyntacticClass.ATOMIC_CONJ:
                common = (1 << len(atoms)) - 1
                for p in inside:
                    common &= p
                if any(common & q == common for q in outside):
                    return None
                return positive(common)
        strict = cls == SyntacticClass.OPEN_STRICT_HORN
        clauses: list[Formula] = []
        everything = (1 << len(atoms)) - 1
        for q in sorted(outside):
            above = [p for p in inside if p & q == q]
            if not above and not strict:
                clauses.append(Not(positive(q)))
                continue
            common = everything
            for p in above:
                common &= p
            spare = common & ~q
            if not spare:
                return None
            head = next(_bits(spare))
            clauses.append(Implies(positive(q), atoms[head]))
        return conj(clauses) if clauses else TRUE

