from typing import Iterable, Sequence

from loguru import logger

from src.core.domain.errors import SynthesisError
from src.modules.definability.domain.entity.type_space import TypeSpace
from src.modules.formulas.domain.entity.formula import (
    And,
    Eq,
    Formula,
    Implies,
    Not,
    Or,
    Rel,
    conj,
    disj,
    flatten,
    is_atom,
)


def atoms_of(formula: Formula) -> list[Formula]:
    """Distinct atoms of an open formula in order of first occurrence."""
    found: dict[Formula, None] = {}

    def walk(f: Formula):
        match f:
            case Eq() | Rel():
                found.setdefault(f, None)
            case Not(body=body):
                walk(body)
            case And(parts=parts) | Or(parts=parts):
                for part in parts:
                    walk(part)
            case Implies(premise=premise, conclusion=conclusion):
                walk(premise)
                walk(conclusion)
            case _:
                raise SynthesisError(f"Expected an open formula, got {type(f).__name__}")

    walk(formula)
    return list(found)


class FormulaSynthesizer:
    """
    Builds and shrinks open witnesses by scoring literals as bitmasks over
    the pointed types of a TypeSpace.
    """

    def __init__(self, space: TypeSpace):
        self.space = space
        self.full = (1 << len(space)) - 1
        self._masks: dict[Formula, int] = {}

    def mask(self, literal: Formula) -> int:
        if literal not in self._masks:
            if isinstance(literal, Not):
                self._masks[literal] = self.full ^ self.mask(literal.body)
            else:
                self._masks[literal] = self.space.mask(literal)
        return self._masks[literal]

    def conjunction_mask(self, literals: Iterable[Formula]) -> int:
        mask = self.full
        for literal in literals:
            mask &= self.mask(literal)
        return mask

    def shrink(self, literals: Sequence[Formula], forbidden: int) -> list[Formula]:
        """Greedily drop literals while the conjunction stays false on ``forbidden``."""
        kept = list(literals)
        position = 0
        while position < len(kept):
            trial = kept[:position] + kept[position + 1 :]
            if self.conjunction_mask(trial) & forbidden == 0:
                kept = trial
            else:
                position += 1
        return kept

    def cover(self, disjuncts: list[list[Formula]]) -> list[list[Formula]]:
        """Drop disjuncts whose target types are covered by the remaining ones."""
        wanted = self.space.in_mask
        kept = list(disjuncts)
        position = 0
        while position < len(kept):
            rest = 0
            for index, other in enumerate(kept):
                if index != position:
                    rest |= self.conjunction_mask(other)
            if wanted & ~rest == 0:
                kept.pop(position)
            else:
                position += 1
        return kept

    def diagram_formula(self, positive: bool) -> Formula:
        """
        A disjunction of diagrams of target types, shrunk conjunct by
        conjunct and then disjunct by disjunct.

        Positive diagrams only need the source types, since every other
        target type satisfies the positive diagram of a source mapping into it.
        """
        space = self.space
        if positive:
            chosen = space.sources(space.in_types)
            diagrams = [t.closure.positive_diagram() for t in chosen]
        else:
            chosen = space.in_types
            diagrams = [t.closure.open_diagram() for t in chosen]
        if not chosen:
            return Not(Eq(space.query.variables[0], space.query.variables[0]))
        shrunk = [self.shrink(diagram, space.out_mask) for diagram in diagrams]
        kept = self.cover(shrunk)
        logger.debug(
            "Diagram[{kind}] {types} target types, {kept} disjuncts kept",
            kind="positive" if positive else "open",
            types=len(chosen),
            kept=len(kept),
        )
        return disj(conj(d) for d in kept)

    def horn(self, formula: Formula, strict: bool) -> Formula:
        """
        Rewrite an open formula defining the target as a conjunction of Horn
        clauses over the same atoms.

        Every non-target type gets the clause "its true atoms imply one of its
        false atoms". Clauses are independent of one another, so the first
        conclusion that holds on the target types satisfying the premise is
        as good as any other choice.
        """
        space = self.space
        atoms = atoms_of(formula)
        masks = [self.mask(atom) for atom in atoms]
        clauses: list[tuple[list[int], int | None]] = []
        seen: set[tuple[bool, ...]] = set()
        for kind in space.out_types:
            profile = tuple(bool(mask & kind.bit) for mask in masks)
            if profile in seen:
                continue
            seen.add(profile)
            premise = [i for i, true in enumerate(profile) if true]
            support = self._premise_mask(masks, premise) & space.in_mask
            pick = next((i for i, true in enumerate(profile) if not true and support & ~masks[i] == 0), None)
            if pick is None and (strict or support):
                raise SynthesisError(f"No Horn clause separates a non-target type using the atoms of {formula}")
            clauses.append((premise, pick))
        clauses = [(self._shrink_premise(masks, premise, pick), pick) for premise, pick in clauses]
        clauses = self._drop_clauses(masks, clauses)
        parts = []
        for premise, pick in clauses:
            body = conj(atoms[i] for i in premise)
            if pick is None:
                parts.append(Not(body))
            elif premise:
                parts.append(Implies(body, atoms[pick]))
            else:
                parts.append(atoms[pick])
        return conj(parts) if parts else Eq(space.query.variables[0], space.query.variables[0])

    def _premise_mask(self, masks: list[int], premise: Iterable[int]) -> int:
        mask = self.full
        for i in premise:
            mask &= masks[i]
        return mask

    def _shrink_premise(self, masks: list[int], premise: list[int], pick: int | None) -> list[int]:
        allowed = masks[pick] if pick is not None else 0
        kept = list(premise)
        position = 0
        while position < len(kept):
            trial = kept[:position] + kept[position + 1 :]
            if self._premise_mask(masks, trial) & self.space.in_mask & ~allowed == 0:
                kept = trial
            else:
                position += 1
        return kept

    def _drop_clauses(self, masks: list[int], clauses: list[tuple[list[int], int | None]]):
        def excluded(clause) -> int:
            premise, pick = clause
            return self._premise_mask(masks, premise) & ~(masks[pick] if pick is not None else 0) & self.full

        wanted = self.space.out_mask
        kept = list(clauses)
        position = 0
        while position < len(kept):
            rest = 0
            for index, other in enumerate(kept):
                if index != position:
                    rest |= excluded(other)
            if wanted & ~rest == 0:
                kept.pop(position)
            else:
                position += 1
        return kept

    def single_disjunct(self, formula: Formula) -> Formula | None:
        """The first disjunct made of atoms that alone separates target and non-target types."""
        formula = flatten(formula)
        parts = formula.parts if isinstance(formula, Or) else (formula,)
        for part in parts:
            literals = list(part.parts) if isinstance(part, And) else [part]
            if not all(is_atom(literal) for literal in literals):
                continue
            mask = self.conjunction_mask(literals)
            if mask & self.space.out_mask == 0 and self.space.in_mask & ~mask == 0:
                return conj(self.shrink(literals, self.space.out_mask))
        return None
