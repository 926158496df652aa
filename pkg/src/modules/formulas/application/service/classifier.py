from src.modules.formulas.domain.entity.formula import (
    And,
    Exists,
    Formula,
    Implies,
    Not,
    Or,
    flatten,
    is_atom,
)
from src.modules.formulas.domain.enums import SyntacticClass


def _is_literal(formula: Formula) -> bool:
    return is_atom(formula) or (isinstance(formula, Not) and is_atom(formula.body))


def _atoms_or_conjunction(formula: Formula) -> bool:
    return is_atom(formula) or (isinstance(formula, And) and all(is_atom(part) for part in formula.parts))


def _is_open(formula: Formula) -> bool:
    match formula:
        case Not(body=body):
            return _is_open(body)
        case And(parts=parts) | Or(parts=parts):
            return all(_is_open(part) for part in parts)
        case Implies(premise=premise, conclusion=conclusion):
            return _is_open(premise) and _is_open(conclusion)
    return is_atom(formula)


def clause_positives(clause: Formula) -> int | None:
    """
    Number of non-negated atoms of a Horn-shaped clause, or None when the
    formula is not a clause.

    Accepted shapes: a literal, a disjunction of literals,
    ``(implies premise literal)`` with an atom or conjunction of atoms as
    premise, and ``(not (and atoms...))``.
    """
    if is_atom(clause):
        return 1
    match clause:
        case Not(body=body):
            if is_atom(body):
                return 0
            if isinstance(body, And) and all(is_atom(part) for part in body.parts):
                return 0
            return None
        case Or(parts=parts):
            if all(_is_literal(part) for part in parts):
                return sum(1 for part in parts if is_atom(part))
            return None
        case Implies(premise=premise, conclusion=conclusion):
            if _atoms_or_conjunction(premise) and _is_literal(conclusion):
                return 1 if is_atom(conclusion) else 0
            return None
    return None


def _horn_counts(formula: Formula) -> list[int | None]:
    clauses = formula.parts if isinstance(formula, And) else (formula,)
    return [clause_positives(clause) for clause in clauses]


def _open_classes(formula: Formula) -> set[SyntacticClass]:
    if not _is_open(formula):
        return set()
    found = {SyntacticClass.OPEN}
    if _atoms_or_conjunction(formula):
        found.add(SyntacticClass.ATOMIC_CONJ)
    if _atoms_or_conjunction(formula) or (
        isinstance(formula, Or) and all(_atoms_or_conjunction(part) for part in formula.parts)
    ):
        found.add(SyntacticClass.POSITIVE_OPEN)
    counts = _horn_counts(formula)
    if all(count is not None and count <= 1 for count in counts):
        found.add(SyntacticClass.OPEN_HORN)
        if all(count == 1 for count in counts):
            found.add(SyntacticClass.OPEN_STRICT_HORN)
    return found


def classify(formula: Formula) -> set[SyntacticClass]:
    formula = flatten(formula)
    body = formula
    while isinstance(body, Exists):
        body = body.body
    inner = _open_classes(body)
    found = {cls.existential for cls in inner}
    if body is formula:
        found |= inner
    return found
