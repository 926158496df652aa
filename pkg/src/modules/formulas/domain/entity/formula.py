from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.term import Term, Var, substitute, variables, x


@dataclass(frozen=True, slots=True)
class Eq(ValueObject):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Rel(ValueObject):
    symbol: str
    args: tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class Not(ValueObject):
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And(ValueObject):
    parts: tuple["Formula", ...]


@dataclass(frozen=True, slots=True)
class Or(ValueObject):
    parts: tuple["Formula", ...]


@dataclass(frozen=True, slots=True)
class Implies(ValueObject):
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True, slots=True)
class Exists(ValueObject):
    variables: tuple[Var, ...]
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Forall(ValueObject):
    variables: tuple[Var, ...]
    body: "Formula"


Atom = Union[Eq, Rel]
Formula = Union[Eq, Rel, Not, And, Or, Implies, Exists, Forall]

TRUE = Eq(x(1), x(1))
FALSE = Not(TRUE)


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return FALSE
    return parts[0] if len(parts) == 1 else Or(parts)


def exists(bound: Iterable[Var], body: Formula) -> Formula:
    bound = tuple(bound)
    return Exists(bound, body) if bound else body


def is_atom(formula: Formula) -> bool:
    return isinstance(formula, (Eq, Rel))


def variable_order(variable: Var) -> tuple[int, int]:
    return "xzyuw".index(variable.prefix), variable.index


def atom_terms(atom: Atom) -> tuple[Term, ...]:
    return (atom.left, atom.right) if isinstance(atom, Eq) else atom.args


def free_variables(formula: Formula) -> tuple[Var, ...]:
    found: set[Var] = set()

    def walk(f: Formula, bound: frozenset):
        match f:
            case Eq() | Rel():
                for term in atom_terms(f):
                    found.update(v for v in variables(term) if v not in bound)
            case Not(body=body):
                walk(body, bound)
            case And(parts=parts) | Or(parts=parts):
                for part in parts:
                    walk(part, bound)
            case Implies(premise=premise, conclusion=conclusion):
                walk(premise, bound)
                walk(conclusion, bound)
            case Exists(variables=vs, body=body) | Forall(variables=vs, body=body):
                walk(body, bound | frozenset(vs))

    walk(formula, frozenset())
    return tuple(sorted(found, key=variable_order))


def all_variables(formula: Formula) -> set[Var]:
    found: set[Var] = set()

    def walk(f: Formula):
        match f:
            case Eq() | Rel():
                for term in atom_terms(f):
                    found.update(variables(term))
            case Not(body=body):
                walk(body)
            case And(parts=parts) | Or(parts=parts):
                for part in parts:
                    walk(part)
            case Implies(premise=premise, conclusion=conclusion):
                walk(premise)
                walk(conclusion)
            case Exists(variables=vs, body=body) | Forall(variables=vs, body=body):
                found.update(vs)
                walk(body)

    walk(formula)
    return found


def substitute_formula(formula: Formula, mapping: Mapping[Var, Term]) -> Formula:
    """Replace free variables; quantified occurrences shadow the mapping."""
    match formula:
        case Eq(left=left, right=right):
            return Eq(substitute(left, mapping), substitute(right, mapping))
        case Rel(symbol=symbol, args=args):
            return Rel(symbol, tuple(substitute(arg, mapping) for arg in args))
        case Not(body=body):
            return Not(substitute_formula(body, mapping))
        case And(parts=parts):
            return And(tuple(substitute_formula(part, mapping) for part in parts))
        case Or(parts=parts):
            return Or(tuple(substitute_formula(part, mapping) for part in parts))
        case Implies(premise=premise, conclusion=conclusion):
            return Implies(substitute_formula(premise, mapping), substitute_formula(conclusion, mapping))
        case Exists(variables=vs, body=body):
            inner = {k: v for k, v in mapping.items() if k not in vs}
            return Exists(vs, substitute_formula(body, inner))
        case Forall(variables=vs, body=body):
            inner = {k: v for k, v in mapping.items() if k not in vs}
            return Forall(vs, substitute_formula(body, inner))
    raise TypeError(f"Not a formula: {formula!r}")


def formula_size(formula: Formula) -> int:
    match formula:
        case Eq() | Rel():
            return 1
        case Not(body=body) | Exists(body=body) | Forall(body=body):
            return 1 + formula_size(body)
        case And(parts=parts) | Or(parts=parts):
            return 1 + sum(formula_size(part) for part in parts)
        case Implies(premise=premise, conclusion=conclusion):
            return 1 + formula_size(premise) + formula_size(conclusion)
    raise TypeError(f"Not a formula: {formula!r}")


def flatten(formula: Formula) -> Formula:
    """Splice nested And into And and nested Or into Or; nothing else changes."""
    match formula:
        case And(parts=parts):
            flat = []
            for part in (flatten(p) for p in parts):
                flat.extend(part.parts if isinstance(part, And) else (part,))
            return And(tuple(flat))
        case Or(parts=parts):
            flat = []
            for part in (flatten(p) for p in parts):
                flat.extend(part.parts if isinstance(part, Or) else (part,))
            return Or(tuple(flat))
        case Not(body=body):
            return Not(flatten(body))
        case Implies(premise=premise, conclusion=conclusion):
            return Implies(flatten(premise), flatten(conclusion))
        case Exists(variables=vs, body=body):
            return Exists(vs, flatten(body))
        case Forall(variables=vs, body=body):
            return Forall(vs, flatten(body))
    return formula
