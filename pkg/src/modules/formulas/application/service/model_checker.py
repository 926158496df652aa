from itertools import product as cartesian
from typing import Callable, Iterable, Mapping, Sequence

from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Term, Var
from src.modules.formulas.domain.entity.formula import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Rel,
    free_variables,
)
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.errors import TargetMismatch, UnassignedVariable

Env = dict[str, int]


def _compile_term(structure, term: Term) -> Callable[[Env], int]:
    if isinstance(term, Var):
        name = term.name
        return lambda env: env[name]
    args = [_compile_term(structure, arg) for arg in term.args]
    symbol = term.symbol
    if symbol not in structure.signature or not structure.signature.is_operation(symbol):
        raise TargetMismatch(f"{structure.name} does not interpret operation {symbol!r}")
    if not args:
        value = structure.constant(symbol)
        return lambda env: value
    if isinstance(structure, FiniteStructure):
        table, size = structure.tables[symbol], structure.size
        if len(args) == 1:
            (a,) = args
            return lambda env: table[a(env)]
        if len(args) == 2:
            a, b = args
            return lambda env: table[a(env) * size + b(env)]

        def apply(env: Env) -> int:
            index = 0
            for arg in args:
                index = index * size + arg(env)
            return table[index]

        return apply
    return lambda env: structure.apply(symbol, [arg(env) for arg in args])


def compile_formula(structure, formula: Formula) -> Callable[[Env], bool]:
    """Turn ``formula`` into a predicate over environments for one structure."""
    match formula:
        case Eq(left=left, right=right):
            lhs, rhs = _compile_term(structure, left), _compile_term(structure, right)
            return lambda env: lhs(env) == rhs(env)
        case Rel(symbol=symbol, args=args):
            compiled = [_compile_term(structure, arg) for arg in args]
            return lambda env: structure.holds(symbol, [arg(env) for arg in compiled])
        case Not(body=body):
            inner = compile_formula(structure, body)
            return lambda env: not inner(env)
        case And(parts=parts):
            compiled = [compile_formula(structure, part) for part in parts]
            return lambda env: all(part(env) for part in compiled)
        case Or(parts=parts):
            compiled = [compile_formula(structure, part) for part in parts]
            return lambda env: any(part(env) for part in compiled)
        case Implies(premise=premise, conclusion=conclusion):
            p, c = compile_formula(structure, premise), compile_formula(structure, conclusion)
            return lambda env: (not p(env)) or c(env)
        case Exists(variables=vs, body=body) | Forall(variables=vs, body=body):
            inner = compile_formula(structure, body)
            names = [v.name for v in vs]
            universe = _universe(structure)
            quantifier = any if isinstance(formula, Exists) else all

            def quantified(env: Env) -> bool:
                return quantifier(
                    inner({**env, **dict(zip(names, values))}) for values in cartesian(universe, repeat=len(names))
                )

            return quantified
    raise TypeError(f"Not a formula: {formula!r}")


def _universe(structure) -> Sequence:
    if isinstance(structure, FiniteStructure):
        return structure.universe
    return [structure.decode(i) for i in range(structure.size)]


def _environment(formula: Formula, assignment: Sequence[int] | Mapping[str, int]) -> Env:
    if isinstance(assignment, Mapping):
        env = dict(assignment)
    else:
        env = {f"x{i + 1}": value for i, value in enumerate(assignment)}
    missing = [v.name for v in free_variables(formula) if v.name not in env]
    if missing:
        raise UnassignedVariable(f"Free variables {missing} are not assigned")
    return env


def evaluate(structure, formula: Formula, assignment: Sequence[int] | Mapping[str, int]) -> bool:
    return compile_formula(structure, formula)(_environment(formula, assignment))


def _check_target(formula: Formula, target: Target):
    allowed = set(target.variables)
    stray = [v.name for v in free_variables(formula) if v not in allowed]
    if stray:
        raise TargetMismatch(f"Free variables {stray} are not among the target variables of {target}")


def first_disagreement(
    structures: Iterable[FiniteStructure], formula: Formula, target: Target
) -> tuple[FiniteStructure, tuple[int, ...]] | None:
    _check_target(formula, target)
    names = [v.name for v in target.variables]
    for structure in structures:
        target.check(structure)
        predicate = compile_formula(structure, formula)
        for point in target.points(structure):
            if predicate(dict(zip(names, point))) != target.holds(structure, point):
                return structure, point
    return None


def defines(structures: Iterable[FiniteStructure], formula: Formula, target: Target) -> bool:
    return first_disagreement(structures, formula, target) is None


def satisfying_points(structure: FiniteStructure, formula: Formula, target: Target) -> frozenset[tuple[int, ...]]:
    _check_target(formula, target)
    names = [v.name for v in target.variables]
    predicate = compile_formula(structure, formula)
    return frozenset(point for point in target.points(structure) if predicate(dict(zip(names, point))))
