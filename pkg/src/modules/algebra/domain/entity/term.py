from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.signature import is_variable_name
from src.modules.algebra.domain.errors import InvalidStructure, UnknownSymbol, VariableOutOfRange


@dataclass(frozen=True, slots=True)
class Var(ValueObject):
    name: str

    def __post_init__(self):
        if not is_variable_name(self.name):
            raise InvalidStructure(f"{self.name!r} is not a variable name")

    @property
    def index(self) -> int:
        return int(self.name[1:])

    @property
    def prefix(self) -> str:
        return self.name[0]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App(ValueObject):
    symbol: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"({self.symbol} {' '.join(str(arg) for arg in self.args)})"


Term = Union[Var, App]
Assignment = Sequence[int] | Mapping[str, int]


def x(index: int) -> Var:
    return Var(f"x{index}")


def z(index: int) -> Var:
    return Var(f"z{index}")


def u(index: int) -> Var:
    return Var(f"u{index}")


def variables(term: Term) -> tuple[Var, ...]:
    seen: dict[Var, None] = {}

    def walk(t: Term):
        if isinstance(t, Var):
            seen.setdefault(t, None)
        else:
            for arg in t.args:
                walk(arg)

    walk(term)
    return tuple(seen)


def symbols(term: Term) -> set[str]:
    if isinstance(term, Var):
        return set()
    found = {term.symbol}
    for arg in term.args:
        found |= symbols(arg)
    return found


def term_size(term: Term) -> int:
    if isinstance(term, Var):
        return 1
    return 1 + sum(term_size(arg) for arg in term.args)


def term_depth(term: Term) -> int:
    if isinstance(term, Var) or not term.args:
        return 0
    return 1 + max(term_depth(arg) for arg in term.args)


def substitute(term: Term, mapping: Mapping[Var, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term, term)
    if not term.args:
        return term
    return App(term.symbol, tuple(substitute(arg, mapping) for arg in term.args))


def lookup(variable: Var, assignment: Assignment) -> int:
    if isinstance(assignment, Mapping):
        if variable.name not in assignment:
            raise VariableOutOfRange(f"Variable {variable.name} is not assigned")
        return assignment[variable.name]
    if variable.prefix != "x" or not 1 <= variable.index <= len(assignment):
        raise VariableOutOfRange(f"Variable {variable.name} outside assignment of length {len(assignment)}")
    return assignment[variable.index - 1]


def evaluate_term(structure, term: Term, assignment: Assignment):
    """
    Bottom-up evaluation of ``term`` in ``structure``.

    A sequence assignment binds ``x_i`` to position ``i-1``; a mapping binds
    variables by name. ``structure`` may be a FiniteStructure or a ProductFrame.
    """
    if isinstance(term, Var):
        return lookup(term, assignment)
    if term.symbol not in structure.signature or not structure.signature.is_operation(term.symbol):
        raise UnknownSymbol(f"{structure.name}: unknown operation {term.symbol!r}")
    if structure.signature.arity(term.symbol) != len(term.args):
        raise UnknownSymbol(f"{term.symbol!r} applied to {len(term.args)} arguments")
    return structure.apply(term.symbol, [evaluate_term(structure, arg, assignment) for arg in term.args])
