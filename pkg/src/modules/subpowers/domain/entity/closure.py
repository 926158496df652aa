from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Callable, Iterator, Sequence

from src.core.domain.entity import ValueObject
from src.core.domain.errors import ResourceExceeded
from src.modules.algebra.domain.entity.structure import FiniteStructure, table_index
from src.modules.algebra.domain.entity.term import App, Term, Var, x
from src.modules.formulas.domain.entity.formula import Eq, Formula, Not, Rel
from src.modules.subpowers.domain.enums import MapKind

Derivation = tuple[str | None, tuple[int, ...]]


def frontier_tuples(start: int, end: int, arity: int) -> Iterator[tuple[int, ...]]:
    """Index tuples over ``range(end)`` with at least one entry in ``range(start, end)``."""
    for position in range(arity):
        ranges = [range(start)] * position + [range(start, end)] + [range(end)] * (arity - position - 1)
        yield from cartesian(*ranges)


def _applier(target, name: str, arity: int):
    if isinstance(target, FiniteStructure):
        table, size = target.tables[name], target.size
        if arity == 1:
            return lambda vals: table[vals[0]]
        if arity == 2:
            return lambda vals: table[vals[0] * size + vals[1]]
        return lambda vals: table[table_index(vals, size)]
    return lambda vals: target.apply(name, vals)


@dataclass(frozen=True)
class Violation(ValueObject):
    """
    An atom telling a pointed closure apart from an image point.

    ``positive`` atoms hold in the closure and fail at the image; negative
    ones fail in the closure and hold at the image.
    """

    atom: Formula
    positive: bool

    @property
    def literal(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)


class PointedClosure:
    """
    The substructure generated by a tuple, numbered in discovery order.

    Generators come first, then constants, then semi-naive rounds that apply
    the operations in signature order to every index tuple touching the last
    frontier. The numbering only depends on the pointed isomorphism type, so
    the index tables double as an exact canonical form.
    """

    def __init__(
        self,
        host,
        generators: Sequence,
        variables: Sequence[Var] | None = None,
        limit: int | None = None,
        max_depth: int | None = None,
        stop: Callable[[object], bool] | None = None,
        truncate: bool = False,
    ):
        self.host = host
        self.generators = tuple(generators)
        self.variables = tuple(variables) if variables is not None else tuple(x(j + 1) for j in range(len(generators)))
        self.elements: list = []
        self.index: dict = {}
        self.derivations: list[Derivation] = []
        self.depths: list[int] = []
        self.aliases: list[int] = []
        self.constant_indices: dict[str, int] = {}
        self._terms: dict[int, Term] = {}
        self.complete = True
        self.found: int | None = None
        self._close(limit, max_depth, stop, truncate)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element) -> bool:
        return element in self.index

    def __repr__(self) -> str:
        return f"PointedClosure({getattr(self.host, 'name', self.host)}, size={len(self)})"

    def _add(self, element, derivation: Derivation, depth: int):
        self.index[element] = len(self.elements)
        self.elements.append(element)
        self.derivations.append(derivation)
        self.depths.append(depth)

    def _close(self, limit: int | None, max_depth: int | None, stop, truncate: bool):
        """
        Run the closure. ``max_depth`` and a ``truncate``-mode ``limit`` leave a
        partial closure with ``complete`` unset; ``stop`` halts at the first
        element it accepts and records its index in ``found``.
        """
        signature = self.host.signature

        def add(element, derivation: Derivation, depth: int) -> bool:
            self._add(element, derivation, depth)
            if stop is not None and stop(element):
                self.found, self.complete = len(self.elements) - 1, False
                return True
            if limit is not None and len(self.elements) > limit:
                if truncate:
                    self.complete = False
                    return True
                raise ResourceExceeded(
                    f"Generated substructure exceeds {limit} elements",
                    report={"bound": "MAX_CLOSURE_SIZE", "limit": limit},
                )
            return False

        for j, generator in enumerate(self.generators):
            if generator not in self.index and add(generator, (None, (j,)), 0):
                return
            self.aliases.append(self.index[generator])
        for op in signature.constants:
            value = self.host.constant(op.name)
            if value not in self.index and add(value, (op.name, ()), 0):
                return
            self.constant_indices[op.name] = self.index[value]
        functions = signature.functions
        start, depth = 0, 0
        while start < len(self.elements):
            if max_depth is not None and depth >= max_depth:
                self.complete = False
                return
            end, depth = len(self.elements), depth + 1
            for op in functions:
                for args in frontier_tuples(start, end, op.arity):
                    value = self.host.apply(op.name, [self.elements[a] for a in args])
                    if value not in self.index and add(value, (op.name, args), depth):
                        return
            start = end

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def signature(self):
        return self.host.signature

    def term(self, i: int) -> Term:
        """Witness term of element ``i`` over the generator variables."""
        if i not in self._terms:
            symbol, args = self.derivations[i]
            if symbol is None:
                self._terms[i] = self.variables[args[0]]
            else:
                self._terms[i] = App(symbol, tuple(self.term(a) for a in args))
        return self._terms[i]

    def index_table(self, name: str) -> list[int]:
        return self._index_tables[name]

    @cached_property
    def _index_tables(self) -> dict[str, list[int]]:
        n = len(self.elements)
        tables = {}
        for op in self.signature.functions:
            tables[op.name] = [
                self.index[self.host.apply(op.name, [self.elements[a] for a in args])]
                for args in cartesian(range(n), repeat=op.arity)
            ]
        return tables

    @cached_property
    def relation_rows(self) -> dict[str, frozenset[tuple[int, ...]]]:
        n = len(self.elements)
        return {
            rel.name: frozenset(
                args
                for args in cartesian(range(n), repeat=rel.arity)
                if self.host.holds(rel.name, [self.elements[a] for a in args])
            )
            for rel in self.signature.relations
        }

    @cached_property
    def canonical_key(self) -> tuple:
        return (
            len(self.elements),
            tuple(self.aliases),
            tuple(self.constant_indices[op.name] for op in self.signature.constants),
            tuple(tuple(self.index_table(op.name)) for op in self.signature.functions),
            tuple(tuple(sorted(self.relation_rows[rel.name])) for rel in self.signature.relations),
        )

    def induced(self, name: str | None = None) -> FiniteStructure:
        """The generated substructure as a structure of its own, numbered in discovery order."""
        return FiniteStructure(
            name=name or f"Sg{len(self.generators)}({self.host.name})",
            signature=self.signature,
            size=len(self.elements),
            tables={
                **{op.name: (self.constant_indices[op.name],) for op in self.signature.constants},
                **{op.name: tuple(self.index_table(op.name)) for op in self.signature.functions},
            },
            relations=dict(self.relation_rows),
            elements=tuple(self.host.display(element) for element in self.elements),
        )

    def replay(self, target, point: Sequence) -> list:
        """Values of every element's derivation at ``point`` in ``target``."""
        values = []
        appliers = {}
        for symbol, args in self.derivations:
            if symbol is None:
                values.append(point[args[0]])
            elif not args:
                values.append(target.constant(symbol))
            else:
                if symbol not in appliers:
                    appliers[symbol] = _applier(target, symbol, len(args))
                values.append(appliers[symbol]([values[a] for a in args]))
        return values

    def find_violation(self, target, point: Sequence, kind: MapKind = MapKind.HOM) -> Violation | None:
        """
        First diagram atom of this closure that fails at ``point``.

        None means the generator assignment extends to a map of ``kind``:
        a homomorphism, or an embedding (which is a pointed isomorphism onto
        the substructure generated by ``point``).
        """
        values = self.replay(target, point)
        for j, i in enumerate(self.aliases):
            if values[i] != point[j]:
                return Violation(Eq(self.variables[j], self.term(i)), True)
        for name, i in self.constant_indices.items():
            if values[i] != target.constant(name):
                return Violation(Eq(App(name), self.term(i)), True)
        n = len(self.elements)
        for op in self.signature.functions:
            table = self.index_table(op.name)
            apply = _applier(target, op.name, op.arity)
            for flat, args in enumerate(cartesian(range(n), repeat=op.arity)):
                if apply([values[a] for a in args]) != values[table[flat]]:
                    return Violation(
                        Eq(App(op.name, tuple(self.term(a) for a in args)), self.term(table[flat])), True
                    )
        for rel in self.signature.relations:
            for row in sorted(self.relation_rows[rel.name]):
                if not target.holds(rel.name, [values[a] for a in row]):
                    return Violation(Rel(rel.name, tuple(self.term(a) for a in row)), True)
        if kind == MapKind.HOM:
            return None
        seen = {}
        for i, value in enumerate(values):
            if value in seen:
                return Violation(Eq(self.term(seen[value]), self.term(i)), False)
            seen[value] = i
        for rel in self.signature.relations:
            rows = self.relation_rows[rel.name]
            for row in cartesian(range(n), repeat=rel.arity):
                if row not in rows and target.holds(rel.name, [values[a] for a in row]):
                    return Violation(Rel(rel.name, tuple(self.term(a) for a in row)), False)
        return None

    def maps_to(self, target, point: Sequence, kind: MapKind = MapKind.HOM) -> bool:
        return self.find_violation(target, point, kind) is None

    def positive_diagram(self) -> list[Formula]:
        """Atoms true of the generators, skipping those that restate a derivation."""
        atoms: list[Formula] = []
        for j, i in enumerate(self.aliases):
            if self.derivations[i] != (None, (j,)):
                atoms.append(Eq(self.variables[j], self.term(i)))
        for name, i in self.constant_indices.items():
            if self.derivations[i] != (name, ()):
                atoms.append(Eq(App(name), self.term(i)))
        n = len(self.elements)
        for op in self.signature.functions:
            table = self.index_table(op.name)
            for flat, args in enumerate(cartesian(range(n), repeat=op.arity)):
                if self.derivations[table[flat]] != (op.name, args):
                    atoms.append(Eq(App(op.name, tuple(self.term(a) for a in args)), self.term(table[flat])))
        for rel in self.signature.relations:
            for row in sorted(self.relation_rows[rel.name]):
                atoms.append(Rel(rel.name, tuple(self.term(a) for a in row)))
        return atoms

    def negative_diagram(self) -> list[Formula]:
        literals: list[Formula] = []
        n = len(self.elements)
        for i in range(n):
            for j in range(i + 1, n):
                literals.append(Not(Eq(self.term(i), self.term(j))))
        for rel in self.signature.relations:
            rows = self.relation_rows[rel.name]
            for row in cartesian(range(n), repeat=rel.arity):
                if row not in rows:
                    literals.append(Not(Rel(rel.name, tuple(self.term(a) for a in row))))
        return literals

    def open_diagram(self) -> list[Formula]:
        return self.positive_diagram() + self.negative_diagram()
