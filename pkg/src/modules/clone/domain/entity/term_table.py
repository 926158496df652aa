from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Sequence

from src.modules.algebra.domain.entity.product import ProductFrame
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.entity.term import Term, Var
from src.modules.subpowers.domain.entity.closure import PointedClosure

Coordinate = tuple[int, tuple[int, ...]]


def coordinates(structures: Sequence[FiniteStructure], arity: int) -> tuple[Coordinate, ...]:
    return tuple(
        (k, point) for k, structure in enumerate(structures) for point in cartesian(structure.universe, repeat=arity)
    )


@dataclass
class TermOpTable:
    """
    The n-ary term operations of a class, one row per operation.

    A row lists the operation's values at every coordinate ``(member, tuple)``
    in member order and then lexicographic tuple order. Rows are the elements
    of the subalgebra generated by the projections inside the product over
    all coordinates; each row keeps the first term that produced it.
    """

    structures: tuple[FiniteStructure, ...]
    arity: int
    points: tuple[Coordinate, ...]
    closure: PointedClosure

    @classmethod
    def build(
        cls,
        structures: Sequence[FiniteStructure],
        arity: int,
        depth_budget: int | None = None,
        max_rows: int | None = None,
        stop: Callable[[tuple], bool] | None = None,
        variables: Sequence[Var] | None = None,
    ) -> "TermOpTable":
        structures = tuple(structures)
        points = coordinates(structures, arity)
        frame = ProductFrame(tuple(structures[k] for k, _ in points))
        generators = [tuple(point[i] for _, point in points) for i in range(arity)]
        closure = PointedClosure(
            frame,
            generators,
            variables=variables,
            limit=max_rows,
            max_depth=depth_budget,
            stop=stop,
            truncate=True,
        )
        return cls(structures=structures, arity=arity, points=points, closure=closure)

    @property
    def fixpoint(self) -> bool:
        return self.closure.complete

    @property
    def rows(self) -> list[tuple[int, ...]]:
        return self.closure.elements

    def __len__(self) -> int:
        return len(self.closure)

    def witness(self, i: int) -> Term:
        return self.closure.term(i)

    def depth(self, i: int) -> int:
        return self.closure.depths[i]

    def find(self, row: tuple[int, ...]) -> int | None:
        return self.closure.index.get(row)

    def row_of(self, values: Callable[[int, tuple[int, ...]], int]) -> tuple[int, ...]:
        return tuple(values(k, point) for k, point in self.points)

    def column(self, k: int, point: tuple[int, ...]) -> int:
        return self.points.index((k, tuple(point)))


@dataclass(frozen=True)
class ClosureFailure:
    """
    A subuniverse of a product, generated by ``generators``, that does not
    contain the image of the generators under the target operation.
    """

    factors: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]
    image: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...] = ()

    def render(self) -> str:
        gens = ", ".join("(" + ",".join(map(str, g)) + ")" for g in self.generators)
        elems = ", ".join("(" + ",".join(map(str, e)) + ")" for e in self.elements)
        image = "(" + ",".join(map(str, self.image)) + ")"
        return f"Sg{{{gens}}} = {{{elems}}} in {' x '.join(self.factors)} misses {image}"
