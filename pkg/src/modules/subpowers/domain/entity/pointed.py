from dataclasses import dataclass, field

from src.core.domain.entity import ValueObject
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.subpowers.domain.entity.closure import PointedClosure
from src.modules.subpowers.domain.errors import ElementOutOfRange


@dataclass(frozen=True)
class PointedStructure(ValueObject):
    structure: FiniteStructure
    point: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= a < self.structure.size for a in self.point):
            raise ElementOutOfRange(f"{self.point} is not a tuple of {self.structure.name}")

    def __str__(self) -> str:
        return f"({self.structure.name}, ({','.join(self.structure.display(a) for a in self.point)}))"


@dataclass
class PointedType:
    """A pointed isomorphism class of generated substructures and the points that realise it."""

    representative: PointedStructure
    closure: PointedClosure
    members: list[PointedStructure] = field(default_factory=list)

    @property
    def key(self) -> tuple:
        return self.closure.canonical_key

    @property
    def size(self) -> int:
        return len(self.closure)

    @property
    def sort_key(self) -> tuple:
        return self.size, self.key
