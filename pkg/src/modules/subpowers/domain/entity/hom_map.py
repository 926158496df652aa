from dataclasses import dataclass
from itertools import product as cartesian

from src.core.domain.entity import ValueObject
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind


@dataclass(frozen=True)
class HomMap(ValueObject):
    source: Subuniverse
    target: Subuniverse
    mapping: tuple[tuple[int, int], ...]
    kind: MapKind

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def __call__(self, element: int) -> int:
        return self.as_dict[element]

    def image(self, point) -> tuple[int, ...]:
        table = self.as_dict
        return tuple(table[a] for a in point)

    def inverse(self) -> "HomMap":
        return HomMap(
            source=self.target,
            target=self.source,
            mapping=tuple(sorted((b, a) for a, b in self.mapping)),
            kind=self.kind,
        )

    def verify(self) -> bool:
        """Independent re-check of the map against every table and relation of the source."""
        table = self.as_dict
        source, target = self.source, self.target
        if set(table) != set(source.elements) or any(b not in target for b in table.values()):
            return False
        host_a, host_b = source.host, target.host
        for op in host_a.signature.operations:
            for args in cartesian(source.elements, repeat=op.arity):
                if table[host_a.apply(op.name, args)] != host_b.apply(op.name, [table[a] for a in args]):
                    return False
        for rel in host_a.signature.relations:
            for args in cartesian(source.elements, repeat=rel.arity):
                left = host_a.holds(rel.name, args)
                right = host_b.holds(rel.name, [table[a] for a in args])
                if left and not right:
                    return False
                if self.kind != MapKind.HOM and right and not left:
                    return False
        if self.kind != MapKind.HOM and len(set(table.values())) != len(table):
            return False
        if self.kind == MapKind.ISOMORPHISM and set(table.values()) != set(target.elements):
            return False
        return True

    def render(self) -> str:
        a, b = self.source.host, self.target.host
        return ", ".join(f"{a.display(x)}->{b.display(y)}" for x, y in self.mapping)
