from itertools import product as cartesian
from typing import Iterable, Sequence

from loguru import logger

from src.config.config import AppConfig
from src.core.app.service import BaseService
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.algebra.domain.errors import SignatureMismatch
from src.modules.subpowers.domain.entity.closure import PointedClosure
from src.modules.subpowers.domain.entity.hom_map import HomMap
from src.modules.subpowers.domain.entity.pointed import PointedStructure, PointedType
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind
from src.modules.subpowers.domain.errors import ElementOutOfRange, NotASubuniverse


def greedy_generators(host, elements: Iterable) -> tuple:
    """Ascending elements, each one not yet generated by the previous picks."""
    picked: list = []
    closure = PointedClosure(host, ())
    for element in sorted(elements):
        if element not in closure:
            picked.append(element)
            closure = PointedClosure(host, picked)
    return tuple(picked)


def missing_symbol(mine: Signature, theirs: Signature) -> str:
    for symbol in (*mine.operations, *mine.relations):
        if symbol.name not in theirs or theirs.arity(symbol.name) != symbol.arity:
            return symbol.name
    return ""


class SubpowerService(BaseService):
    NAME = "subpowers"
    OUT_OF_RANGE_ERROR = (ElementOutOfRange, "Element {element} is outside {name}")
    NOT_SUBUNIVERSE_ERROR = (NotASubuniverse, "Elements {elements} are not closed in {name}")
    SIGNATURE_ERROR = (SignatureMismatch, "Maps from {source} to {target} need {symbol} on both sides")

    def __init__(self, settings: AppConfig):
        self.settings = settings

    def generated_subuniverse(self, structure: FiniteStructure, generators: Iterable[int]) -> Subuniverse:
        generators = tuple(generators)
        for element in generators:
            if not 0 <= element < structure.size:
                self._raise(self.OUT_OF_RANGE_ERROR, element=element, name=structure.name)
        closure = PointedClosure(structure, generators, limit=self.settings.MAX_CLOSURE_SIZE)
        return Subuniverse.create(structure, closure.elements, generators=generators)

    def all_subuniverses(self, structure: FiniteStructure) -> list[Subuniverse]:
        limit = self.settings.MAX_SUBUNIVERSES
        found: dict[int, Subuniverse] = {}
        queue: list[Subuniverse] = []

        def visit(generators: tuple[int, ...]):
            sub = self.generated_subuniverse(structure, generators)
            if len(sub) and sub.mask not in found:
                found[sub.mask] = sub
                queue.append(sub)
                if len(found) > limit:
                    raise self._exceed("MAX_SUBUNIVERSES", limit, len(found), structure=structure.name)

        visit(())
        for element in structure.universe:
            visit((element,))
        while queue:
            sub = queue.pop(0)
            for element in structure.universe:
                if element not in sub:
                    visit((*sub.elements, element))
        result = sorted(found.values(), key=lambda s: s.sort_key)
        logger.info("Subuniverses[{name}] found {count}", name=structure.name, count=len(result))
        return result

    def find_maps(self, source: Subuniverse, target: Subuniverse, kind: MapKind = MapKind.HOM) -> list[HomMap]:
        if not source.is_closed():
            self._raise(self.NOT_SUBUNIVERSE_ERROR, elements=source.labels, name=source.host.name)
        if not source.host.signature.is_sublanguage_of(target.host.signature):
            symbol = missing_symbol(source.host.signature, target.host.signature)
            self._raise(self.SIGNATURE_ERROR, source=source.host.name, target=target.host.name, symbol=symbol)
        host = source.host
        generators = source.generators or greedy_generators(host, source.elements)
        prefixes = [PointedClosure(host, generators[:k]) for k in range(len(generators) + 1)]
        check_kind = MapKind.HOM if kind == MapKind.HOM else MapKind.EMBEDDING
        candidates = target.elements
        found: list[HomMap] = []

        def extend(images: tuple[int, ...]):
            depth = len(images)
            if prefixes[depth].find_violation(target.host, images, check_kind) is not None:
                return
            if depth < len(generators):
                for image in candidates:
                    extend((*images, image))
                return
            closure = prefixes[depth]
            values = closure.replay(target.host, images)
            mapping = tuple(sorted(zip(closure.elements, values)))
            if kind == MapKind.ISOMORPHISM and len(set(values)) != len(target):
                return
            found.append(HomMap(source=source, target=target, mapping=mapping, kind=kind))

        extend(())
        logger.debug(
            "Maps[{kind}] {source} -> {target}: {count}",
            kind=kind.value,
            source=source.labels,
            target=target.labels,
            count=len(found),
        )
        return found

    def pointed_types(self, structures: Sequence[FiniteStructure], n: int) -> list[PointedType]:
        types: dict[tuple, PointedType] = {}
        for structure in structures:
            for point in cartesian(structure.universe, repeat=n):
                pointed = PointedStructure(structure, point)
                closure = PointedClosure(structure, point, limit=self.settings.MAX_CLOSURE_SIZE)
                key = closure.canonical_key
                if key not in types:
                    types[key] = PointedType(representative=pointed, closure=closure)
                types[key].members.append(pointed)
        result = sorted(types.values(), key=lambda t: t.sort_key)
        logger.info("PointedTypes[n={n}] {count} over {k} structures", n=n, count=len(result), k=len(structures))
        return result

    def pointed_substructure_types(self, structures: Sequence[FiniteStructure], n: int) -> list[PointedStructure]:
        return [t.representative for t in self.pointed_types(structures, n)]

    @staticmethod
    def pointed_isomorphism(left: PointedStructure, right: PointedStructure) -> dict[int, int] | None:
        """The pointed isomorphism Sg(left) -> Sg(right), when there is one."""
        closure = PointedClosure(left.structure, left.point)
        if closure.find_violation(right.structure, right.point, MapKind.EMBEDDING) is not None:
            return None
        return dict(zip(closure.elements, closure.replay(right.structure, right.point)))
