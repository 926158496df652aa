from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure, table_from_function
from src.modules.algebra.domain.errors import UnknownAlgebra

# Stone chain 0 < 1/2 < 1 encoded as 0 < 1 < 2.
HALF = 1


def _stone_star(a: int) -> int:
    return 2 if a == 0 else 0


def stone3() -> FiniteStructure:
    return FiniteStructure(
        name="stone3",
        signature=Signature.create({"join": 2, "meet": 2, "star": 1, "zero": 0, "one": 0}),
        size=3,
        tables={
            "join": table_from_function(3, 2, max),
            "meet": table_from_function(3, 2, min),
            "star": table_from_function(3, 1, _stone_star),
            "zero": (0,),
            "one": (2,),
        },
        elements=("0", "1/2", "1"),
    )


def heyting3() -> FiniteStructure:
    return stone3().with_operation(
        "imp", 2, table_from_function(3, 2, lambda a, b: 2 if a <= b else b), rename="heyting3"
    )


def bool2() -> FiniteStructure:
    return FiniteStructure(
        name="bool2",
        signature=Signature.create({"join": 2, "meet": 2, "neg": 1, "zero": 0, "one": 0}),
        size=2,
        tables={
            "join": table_from_function(2, 2, max),
            "meet": table_from_function(2, 2, min),
            "neg": (1, 0),
            "zero": (0,),
            "one": (1,),
        },
        elements=("0", "1"),
    )


def demorgan_m() -> FiniteStructure:
    # 0, a, b, 1 as the bit patterns 00, 01, 10, 11.
    return FiniteStructure(
        name="demorganM",
        signature=Signature.create({"join": 2, "meet": 2, "bar": 1, "zero": 0, "one": 0}),
        size=4,
        tables={
            "join": table_from_function(4, 2, lambda a, b: a | b),
            "meet": table_from_function(4, 2, lambda a, b: a & b),
            "bar": (3, 1, 2, 0),
            "zero": (0,),
            "one": (3,),
        },
        elements=("0", "a", "b", "1"),
    )


BUILTINS = {
    "stone3": stone3,
    "bool2": bool2,
    "demorganM": demorgan_m,
    "heyting3": heyting3,
}


def builtin(name: str) -> FiniteStructure:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise UnknownAlgebra(f"No built-in algebra named {name!r}")
