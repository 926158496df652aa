from enum import Enum


class SyntacticClass(str, Enum):
    ATOMIC_CONJ = "atomic-conj"
    POSITIVE_OPEN = "pos-open"
    OPEN_HORN = "open-horn"
    OPEN_STRICT_HORN = "open-strict-horn"
    OPEN = "open"
    PP = "pp"
    EXIST_POSITIVE = "exist-pos"
    EXIST_HORN = "exist-horn"
    EXISTENTIAL = "exist"

    @property
    def is_open(self) -> bool:
        return self in OPEN_CLASSES

    @property
    def is_positive(self) -> bool:
        return self in (
            SyntacticClass.ATOMIC_CONJ,
            SyntacticClass.POSITIVE_OPEN,
            SyntacticClass.PP,
            SyntacticClass.EXIST_POSITIVE,
        )

    @property
    def existential(self) -> "SyntacticClass":
        return EXISTENTIAL_COUNTERPART.get(self, self)


OPEN_CLASSES = (
    SyntacticClass.ATOMIC_CONJ,
    SyntacticClass.POSITIVE_OPEN,
    SyntacticClass.OPEN_HORN,
    SyntacticClass.OPEN_STRICT_HORN,
    SyntacticClass.OPEN,
)

EXISTENTIAL_COUNTERPART = {
    SyntacticClass.ATOMIC_CONJ: SyntacticClass.PP,
    SyntacticClass.POSITIVE_OPEN: SyntacticClass.EXIST_POSITIVE,
    SyntacticClass.OPEN_HORN: SyntacticClass.EXIST_HORN,
    SyntacticClass.OPEN_STRICT_HORN: SyntacticClass.EXIST_HORN,
    SyntacticClass.OPEN: SyntacticClass.EXISTENTIAL,
}

# (smaller, larger): every formula of the first class is literally one of the second.
CLASS_INCLUSIONS = (
    (SyntacticClass.ATOMIC_CONJ, SyntacticClass.POSITIVE_OPEN),
    (SyntacticClass.ATOMIC_CONJ, SyntacticClass.OPEN_STRICT_HORN),
    (SyntacticClass.OPEN_STRICT_HORN, SyntacticClass.OPEN_HORN),
    (SyntacticClass.OPEN_HORN, SyntacticClass.OPEN),
    (SyntacticClass.POSITIVE_OPEN, SyntacticClass.OPEN),
    (SyntacticClass.PP, SyntacticClass.EXIST_POSITIVE),
    (SyntacticClass.PP, SyntacticClass.EXIST_HORN),
    (SyntacticClass.EXIST_POSITIVE, SyntacticClass.EXISTENTIAL),
    (SyntacticClass.EXIST_HORN, SyntacticClass.EXISTENTIAL),
    *EXISTENTIAL_COUNTERPART.items(),
)


class TargetKind(str, Enum):
    RELATION = "relation"
    FUNCTION = "function"
