from enum import Enum


class VerdictKind(str, Enum):
    DEFINABLE = "definable"
    NOT_DEFINABLE = "not-definable"
    RESOURCE_EXCEEDED = "resource-exceeded"

    @property
    def exit_code(self) -> int:
        return {VerdictKind.DEFINABLE: 0, VerdictKind.NOT_DEFINABLE: 1, VerdictKind.RESOURCE_EXCEEDED: 3}[self]
