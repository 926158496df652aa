from enum import Enum


class CaseClass(str, Enum):
    OPEN = "open"
    POSITIVE = "pos"
