import json
from dataclasses import is_dataclass
from enum import Enum
from typing import Any

from src.core.domain.entity import convert_to_plain


class CustomJsonEncoder(json.JSONEncoder):
    """
    Custom JSON encoder for domain values: sets, enums and dataclass snapshots.
    """

    def default(self, obj: Any) -> Any:
        if isinstance(obj, (frozenset, set)):
            return convert_to_plain(obj)
        if isinstance(obj, Enum):
            return obj.value
        if is_dataclass(obj) and hasattr(obj, "snapshot"):
            return obj.snapshot

        return super().default(obj)


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, cls=CustomJsonEncoder, sort_keys=True, separators=(",", ":"))
