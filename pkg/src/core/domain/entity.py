from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any

from src.core.domain.types import SnapShot


def convert_to_plain(obj: Any) -> Any:
    if isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, dict):
        return {str(key): convert_to_plain(value) for key, value in obj.items()}
    elif isinstance(obj, (frozenset, set)):
        return [convert_to_plain(item) for item in sorted(obj)]
    elif isinstance(obj, (list, tuple)):
        return [convert_to_plain(item) for item in obj]
    else:
        return obj


class ValueObject:
    """
    Mixin for the frozen dataclasses of the domain layer.

    Values are compared structurally and expose a JSON friendly snapshot.
    """

    @property
    def snapshot(self) -> SnapShot:
        def keep(value):
            if isinstance(value, (list, tuple, dict)):
                return value if value else False

            return value is not None

        if not is_dataclass(self):
            return {}
        _snapshot = asdict(self, dict_factory=lambda x: {k: v for (k, v) in x if keep(v)})
        return convert_to_plain(_snapshot)
