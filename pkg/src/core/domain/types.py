from typing import Any

SnapShot = dict[str, Any]
