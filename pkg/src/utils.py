import json
import math
import os
from typing import Any

import numpy as np

from .errors import ConfigError

THREADS_ENV = "HQ_THREADS"


class Missing:
    """
    Represents a status of missing.
    """

    def __eq__(self, other) -> bool:
        return False

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "..."


MISSING: Any = Missing()


def resolve_threads(default: int = MISSING) -> int:
    """
    The number of worker threads for the randomized suites, read from ``HQ_THREADS``.

    :param default: Used when the variable is unset; the CPU count if missing.
    :type default: int
    :raises ConfigError: If the variable is not a positive integer.
    :rtype: int
    """
    raw = os.getenv(THREADS_ENV)
    if not raw:
        return default or os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 1:
        raise ConfigError(f"{THREADS_ENV} must be at least 1, got {threads}")
    return threads


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_plain(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no inf or nan
        return value if math.isfinite(value) else None
    return value


def dump_json(data: Any) -> str:
    """
    Serialize a report to JSON text: numpy scalars become plain numbers, non-finite
    floats become null, and key order is kept so equal reports give equal bytes.
    """
    return json.dumps(_plain(data), indent=2, ensure_ascii=False) + "\n"
