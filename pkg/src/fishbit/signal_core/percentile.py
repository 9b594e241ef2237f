# fishbit/signal_core/percentile.py
from __future__ import annotations

import math

import numpy as np

from fishbit.errors import EmptyInput, InvalidConfig


def nearest_rank_percentile(values, q: float):
    """
    The k-th smallest value with ``k = ceil(q * n)`` (1-based, at least 1).

    Integer inputs stay integers, which keeps the result exact for peak counts.
    """
    arr = np.asarray(values).reshape(-1)
    if arr.size == 0:
        raise EmptyInput("percentile of an empty sequence")
    if not 0 < q <= 1:
        raise InvalidConfig(f"percentile must be in (0, 1], got {q}")

    k = max(1, math.ceil(q * arr.size - 1e-9))
    return np.sort(arr, kind="stable")[k - 1].item()
