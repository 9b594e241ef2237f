# fishbit/signal_core/jerk.py
"""Per-frame jerk energy of the x/y acceleration pair."""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from fishbit.errors import FrameTooShort
from fishbit.signal_core.types import as_channel


def _differences(x, y, prev: Optional[Tuple[float, float]]) -> Tuple[np.ndarray, np.ndarray]:
    ax = as_channel(x)
    ay = as_channel(y)
    if ax.size != ay.size:
        raise FrameTooShort(f"x/y frames differ in length ({ax.size} vs {ay.size})")

    if prev is not None:
        ax = np.concatenate(([prev[0]], ax))
        ay = np.concatenate(([prev[1]], ay))

    if ax.size < 2:
        raise FrameTooShort("jerk needs at least two samples")
    return np.diff(ax), np.diff(ay)


def jerk_energy_exact(x, y, prev: Optional[Tuple[float, float]] = None) -> float:
    """
    Root-sum-square of the population standard deviations of the x and y jerk.

    Args:
        x, y: One frame of acceleration in g
        prev: The sample preceding the frame, when there is one; the frame then
            yields exactly ``len(x)`` differences

    Returns:
        Jerk energy in g
    """
    dx, dy = _differences(x, y, prev)
    return float(np.sqrt(np.var(dx) + np.var(dy)))


def _mean_abs_deviation(d: np.ndarray) -> float:
    return float(np.mean(np.abs(d - np.mean(d))))


def jerk_energy_onboard(x, y, prev: Optional[Tuple[float, float]] = None) -> float:
    """Firmware variant: mean absolute deviations summed, no square root."""
    dx, dy = _differences(x, y, prev)
    return _mean_abs_deviation(dx) + _mean_abs_deviation(dy)
