# fishbit/signal_core/peaks.py
"""Peak counting through sign changes of the first difference."""

from __future__ import annotations

import numpy as np

from fishbit.errors import FrameTooShort
from fishbit.signal_core.types import as_channel

# Differences this small are numerical zeros of the filter, not motion.
ZERO_TOLERANCE_G = 1e-12


def _held_signs(diff: np.ndarray) -> np.ndarray:
    """Sign of each difference, with zeros taking the previous nonzero sign."""
    signs = np.sign(diff)
    signs[np.abs(diff) <= ZERO_TOLERANCE_G] = 0

    nonzero = signs != 0
    idx = np.where(nonzero, np.arange(signs.size), 0)
    np.maximum.accumulate(idx, out=idx)
    # leading zeros map to index 0 and stay zero
    return signs[idx]


def extremum_positions(channel) -> np.ndarray:
    """
    Sample indices of local extrema.

    A sign change between ``d[i-1]`` and ``d[i]`` (with ``d[i] = a[i+1] - a[i]``)
    places the extremum at sample ``i``.
    """
    x = as_channel(channel)
    if x.size < 2:
        return np.empty(0, dtype=int)

    held = _held_signs(np.diff(x))
    flips = (held[1:] * held[:-1]) < 0
    return np.flatnonzero(flips) + 1


def count_peaks_in_frame(filtered) -> int:
    """Number of peaks in one frame: derivative zero crossings divided by two."""
    x = as_channel(filtered)
    if x.size < 2:
        raise FrameTooShort(f"frame of {x.size} samples; need at least 2")
    return int(extremum_positions(x).size // 2)


def peaks_per_frame(
    filtered,
    frame_samples: int,
    n_frames: int,
    *,
    ignore_before: int = 0,
) -> np.ndarray:
    """
    Peak counts for consecutive frames of one filtered window.

    Extrema are located on the whole window and attributed to the frame that
    holds the extremum sample. Extrema before ``ignore_before`` are dropped and
    the crossings of the frame shortened that way are rescaled to the full
    frame length.
    """
    x = as_channel(filtered)[: frame_samples * n_frames]
    if frame_samples < 2:
        raise FrameTooShort(f"frame of {frame_samples} samples; need at least 2")
    if not 0 <= ignore_before < frame_samples:
        raise FrameTooShort(
            f"warm-up of {ignore_before} samples leaves nothing of a {frame_samples}-sample frame"
        )

    positions = extremum_positions(x)
    positions = positions[positions >= ignore_before]
    crossings = np.bincount(positions // frame_samples, minlength=n_frames)[:n_frames].astype(float)
    crossings[0] *= frame_samples / (frame_samples - ignore_before)
    return np.rint(crossings).astype(int) // 2
