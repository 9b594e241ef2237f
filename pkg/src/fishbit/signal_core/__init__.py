"""Exact and on-board estimators for respiratory frequency and activity index."""

from __future__ import annotations

from fishbit.signal_core.estimator import (
    SeriesResult,
    activity_index,
    frame_jerk_energies,
    frame_peak_counts,
    process_series,
    process_window,
    respiratory_frequency,
)
from fishbit.signal_core.filters import bandpass_filter, design_bandpass, frequency_response
from fishbit.signal_core.jerk import jerk_energy_exact, jerk_energy_onboard
from fishbit.signal_core.peaks import count_peaks_in_frame, extremum_positions, peaks_per_frame
from fishbit.signal_core.percentile import nearest_rank_percentile
from fishbit.signal_core.types import (
    AccelSample,
    AccelSeries,
    EstimatorConfig,
    EstimatorMode,
    FrameEstimate,
    WindowResult,
)

__all__ = [
    # Types
    "AccelSample",
    "AccelSeries",
    "EstimatorConfig",
    "EstimatorMode",
    "FrameEstimate",
    "WindowResult",
    "SeriesResult",

    # Filtering
    "design_bandpass",
    "bandpass_filter",
    "frequency_response",

    # Frames
    "count_peaks_in_frame",
    "extremum_positions",
    "peaks_per_frame",
    "nearest_rank_percentile",
    "jerk_energy_exact",
    "jerk_energy_onboard",

    # Windows
    "frame_peak_counts",
    "frame_jerk_energies",
    "respiratory_frequency",
    "activity_index",
    "process_window",
    "process_series",
]
