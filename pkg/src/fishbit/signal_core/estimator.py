# fishbit/signal_core/estimator.py
"""Window-level respiratory frequency and activity index."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List

import numpy as np

from fishbit.errors import InsufficientData, InvalidConfig
from fishbit.signal_core.filters import bandpass_filter
from fishbit.signal_core.jerk import jerk_energy_exact, jerk_energy_onboard
from fishbit.signal_core.peaks import peaks_per_frame
from fishbit.signal_core.percentile import nearest_rank_percentile
from fishbit.signal_core.types import (
    AccelSeries,
    EstimatorConfig,
    EstimatorMode,
    FrameEstimate,
    WindowResult,
    as_channel,
)
from fishbit.utils import ContextAdapter, get_logger, log_performance

logger = get_logger(__name__)


def _require_frames(n_samples: int, cfg: EstimatorConfig) -> None:
    if n_samples < cfg.window_samples:
        raise InsufficientData(
            f"window of {n_samples} samples holds fewer than "
            f"{cfg.frames_per_window} frames of {cfg.frame_samples}"
        )


# =====================================================
# Respiration (z)
# =====================================================

def frame_peak_counts(z, cfg: EstimatorConfig) -> np.ndarray:
    """Per-frame peak counts of the first N frames of ``z``."""
    z = as_channel(z)
    _require_frames(z.size, cfg)
    z = z[: cfg.window_samples]

    filtered = bandpass_filter(z, cfg) if cfg.filter_z else z
    return peaks_per_frame(
        filtered,
        cfg.frame_samples,
        cfg.frames_per_window,
        ignore_before=cfg.counted_warmup_samples if cfg.filter_z else 0,
    )


def _breaths_per_second(counts: np.ndarray, cfg: EstimatorConfig) -> float:
    freq = nearest_rank_percentile(counts, cfg.percentile) / cfg.frame_seconds
    if freq > cfg.band_high:
        logger.warning(f"Respiratory estimate {freq:.3f} Hz clipped to {cfg.band_high} Hz")
        freq = cfg.band_high
    return float(freq)


def respiratory_frequency(z, cfg: EstimatorConfig) -> float:
    """
    Breaths per second over one window of the z channel.

    Tail samples past N frames are ignored. The result never exceeds the
    upper band edge.
    """
    return _breaths_per_second(frame_peak_counts(z, cfg), cfg)


# =====================================================
# Activity (x, y)
# =====================================================

def frame_jerk_energies(x, y, cfg: EstimatorConfig, mode: EstimatorMode | str) -> np.ndarray:
    """Jerk energy of each of the first N frames of the x/y pair."""
    mode = EstimatorMode(mode)
    x = as_channel(x)
    y = as_channel(y)
    _require_frames(min(x.size, y.size), cfg)
    x = x[: cfg.window_samples]
    y = y[: cfg.window_samples]

    if cfg.filter_xy:
        x = bandpass_filter(x, cfg)
        y = bandpass_filter(y, cfg)

    energy = jerk_energy_onboard if mode is EstimatorMode.ONBOARD else jerk_energy_exact
    n = cfg.frame_samples
    energies = np.empty(cfg.frames_per_window)
    for i in range(cfg.frames_per_window):
        lo, hi = i * n, (i + 1) * n
        prev = (x[lo - 1], y[lo - 1]) if i > 0 else None
        energies[i] = energy(x[lo:hi], y[lo:hi], prev)
    return energies


def activity_index(x, y, cfg: EstimatorConfig, mode: EstimatorMode | str) -> float:
    energies = frame_jerk_energies(x, y, cfg, mode)
    return float(nearest_rank_percentile(energies, cfg.percentile))


# =====================================================
# Windows
# =====================================================

def process_window(
    window: AccelSeries,
    cfg: EstimatorConfig,
    mode: EstimatorMode | str,
    *,
    window_start: float | None = None,
) -> WindowResult:
    """
    Respiratory frequency (z) and activity index (x, y) of one acquisition.

    Args:
        window: At least N frames of tri-axial data
        cfg: Estimator configuration; its ``fs`` must match the window
        mode: ``exact`` or ``onboard`` jerk energy
        window_start: Seconds since acquisition start (defaults to the series start)

    Returns:
        WindowResult carrying the per-frame estimates as well
    """
    mode = EstimatorMode(mode)
    if abs(window.fs - cfg.fs) > 1e-9:
        raise InvalidConfig(f"series at {window.fs} Hz but estimator configured for {cfg.fs} Hz")

    counts = frame_peak_counts(window.z, cfg)
    energies = frame_jerk_energies(window.x, window.y, cfg, mode)
    frames = tuple(
        FrameEstimate(peak_count=int(c), jerk_energy=float(e))
        for c, e in zip(counts, energies)
    )

    return WindowResult(
        resp_freq=_breaths_per_second(counts, cfg),
        activity=float(nearest_rank_percentile(energies, cfg.percentile)),
        mode=mode,
        window_start=window.start_s if window_start is None else float(window_start),
        frames=frames,
    )


@dataclass(frozen=True)
class SeriesResult:
    windows: List[WindowResult]
    tail_samples: int
    fs: float

    @property
    def tail_seconds(self) -> float:
        return self.tail_samples / self.fs


@log_performance()
def process_series(
    series: AccelSeries,
    cfg: EstimatorConfig,
    mode: EstimatorMode | str,
    *,
    workers: int = 1,
) -> SeriesResult:
    """
    Consecutive windows over a long recording.

    Windows are independent, so ``workers > 1`` processes them on a thread
    pool; results are always ordered by ``window_start``. Samples after the
    last complete window are reported as the tail.
    """
    mode = EstimatorMode(mode)
    log = ContextAdapter(logger, {"mode": mode.value})

    step = cfg.window_samples
    n_windows = len(series) // step
    tail = len(series) - n_windows * step
    slices = [series.slice_samples(i * step, (i + 1) * step) for i in range(n_windows)]

    def run(window: AccelSeries) -> WindowResult:
        return process_window(window, cfg, mode)

    if workers > 1 and n_windows > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, slices))
    else:
        results = [run(w) for w in slices]

    results.sort(key=lambda r: r.window_start)
    log.info(f"Processed {n_windows} windows of {cfg.window_seconds:g} s")
    if tail:
        log.bind(window_start=f"{series.start_s + n_windows * step / series.fs:g}").warning(
            f"Incomplete tail of {tail / series.fs:.2f} s dropped"
        )

    return SeriesResult(windows=results, tail_samples=tail, fs=series.fs)
