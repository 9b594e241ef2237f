"""Shared fixtures: estimator configs and clean synthetic windows."""

from __future__ import annotations

import numpy as np
import pytest

from fishbit.signal_core import AccelSeries, EstimatorConfig

FS = 100.0


def sine_window(
    cfg: EstimatorConfig,
    freq: float,
    *,
    amplitude: float = 0.1,
    phase: float = 0.3,
    tail_seconds: float = 0.0,
    xy: tuple[np.ndarray, np.ndarray] | None = None,
    start_s: float = 0.0,
) -> AccelSeries:
    """Pure z sine over one window (plus an optional tail); x/y silent unless given."""
    n = cfg.window_samples + int(round(tail_seconds * cfg.fs))
    t = np.arange(n) / cfg.fs
    z = amplitude * np.sin(2 * np.pi * freq * t + phase)
    if xy is None:
        x = y = np.zeros(n)
    else:
        x, y = xy
    return AccelSeries.from_arrays(x, y, z, fs=cfg.fs, start_s=start_s)


@pytest.fixture
def exact_cfg() -> EstimatorConfig:
    return EstimatorConfig.exact(FS)


@pytest.fixture
def onboard_cfg() -> EstimatorConfig:
    return EstimatorConfig.onboard(FS)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    """Keep tests away from a user's config file and app-data directory."""
    monkeypatch.delenv("FISHBIT_CONFIG", raising=False)
    monkeypatch.setenv("FISHBIT_HOME", str(tmp_path / "home"))
