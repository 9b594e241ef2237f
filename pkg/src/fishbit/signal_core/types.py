# fishbit/signal_core/types.py
"""Value types shared by the estimators, the device simulator and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from fishbit.constants import EstimatorConstants, SensorConstants
from fishbit.errors import InsufficientData, InvalidConfig, SampleOutOfRange

if TYPE_CHECKING:
    from fishbit.config.manager import ConfigManager

_FILTER_FAMILIES = ("cheby1", "butter")


class EstimatorMode(str, Enum):
    EXACT = "exact"
    ONBOARD = "onboard"


# ============================
# Acceleration
# ============================

@dataclass(frozen=True)
class AccelSample:
    ax: float
    ay: float
    az: float

    def __post_init__(self) -> None:
        limit = SensorConstants.FULL_SCALE_G
        for name in ("ax", "ay", "az"):
            value = getattr(self, name)
            if not -limit <= value <= limit:
                raise SampleOutOfRange(f"{name}={value} g outside ±{limit:g} g")


@dataclass(frozen=True, eq=False)
class AccelSeries:
    """
    Uniformly sampled tri-axial acceleration.

    ``data`` is an (n, 3) float array of g values in x, y, z order. The array is
    made read-only on construction so a series can be shared between threads.
    """

    data: np.ndarray
    fs: float = SensorConstants.DEFAULT_FS_HZ
    start_s: float = 0.0

    def __post_init__(self) -> None:
        if not self.fs > 0:
            raise InvalidConfig(f"sampling rate must be positive, got {self.fs}")

        data = np.array(self.data, dtype=float)
        if data.size == 0:
            data = data.reshape(0, 3)
        if data.ndim != 2 or data.shape[1] != 3:
            raise InvalidConfig(f"expected an (n, 3) array, got shape {data.shape}")

        limit = SensorConstants.FULL_SCALE_G
        if data.size and float(np.max(np.abs(data))) > limit:
            raise SampleOutOfRange(f"acceleration beyond ±{limit:g} g")

        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    # ---------------------------
    # Construction
    # ---------------------------

    @classmethod
    def from_arrays(cls, x, y, z, fs: float, start_s: float = 0.0) -> "AccelSeries":
        return cls(np.column_stack([x, y, z]), fs=fs, start_s=start_s)

    @classmethod
    def from_samples(
        cls, samples: Iterable[AccelSample], fs: float, start_s: float = 0.0
    ) -> "AccelSeries":
        rows = [(s.ax, s.ay, s.az) for s in samples]
        return cls(np.asarray(rows, dtype=float).reshape(-1, 3), fs=fs, start_s=start_s)

    # ---------------------------
    # Views
    # ---------------------------

    def __len__(self) -> int:
        return int(self.data.shape[0])

    @property
    def x(self) -> np.ndarray:
        return self.data[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.data[:, 1]

    @property
    def z(self) -> np.ndarray:
        return self.data[:, 2]

    @property
    def duration(self) -> float:
        return len(self) / self.fs

    @property
    def samples(self) -> tuple[AccelSample, ...]:
        return tuple(AccelSample(*map(float, row)) for row in self.data)

    def times(self) -> np.ndarray:
        return self.start_s + np.arange(len(self)) / self.fs

    def slice_samples(self, start: int, stop: int) -> "AccelSeries":
        start = max(0, start)
        stop = min(len(self), stop)
        return AccelSeries(self.data[start:stop], fs=self.fs, start_s=self.start_s + start / self.fs)


# ============================
# Estimator configuration
# ============================

@dataclass(frozen=True)
class EstimatorConfig:
    fs: float = SensorConstants.DEFAULT_FS_HZ
    frame_seconds: float = EstimatorConstants.EXACT_FRAME_SECONDS
    frames_per_window: int = EstimatorConstants.FRAMES_PER_WINDOW
    band_low: float = EstimatorConstants.BAND_LOW_HZ
    band_high: float = EstimatorConstants.BAND_HIGH_HZ
    percentile: float = EstimatorConstants.PERCENTILE
    warmup_seconds: float = EstimatorConstants.WARMUP_SECONDS

    filter_family: str = "cheby1"
    filter_order: int = 3
    filter_ripple_db: float = 1.0
    filter_z: bool = True
    filter_xy: bool = False

    def __post_init__(self) -> None:
        if not self.fs > 0:
            raise InvalidConfig(f"fs must be positive, got {self.fs}")
        if not 0 < self.band_low < self.band_high < self.fs / 2:
            raise InvalidConfig(
                f"band edges must satisfy 0 < low < high < fs/2 "
                f"(low={self.band_low}, high={self.band_high}, fs={self.fs})"
            )
        if self.frames_per_window < 1:
            raise InvalidConfig("frames_per_window must be >= 1")
        if not 0 < self.percentile <= 1:
            raise InvalidConfig("percentile must be in (0, 1]")
        if self.warmup_seconds < 0:
            raise InvalidConfig("warmup_seconds must be >= 0")
        if self.filter_family not in _FILTER_FAMILIES:
            raise InvalidConfig(f"unknown filter family '{self.filter_family}'")
        if self.filter_order < 1:
            raise InvalidConfig("filter_order must be >= 1")

        samples = self.frame_seconds * self.fs
        if samples < 2 or abs(samples - round(samples)) > 1e-6:
            raise InvalidConfig(
                f"frame of {self.frame_seconds} s at {self.fs} Hz is not a whole number of samples"
            )

    # ---------------------------
    # Derived sizes
    # ---------------------------

    @property
    def frame_samples(self) -> int:
        return int(round(self.frame_seconds * self.fs))

    @property
    def window_samples(self) -> int:
        return self.frame_samples * self.frames_per_window

    @property
    def window_seconds(self) -> float:
        return self.window_samples / self.fs

    @property
    def warmup_samples(self) -> int:
        return int(round(self.warmup_seconds * self.fs))

    @property
    def counted_warmup_samples(self) -> int:
        """Warm-up dropped from peak counting, capped at half of the first frame."""
        return min(self.warmup_samples, self.frame_samples // 2)

    @property
    def percentile_rank(self) -> int:
        """1-based nearest rank used on the per-frame values."""
        return max(1, math.ceil(self.percentile * self.frames_per_window - 1e-9))

    # ---------------------------
    # Factories
    # ---------------------------

    @classmethod
    def exact(cls, fs: float = SensorConstants.DEFAULT_FS_HZ, **overrides) -> "EstimatorConfig":
        return cls(fs=fs, frame_seconds=EstimatorConstants.EXACT_FRAME_SECONDS, **overrides)

    @classmethod
    def onboard(cls, fs: float = SensorConstants.DEFAULT_FS_HZ, **overrides) -> "EstimatorConfig":
        # 1024-sample frames at the nominal rate; other rates keep the 1024-sample frame
        frame_seconds = 1024 / fs
        return cls(fs=fs, frame_seconds=frame_seconds, **overrides)

    @classmethod
    def for_mode(cls, mode: EstimatorMode | str, fs: float = SensorConstants.DEFAULT_FS_HZ, **overrides) -> "EstimatorConfig":
        mode = EstimatorMode(mode)
        if mode is EstimatorMode.ONBOARD:
            return cls.onboard(fs, **overrides)
        return cls.exact(fs, **overrides)

    @classmethod
    def from_config(cls, cfg: "ConfigManager", mode: EstimatorMode | str) -> "EstimatorConfig":
        mode = EstimatorMode(mode)
        key = "onboard_frame_seconds" if mode is EstimatorMode.ONBOARD else "exact_frame_seconds"
        return cls(
            fs=float(cfg.get("estimator", "fs", SensorConstants.DEFAULT_FS_HZ)),
            frame_seconds=float(cfg.get("estimator", key)),
            frames_per_window=int(cfg.get("estimator", "frames_per_window", 12)),
            band_low=float(cfg.get("estimator", "band_low", 0.5)),
            band_high=float(cfg.get("estimator", "band_high", 8.0)),
            percentile=float(cfg.get("estimator", "percentile", 0.25)),
            warmup_seconds=float(cfg.get("estimator", "warmup_seconds", 2.0)),

            filter_family=cfg.get("estimator", "filter_family", "cheby1"),
            filter_order=int(cfg.get("estimator", "filter_order", 3)),
            filter_ripple_db=float(cfg.get("estimator", "filter_ripple_db", 1.0)),
            filter_z=bool(cfg.get("estimator", "filter_z", True)),
            filter_xy=bool(cfg.get("estimator", "filter_xy", False)),
        )

    def fitted_to(self, window_seconds: float) -> "EstimatorConfig":
        """Same config with N reduced to the frames that fit ``window_seconds``."""
        available = int(round(window_seconds * self.fs, 6)) // self.frame_samples
        if available < 1:
            raise InsufficientData(
                f"a {window_seconds} s window holds no full {self.frame_seconds} s frame"
            )
        if available >= self.frames_per_window:
            return self
        return replace(self, frames_per_window=available)


# ============================
# Results
# ============================

@dataclass(frozen=True)
class FrameEstimate:
    peak_count: int
    jerk_energy: float

    def __post_init__(self) -> None:
        if self.peak_count < 0 or self.jerk_energy < 0:
            raise InvalidConfig("frame estimates are non-negative")


@dataclass(frozen=True)
class WindowResult:
    resp_freq: float
    activity: float
    mode: EstimatorMode
    window_start: float = 0.0
    frames: tuple[FrameEstimate, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.resp_freq < 0 or self.activity < 0:
            raise InvalidConfig("window estimates are non-negative")


def as_channel(values: Sequence[float] | np.ndarray) -> np.ndarray:
    return np.asarray(values, dtype=float).reshape(-1)
