from __future__ import annotations

from typing import List, TypedDict


# ============================
# Section schemas
# ============================

class MetaConfig(TypedDict):
    version: int


class EstimatorSection(TypedDict):
    fs: float
    frames_per_window: int
    band_low: float
    band_high: float
    percentile: float
    warmup_seconds: float
    filter_family: str
    filter_order: int
    filter_ripple_db: float
    filter_z: bool
    filter_xy: bool
    exact_frame_seconds: float
    onboard_frame_seconds: float


class DeviceSection(TypedDict):
    flash_bytes: int
    ram_bytes: int
    fs: float
    counts_per_g: int
    raw_capacity_seconds: float
    battery_active_seconds: float
    led_on_completion: bool
    max_fs: float
    full_scale_g: float


class SynthSection(TypedDict):
    preset: str
    seed: int
    duration_seconds: float
    step_seconds: float
    speeds: List[float]


class RespirometrySection(TypedDict):
    flush_seconds: float
    wait_seconds: float
    measure_seconds: float
    min_samples: int


class LoggingSection(TypedDict):
    level: str
    json: bool
    file: bool


# ============================
# Root schema
# ============================

class AppConfig(TypedDict):
    meta: MetaConfig
    estimator: EstimatorSection
    device: DeviceSection
    synth: SynthSection
    respirometry: RespirometrySection
    logging: LoggingSection
