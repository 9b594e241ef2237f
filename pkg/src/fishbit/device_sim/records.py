# fishbit/device_sim/records.py
"""Fixed-point log records and the conversions to and from estimator values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Sequence, Tuple, Union

import numpy as np

from fishbit.device_sim.config import PROCESSED_RECORD_BYTES, RAW_SAMPLE_BYTES, DeviceConfig
from fishbit.device_sim.schedule import RecordMode
from fishbit.errors import OutOfRange
from fishbit.signal_core import AccelSeries, WindowResult

RESP_CENTIHZ_MAX = 800
U16_MAX = 0xFFFF
U32_MAX = 0xFFFFFFFF
INT16_MIN, INT16_MAX = -32768, 32767


@dataclass(frozen=True)
class RawRecord:
    ax_counts: int
    ay_counts: int
    az_counts: int

    mode: ClassVar[RecordMode] = RecordMode.RAW
    size: ClassVar[int] = RAW_SAMPLE_BYTES

    def __post_init__(self) -> None:
        for name in ("ax_counts", "ay_counts", "az_counts"):
            value = getattr(self, name)
            if not INT16_MIN <= value <= INT16_MAX:
                raise OutOfRange(f"{name}={value} does not fit int16")


@dataclass(frozen=True)
class ProcessedRecord:
    window_start_s: int
    resp_centihz: int
    activity_micro_g: int

    mode: ClassVar[RecordMode] = RecordMode.PROCESSED
    size: ClassVar[int] = PROCESSED_RECORD_BYTES

    def __post_init__(self) -> None:
        if not 0 <= self.window_start_s <= U32_MAX:
            raise OutOfRange(f"window_start_s={self.window_start_s} does not fit u32")
        if not 0 <= self.resp_centihz <= RESP_CENTIHZ_MAX:
            raise OutOfRange(f"resp_centihz={self.resp_centihz} outside [0, {RESP_CENTIHZ_MAX}]")
        if not 0 <= self.activity_micro_g <= U32_MAX:
            raise OutOfRange(f"activity_micro_g={self.activity_micro_g} does not fit u32")


LogRecord = Union[RawRecord, ProcessedRecord]


# =====================================================
# Processed windows
# =====================================================

def quantize_window(result: WindowResult) -> ProcessedRecord:
    """
    Fixed-point form of one window: centi-hertz and micro-g.

    Raises:
        OutOfRange: resp_freq above 8 Hz or activity beyond the u32 micro-g range
    """
    if not 0 <= result.resp_freq <= RESP_CENTIHZ_MAX / 100:
        raise OutOfRange(f"respiratory frequency {result.resp_freq} outside [0, 8] Hz")
    if not 0 <= result.activity < U32_MAX / 1e6:
        raise OutOfRange(f"activity {result.activity} g beyond the u32 micro-g range")
    if not 0 <= result.window_start <= U32_MAX:
        raise OutOfRange(f"window start {result.window_start} s does not fit u32")

    return ProcessedRecord(
        window_start_s=int(round(result.window_start)),
        resp_centihz=int(round(result.resp_freq * 100)),
        activity_micro_g=int(round(result.activity * 1e6)),
    )


def dequantize_record(record: ProcessedRecord) -> Tuple[float, float]:
    """(breaths/s, activity in g) of a processed record."""
    return record.resp_centihz / 100.0, record.activity_micro_g / 1e6


# =====================================================
# Raw samples
# =====================================================

def quantize_counts(series: AccelSeries, cfg: DeviceConfig) -> np.ndarray:
    """(n, 3) int16 counts, saturated at the sensor full scale."""
    counts = np.rint(np.asarray(series.data) * cfg.counts_per_g)
    counts = np.clip(counts, -cfg.max_counts, cfg.max_counts)
    return counts.astype(np.int16)


def quantize_series(series: AccelSeries, cfg: DeviceConfig) -> list[RawRecord]:
    return [RawRecord(int(ax), int(ay), int(az)) for ax, ay, az in quantize_counts(series, cfg)]


def records_to_series(
    records: Sequence[RawRecord],
    fs: float,
    counts_per_g: int,
    start_s: float = 0.0,
) -> AccelSeries:
    """Acceleration in g from downloaded raw records."""
    counts = np.array(
        [(r.ax_counts, r.ay_counts, r.az_counts) for r in records], dtype=float
    ).reshape(-1, 3)
    return AccelSeries(counts / counts_per_g, fs=fs, start_s=start_s)
