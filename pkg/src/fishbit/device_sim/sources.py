# fishbit/device_sim/sources.py
from __future__ import annotations

from typing import Protocol, runtime_checkable

from fishbit.errors import InsufficientData, InvalidConfig
from fishbit.signal_core import AccelSeries


@runtime_checkable
class AccelSource(Protocol):
    """Anything that can hand the logger the samples of one acquisition."""

    def window(self, start_s: float, seconds: float, fs: float) -> AccelSeries:
        ...


class SeriesSource:
    """Replays a recorded series; window times are relative to its start."""

    def __init__(self, series: AccelSeries):
        self.series = series

    def window(self, start_s: float, seconds: float, fs: float) -> AccelSeries:
        if abs(fs - self.series.fs) > 1e-9:
            raise InvalidConfig(f"recording is at {self.series.fs} Hz, device samples at {fs} Hz")

        first = int(round(start_s * fs))
        count = int(round(seconds * fs))
        if first + count > len(self.series):
            raise InsufficientData(
                f"recording ends at {self.series.duration:g} s; window needs "
                f"{start_s:g}-{start_s + seconds:g} s"
            )
        window = self.series.slice_samples(first, first + count)
        return AccelSeries(window.data, fs=fs, start_s=start_s)
