# fishbit/analysis/knees.py
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from fishbit.analysis.respirometry import RespirometryRun
from fishbit.errors import DegenerateInput, TooFewSteps


@dataclass(frozen=True)
class KneeReport:
    mmr_speed: float
    mmr_value: float
    mrf_speed: float
    mrf_value: float
    max_activity_speed: float
    max_activity_value: float

    def as_dict(self) -> dict:
        return asdict(self)


def _peak(speeds: np.ndarray, values: Sequence[float], name: str) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    if arr.size != speeds.size:
        raise DegenerateInput(f"{name}: {arr.size} values for {speeds.size} steps")
    # argmax returns the first maximum, i.e. the lower speed on ties
    i = int(np.argmax(arr))
    return float(speeds[i]), float(arr[i])


def detect_mmr_mrf(run: RespirometryRun, resp_freq_per_step, activity_per_step) -> KneeReport:
    """Speeds of maximum metabolic rate, respiratory frequency and activity."""
    speeds = np.asarray(run.speeds, dtype=float)
    if speeds.size < 3:
        raise TooFewSteps(f"{speeds.size} steps; need at least 3")

    mmr = _peak(speeds, run.mo2, "MO2")
    mrf = _peak(speeds, resp_freq_per_step, "respiratory frequency")
    act = _peak(speeds, activity_per_step, "activity")
    return KneeReport(*mmr, *mrf, *act)
