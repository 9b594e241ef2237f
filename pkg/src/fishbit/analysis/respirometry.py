# fishbit/analysis/respirometry.py
"""Intermittent-flow respirometry: oxygen uptake from closed-phase O2 declines."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from fishbit.analysis.solubility import STANDARD_PRESSURE_KPA, o2_solubility
from fishbit.errors import AnalysisError, DegenerateInput, InsufficientSamples, NonDecreasingSaturation
from fishbit.utils import get_logger

logger = get_logger(__name__)

FISH_DENSITY_KG_PER_L = 1.0
MIN_MEASUREMENT_SAMPLES = 30


@dataclass(frozen=True)
class CyclePhases:
    flush_s: float = 60.0
    wait_s: float = 30.0
    measure_s: float = 210.0

    def __post_init__(self) -> None:
        if min(self.flush_s, self.wait_s) < 0 or self.measure_s <= 0:
            raise AnalysisError("cycle phases must be non-negative with a positive measurement")

    @property
    def cycle_s(self) -> float:
        return self.flush_s + self.wait_s + self.measure_s

    @classmethod
    def from_config(cls, cfg) -> "CyclePhases":
        return cls(
            flush_s=float(cfg.get("respirometry", "flush_seconds", 60.0)),
            wait_s=float(cfg.get("respirometry", "wait_seconds", 30.0)),
            measure_s=float(cfg.get("respirometry", "measure_seconds", 210.0)),
        )


@dataclass(frozen=True, eq=False)
class SpeedStep:
    speed_bls: float
    t_s: np.ndarray
    o2_sat_pct: np.ndarray
    temp_c: float
    salinity_psu: float
    chamber_volume_l: float
    fish_mass_kg: float
    pressure_kpa: float = STANDARD_PRESSURE_KPA
    phases: Optional[CyclePhases] = None

    def __post_init__(self) -> None:
        t = np.asarray(self.t_s, dtype=float).reshape(-1)
        sat = np.asarray(self.o2_sat_pct, dtype=float).reshape(-1)
        if t.size != sat.size:
            raise DegenerateInput(f"{t.size} times but {sat.size} saturation values")
        if sat.size and (sat.min() < 0 or sat.max() > 100):
            raise DegenerateInput("O2 saturation must lie in [0, 100] %")
        if self.fish_mass_kg <= 0:
            raise DegenerateInput("fish mass must be positive")
        if self.chamber_volume_l <= self.fish_volume_l:
            raise DegenerateInput(
                f"chamber of {self.chamber_volume_l} L does not exceed the fish volume {self.fish_volume_l} L"
            )
        object.__setattr__(self, "t_s", t)
        object.__setattr__(self, "o2_sat_pct", sat)

    @property
    def fish_volume_l(self) -> float:
        return self.fish_mass_kg / FISH_DENSITY_KG_PER_L

    @property
    def free_volume_l(self) -> float:
        return self.chamber_volume_l - self.fish_volume_l


@dataclass(frozen=True)
class Mo2Estimate:
    mo2: float              # mgO2/kg/h
    r2: float
    slope_mg_l_h: float
    n_samples: int


def measurement_phase(step: SpeedStep, phases: Optional[CyclePhases] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Samples of the sealed measurement phase.

    Cycles start at the first timestamp; within each cycle the samples after
    flush and wait, up to the cycle end, are kept. Without phases every sample
    is used.
    """
    phases = phases or step.phases
    if phases is None or step.t_s.size == 0:
        return step.t_s, step.o2_sat_pct

    offset = (step.t_s - step.t_s[0]) % phases.cycle_s
    closed = offset >= phases.flush_s + phases.wait_s
    return step.t_s[closed], step.o2_sat_pct[closed]


def mo2_from_step(
    step: SpeedStep,
    phases: Optional[CyclePhases] = None,
    *,
    min_samples: int = MIN_MEASUREMENT_SAMPLES,
) -> Mo2Estimate:
    """
    Mass-specific oxygen uptake of one speed step.

    Dissolved O2 (mg/L) is regressed on time (h) over the measurement phase;
    uptake is ``-slope * free_volume / mass``. A non-falling trace reports zero
    uptake with a NonDecreasingSaturation warning.

    Raises:
        InsufficientSamples: fewer than ``min_samples`` measurement samples
    """
    t, sat = measurement_phase(step, phases)
    if t.size < min_samples:
        raise InsufficientSamples(
            f"{t.size} samples in the measurement phase at {step.speed_bls} BL/s; need {min_samples}"
        )

    solubility = o2_solubility(step.temp_c, step.salinity_psu, step.pressure_kpa)
    o2_mg_l = sat / 100.0 * solubility
    fit = stats.linregress(t / 3600.0, o2_mg_l)
    slope = float(fit.slope)
    r2 = float(fit.rvalue) ** 2

    if slope >= 0:
        message = f"O2 did not fall at {step.speed_bls} BL/s (slope {slope:+.4f} mg/L/h); check the chamber seal"
        logger.warning(message)
        warnings.warn(message, NonDecreasingSaturation, stacklevel=2)
        return Mo2Estimate(mo2=0.0, r2=r2, slope_mg_l_h=slope, n_samples=int(t.size))

    mo2 = -slope * step.free_volume_l / step.fish_mass_kg
    return Mo2Estimate(mo2=mo2, r2=r2, slope_mg_l_h=slope, n_samples=int(t.size))


@dataclass(frozen=True)
class RespirometryRun:
    steps: Tuple[SpeedStep, ...]
    mo2: Tuple[float, ...] = field(default=())
    fit_r2: Tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        speeds = [s.speed_bls for s in self.steps]
        if any(b <= a for a, b in zip(speeds, speeds[1:])):
            raise DegenerateInput(f"steps must be ascending in speed: {speeds}")
        if any(not 0.0 <= r <= 1.0 + 1e-12 for r in self.fit_r2):
            raise DegenerateInput("fit r² outside [0, 1]")

    @property
    def speeds(self) -> Tuple[float, ...]:
        return tuple(s.speed_bls for s in self.steps)

    @classmethod
    def from_steps(
        cls,
        steps: Sequence[SpeedStep],
        phases: Optional[CyclePhases] = None,
        *,
        min_samples: int = MIN_MEASUREMENT_SAMPLES,
    ) -> "RespirometryRun":
        estimates = [mo2_from_step(s, phases, min_samples=min_samples) for s in steps]
        return cls(
            steps=tuple(steps),
            mo2=tuple(e.mo2 for e in estimates),
            fit_r2=tuple(e.r2 for e in estimates),
        )
