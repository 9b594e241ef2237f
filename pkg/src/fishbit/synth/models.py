# fishbit/synth/models.py
"""Parameter sets of the synthetic fish: breathing, swimming, fatigue, oxygen uptake."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict

from fishbit.errors import InvalidPreset


@dataclass(frozen=True)
class BreathingModel:
    base_freq: float                  # Hz at rest
    freq_jitter: float = 0.02         # Hz, std of the slow frequency wander
    amplitude: float = 0.1            # g
    harmonic2_fraction: float = 0.15
    noise_std: float = 0.004          # g
    speed_gain: float = 0.3           # Hz per BL/s
    jitter_tau_seconds: float = 5.0

    def __post_init__(self) -> None:
        if not 0.5 <= self.base_freq <= 5.0:
            raise InvalidPreset(f"breathing base_freq {self.base_freq} Hz outside [0.5, 5]")
        if self.amplitude <= 0:
            raise InvalidPreset("breathing amplitude must be positive")
        if min(self.freq_jitter, self.noise_std, self.harmonic2_fraction) < 0:
            raise InvalidPreset("breathing jitter, noise and harmonic must be >= 0")
        if self.jitter_tau_seconds <= 0:
            raise InvalidPreset("jitter_tau_seconds must be positive")


@dataclass(frozen=True)
class SwimModel:
    tailbeat_intercept: float = 1.0   # Hz
    tailbeat_slope: float = 0.6       # Hz per BL/s
    amp_a: float = 0.02               # g
    amp_b: float = 0.45               # per BL/s
    lateral_ratio: float = 0.5
    turn_event_rate: float = 0.02     # events/s
    turn_amplitude: float = 0.05      # g
    noise_std: float = 0.001          # g
    speed_bls: float = 0.0

    def __post_init__(self) -> None:
        if self.speed_bls < 0:
            raise InvalidPreset("speed_bls must be >= 0")
        if self.amp_a <= 0 or self.amp_b <= 0:
            raise InvalidPreset("amplitude curve a*exp(b*speed) needs a > 0 and b > 0")
        if self.tailbeat_intercept <= 0 or self.tailbeat_slope < 0:
            raise InvalidPreset("tail-beat frequency must be positive and non-decreasing in speed")
        if min(self.turn_event_rate, self.turn_amplitude, self.noise_std, self.lateral_ratio) < 0:
            raise InvalidPreset("swim rates, amplitudes and noise must be >= 0")

    def tailbeat_freq(self, speed: float) -> float:
        return self.tailbeat_intercept + self.tailbeat_slope * speed

    def amplitude(self, speed: float) -> float:
        return self.amp_a * math.exp(self.amp_b * speed)


@dataclass(frozen=True)
class FatigueModel:
    """Knees past which breathing and tail-beat amplitude stop growing and decline."""

    breath_knee: float = 4.0          # BL/s
    breath_decline: float = 0.5       # Hz per BL/s past the knee
    activity_knee: float = 5.0        # BL/s
    activity_decline: float = 0.3     # fraction of amplitude lost per BL/s past the knee
    enabled: bool = True

    def __post_init__(self) -> None:
        if self.breath_knee < 0 or self.activity_knee < 0:
            raise InvalidPreset("fatigue knees must be >= 0")
        if self.breath_decline < 0 or self.activity_decline < 0:
            raise InvalidPreset("fatigue decline rates must be >= 0")


@dataclass(frozen=True)
class SpeciesPreset:
    name: str
    breathing: BreathingModel
    swim: SwimModel = field(default_factory=SwimModel)
    fatigue: FatigueModel = field(default_factory=FatigueModel)

    def breath_freq_at(self, speed: float, *, fatigue: bool = True) -> float:
        b = self.breathing
        if fatigue and self.fatigue.enabled:
            knee = self.fatigue.breath_knee
            f = b.base_freq + b.speed_gain * min(speed, knee) - self.fatigue.breath_decline * max(0.0, speed - knee)
        else:
            f = b.base_freq + b.speed_gain * speed
        return min(max(f, 0.5), 5.0)

    def swim_amplitude_at(self, speed: float, *, fatigue: bool = True) -> float:
        if fatigue and self.fatigue.enabled:
            knee = self.fatigue.activity_knee
            scale = max(0.0, 1.0 - self.fatigue.activity_decline * max(0.0, speed - knee))
            return self.swim.amplitude(min(speed, knee)) * scale
        return self.swim.amplitude(speed)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Mo2Model:
    """Planted oxygen uptake curve (mgO2/kg/h) with a maximum at ``knee_bls``."""

    rest_mo2: float = 130.0
    gain_per_bls: float = 24.0
    knee_bls: float = 4.5
    decline_per_bls: float = 30.0

    def mo2_at(self, speed: float) -> float:
        rise = self.gain_per_bls * min(speed, self.knee_bls)
        fall = self.decline_per_bls * max(0.0, speed - self.knee_bls)
        return max(self.rest_mo2 + rise - fall, 0.0)


@dataclass(frozen=True)
class Chamber:
    volume_l: float = 5.0
    fish_mass_kg: float = 0.2
    temp_c: float = 22.0
    salinity_psu: float = 37.0
    pressure_kpa: float = 101.325
    inflow_sat_pct: float = 100.0
    flush_tau_seconds: float = 8.0

    def __post_init__(self) -> None:
        if self.fish_mass_kg <= 0:
            raise InvalidPreset("fish mass must be positive")
        if self.volume_l <= self.fish_mass_kg / 1.0:
            raise InvalidPreset("chamber volume must exceed the fish volume")
