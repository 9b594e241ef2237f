# fishbit/synth/generator.py
"""Seeded tri-axial signals with known breathing rate and jerk."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

import numpy as np
from scipy import signal

from fishbit.constants import SensorConstants
from fishbit.errors import InvalidConfig, InvalidPreset, InvalidSpeeds
from fishbit.signal_core import AccelSeries, jerk_energy_exact
from fishbit.synth.models import SpeciesPreset
from fishbit.utils import get_logger

logger = get_logger(__name__)

TURN_KERNEL_SECONDS = 0.2
TRUTH_FRAME_SECONDS = 10.0


@dataclass(frozen=True)
class GroundTruth:
    frame_start_s: np.ndarray
    breath_freq_hz: np.ndarray
    jerk_energy_g: np.ndarray
    speed_bls: float


@dataclass(frozen=True)
class SynthRecording:
    series: AccelSeries
    truth: GroundTruth


@dataclass(frozen=True)
class ProtocolStep:
    speed_bls: float
    series: AccelSeries
    truth: GroundTruth


class _Oscillators:
    """Phase state carried between consecutive segments of one recording."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.breath_phase = rng.uniform(0, 2 * np.pi)
        self.harmonic_offset = rng.uniform(0, 2 * np.pi)
        self.tail_phase = rng.uniform(0, 2 * np.pi)
        self.lateral_offset = rng.uniform(0, 2 * np.pi)
        self.jitter_state: Optional[float] = None

    def _wander(self, n: int, fs: float, std: float, tau: float) -> np.ndarray:
        """Stationary first-order wander of standard deviation ``std``."""
        if std == 0:
            return np.zeros(n)
        a = float(np.exp(-1.0 / (tau * fs)))
        if self.jitter_state is None:
            self.jitter_state = float(self.rng.normal(0.0, std))
        e = self.rng.normal(0.0, 1.0, n)
        out, _ = signal.lfilter([np.sqrt(1 - a * a) * std], [1.0, -a], e, zi=[a * self.jitter_state])
        self.jitter_state = float(out[-1])
        return out

    def segment(
        self,
        preset: SpeciesPreset,
        speed: float,
        breath_freq: float,
        n: int,
        fs: float,
        fatigue: bool = True,
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        b, s = preset.breathing, preset.swim
        rng = self.rng

        # z: opercular breathing
        f = np.clip(breath_freq + self._wander(n, fs, b.freq_jitter, b.jitter_tau_seconds), 0.5, 5.0)
        theta = self.breath_phase + 2 * np.pi * np.cumsum(f) / fs
        self.breath_phase = float(theta[-1] % (2 * np.pi))
        z_clean = b.amplitude * (
            np.sin(theta) + b.harmonic2_fraction * np.sin(2 * theta + self.harmonic_offset)
        )
        z = z_clean + rng.normal(0.0, b.noise_std, n) if b.noise_std else z_clean

        # x, y: tail beat plus turns
        amp = preset.swim_amplitude_at(speed, fatigue=fatigue)
        f_tb = s.tailbeat_freq(speed)
        phi = self.tail_phase + 2 * np.pi * f_tb * np.arange(1, n + 1) / fs
        self.tail_phase = float(phi[-1] % (2 * np.pi))
        x_clean = amp * np.sin(phi)
        y_clean = s.lateral_ratio * amp * np.sin(phi + self.lateral_offset)

        events = rng.poisson(s.turn_event_rate * n / fs) if s.turn_event_rate else 0
        if events:
            at = rng.integers(0, n, events)
            heading = rng.uniform(0, 2 * np.pi, events)
            kernel = np.hanning(max(3, int(round(TURN_KERNEL_SECONDS * fs))))
            turns = np.zeros((2, n))
            for axis, weights in enumerate((np.cos(heading), np.sin(heading))):
                np.add.at(turns[axis], at, s.turn_amplitude * weights)
                turns[axis] = np.convolve(turns[axis], kernel, mode="same")
            x_clean = x_clean + turns[0]
            y_clean = y_clean + turns[1]

        x = x_clean + rng.normal(0.0, s.noise_std, n) if s.noise_std else x_clean
        y = y_clean + rng.normal(0.0, s.noise_std, n) if s.noise_std else y_clean
        return x, y, z, f, x_clean, y_clean


def _truth(f: np.ndarray, x_clean: np.ndarray, y_clean: np.ndarray, fs: float,
           start_s: float, speed: float) -> GroundTruth:
    frame = int(round(TRUTH_FRAME_SECONDS * fs))
    n_frames = len(f) // frame
    starts, freqs, jerks = [], [], []
    for i in range(n_frames):
        lo, hi = i * frame, (i + 1) * frame
        prev = (x_clean[lo - 1], y_clean[lo - 1]) if i else None
        starts.append(start_s + lo / fs)
        freqs.append(float(np.mean(f[lo:hi])))
        jerks.append(jerk_energy_exact(x_clean[lo:hi], y_clean[lo:hi], prev))
    return GroundTruth(
        frame_start_s=np.asarray(starts),
        breath_freq_hz=np.asarray(freqs),
        jerk_energy_g=np.asarray(jerks),
        speed_bls=speed,
    )


def _assemble(x, y, z, fs: float, start_s: float) -> AccelSeries:
    limit = SensorConstants.FULL_SCALE_G
    data = np.clip(np.column_stack([x, y, z]), -limit, limit)
    return AccelSeries(data, fs=fs, start_s=start_s)


def generate(
    preset: SpeciesPreset,
    duration: float,
    fs: float,
    seed: int,
    *,
    speed_bls: Optional[float] = None,
    start_s: float = 0.0,
) -> SynthRecording:
    """
    One recording at a constant speed, deterministic in ``seed``.

    Args:
        preset: Species parameters
        duration: Seconds to generate
        fs: Sampling rate in Hz
        seed: Seed for every random draw
        speed_bls: Swimming speed; the preset's own speed when omitted

    Returns:
        The series plus per-frame ground truth (mean breathing frequency and
        noise-free exact jerk energy over 10 s frames)
    """
    if not isinstance(preset, SpeciesPreset):
        raise InvalidPreset(f"expected a SpeciesPreset, got {type(preset).__name__}")
    if fs <= 0 or duration <= 0:
        raise InvalidConfig("duration and fs must be positive")

    speed = preset.swim.speed_bls if speed_bls is None else float(speed_bls)
    if speed < 0:
        raise InvalidSpeeds(f"negative speed {speed}")

    n = int(round(duration * fs))
    osc = _Oscillators(np.random.default_rng(seed))
    x, y, z, f, xc, yc = osc.segment(preset, speed, preset.breath_freq_at(speed), n, fs)
    return SynthRecording(series=_assemble(x, y, z, fs, start_s), truth=_truth(f, xc, yc, fs, start_s, speed))


def swim_protocol(
    preset: SpeciesPreset,
    speeds: Sequence[float],
    step_seconds: float,
    fs: float,
    seed: int,
    *,
    fatigue: bool = True,
    breath_knee: Optional[float] = None,
) -> List[ProtocolStep]:
    """
    Stepped-velocity swim test: one segment per speed with phases continuous
    across steps.

    Args:
        fatigue: Apply the preset's fatigue knees; False gives monotone growth
        breath_knee: Override of the breathing knee (BL/s)
    """
    speeds = [float(s) for s in speeds]
    if not speeds:
        raise InvalidSpeeds("no speeds given")
    if any(s < 0 for s in speeds):
        raise InvalidSpeeds("speeds must be >= 0")
    if any(b <= a for a, b in zip(speeds, speeds[1:])):
        raise InvalidSpeeds(f"speeds must be strictly ascending: {speeds}")

    if breath_knee is not None:
        preset = replace(preset, fatigue=replace(preset.fatigue, breath_knee=float(breath_knee)))

    n = int(round(step_seconds * fs))
    osc = _Oscillators(np.random.default_rng(seed))
    steps: List[ProtocolStep] = []
    for i, speed in enumerate(speeds):
        start = i * n / fs
        f0 = preset.breath_freq_at(speed, fatigue=fatigue)
        x, y, z, f, xc, yc = osc.segment(preset, speed, f0, n, fs, fatigue=fatigue)
        steps.append(ProtocolStep(
            speed_bls=speed,
            series=_assemble(x, y, z, fs, start),
            truth=_truth(f, xc, yc, fs, start, speed),
        ))
        logger.debug(f"Protocol step {speed:g} BL/s: breathing {f0:.2f} Hz")

    return steps


class SynthSource:
    """Device-simulator source drawing an independent seeded segment per window."""

    def __init__(self, preset: SpeciesPreset, fs: float, seed: int, *, speed_bls: Optional[float] = None):
        self.preset = preset
        self.fs = fs
        self.seed = seed
        self.speed_bls = speed_bls

    def window(self, start_s: float, seconds: float, fs: float) -> AccelSeries:
        if abs(fs - self.fs) > 1e-9:
            raise InvalidConfig(f"source generates at {self.fs} Hz, device samples at {fs} Hz")
        window_seed = np.random.SeedSequence([self.seed, int(round(start_s * 1000))])
        rec = generate(
            self.preset, seconds, fs, int(window_seed.generate_state(1)[0]),
            speed_bls=self.speed_bls, start_s=start_s,
        )
        return rec.series
