# fishbit/synth/respirometry.py
"""Swim-tunnel oxygen traces with a planted MO2 curve."""

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from fishbit.analysis.respirometry import CyclePhases, SpeedStep
from fishbit.analysis.solubility import o2_solubility
from fishbit.errors import InvalidSpeeds
from fishbit.synth.models import Chamber, Mo2Model
from fishbit.utils import get_logger

logger = get_logger(__name__)


def _decline_pct_per_s(mo2: float, chamber: Chamber, solubility_mg_l: float) -> float:
    free_volume = chamber.volume_l - chamber.fish_mass_kg / 1.0
    mg_l_per_h = mo2 * chamber.fish_mass_kg / free_volume
    return mg_l_per_h / solubility_mg_l * 100.0 / 3600.0


def respirometry_protocol(
    speeds: Sequence[float],
    model: Optional[Mo2Model] = None,
    chamber: Optional[Chamber] = None,
    seed: int = 0,
    *,
    phases: Optional[CyclePhases] = None,
    noise_std_pct: float = 0.1,
    sample_seconds: float = 1.0,
) -> List[SpeedStep]:
    """
    One flush-wait-measure cycle per speed.

    During the flush the saturation recovers exponentially towards the inflow
    saturation; wait and measurement are sealed and fall linearly at the rate
    the planted MO2 implies. Each step starts from where the previous ended.

    Args:
        speeds: Strictly ascending speeds in BL/s
        model: Planted MO2 curve (default knee at 4.5 BL/s)
        chamber: Chamber geometry, fish and water
        noise_std_pct: Gaussian probe noise, % saturation
        sample_seconds: Probe sampling period
    """
    speeds = [float(s) for s in speeds]
    if not speeds:
        raise InvalidSpeeds("no speeds given")
    if any(s < 0 for s in speeds):
        raise InvalidSpeeds("speeds must be >= 0")
    if any(b <= a for a, b in zip(speeds, speeds[1:])):
        raise InvalidSpeeds(f"speeds must be strictly ascending: {speeds}")

    model = model or Mo2Model()
    chamber = chamber or Chamber()
    phases = phases or CyclePhases()
    rng = np.random.default_rng(seed)

    solubility = o2_solubility(chamber.temp_c, chamber.salinity_psu, chamber.pressure_kpa)
    n = int(round(phases.cycle_s / sample_seconds))
    offsets = np.arange(n) * sample_seconds
    sealed_from = phases.flush_s

    sat0 = chamber.inflow_sat_pct
    steps: List[SpeedStep] = []
    for i, speed in enumerate(speeds):
        rate = _decline_pct_per_s(model.mo2_at(speed), chamber, solubility)

        flushed = chamber.inflow_sat_pct + (sat0 - chamber.inflow_sat_pct) * np.exp(
            -np.minimum(offsets, sealed_from) / chamber.flush_tau_seconds
        )
        clean = flushed - rate * np.maximum(offsets - sealed_from, 0.0)
        sat = np.clip(clean + rng.normal(0.0, noise_std_pct, n), 0.0, 100.0)

        steps.append(SpeedStep(
            speed_bls=speed,
            t_s=i * phases.cycle_s + offsets,
            o2_sat_pct=sat,
            temp_c=chamber.temp_c,
            salinity_psu=chamber.salinity_psu,
            chamber_volume_l=chamber.volume_l,
            fish_mass_kg=chamber.fish_mass_kg,
            pressure_kpa=chamber.pressure_kpa,
            phases=phases,
        ))
        logger.debug(f"Respirometry step {speed:g} BL/s: planted MO2 {model.mo2_at(speed):.1f} mgO2/kg/h")
        sat0 = float(clean[-1])

    return steps
