"""Tests for fishbit.synth: presets, seeded generation, protocols and O2 traces."""

from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import FS
from fishbit.analysis import CyclePhases
from fishbit.errors import InvalidConfig, InvalidPreset, InvalidSpeeds
from fishbit.signal_core import (
    EstimatorMode,
    nearest_rank_percentile,
    process_window,
)
from fishbit.synth import (
    PRESET_SCHEMA,
    Chamber,
    Mo2Model,
    SpeciesPreset,
    SynthSource,
    generate,
    list_presets,
    load_preset,
    respirometry_protocol,
    swim_protocol,
    validate_preset,
)

QUIET = {
    "breathing": {"noise_std": 0.0, "freq_jitter": 0.0},
    "swim": {"noise_std": 0.0, "turn_event_rate": 0.0},
}


def _preset_dict(**changes) -> dict:
    data = {
        "schema": PRESET_SCHEMA,
        "name": "test_fish",
        "breathing": {"base_freq": 2.0},
        "swim": {},
        "fatigue": {},
    }
    data.update(changes)
    return data


# ============================
# Presets
# ============================

class TestPresets:
    def test_bundled_presets_are_listed(self):
        assert set(list_presets()) == {"sea_bream", "sea_bass", "sea_bream_free", "sea_bass_free"}

    @pytest.mark.parametrize("name", ["sea_bream", "sea_bass", "sea_bream_free", "sea_bass_free"])
    def test_every_bundled_preset_loads(self, name):
        preset = load_preset(name)
        assert isinstance(preset, SpeciesPreset)
        assert preset.name == name

    @pytest.mark.parametrize("name, band", [("sea_bream", (2.3, 2.4)), ("sea_bass", (1.8, 2.2))])
    def test_resting_breathing_inside_species_band(self, name, band):
        preset = load_preset(name)
        assert band[0] <= preset.breath_freq_at(0.0) <= band[1]

    def test_unknown_name_rejected(self):
        with pytest.raises(InvalidPreset, match="unknown preset"):
            load_preset("tuna")

    def test_overrides_apply_per_section(self):
        preset = load_preset("sea_bream", {"breathing": {"noise_std": 0.0}, "fatigue": {"enabled": False}})
        assert preset.breathing.noise_std == 0.0
        assert preset.fatigue.enabled is False
        assert preset.breathing.base_freq == load_preset("sea_bream").breathing.base_freq

    def test_override_of_unknown_section_rejected(self):
        with pytest.raises(InvalidPreset):
            load_preset("sea_bream", {"chamber": {"volume_l": 3.0}})

    def test_override_of_unknown_key_rejected(self):
        with pytest.raises(InvalidPreset):
            load_preset("sea_bream", {"breathing": {"wobble": 1.0}})

    def test_load_from_path(self, tmp_path):
        path = tmp_path / "custom.json"
        path.write_text(json.dumps(_preset_dict()), encoding="utf-8")
        preset = load_preset(path)
        assert preset.name == "test_fish"
        assert preset.breathing.base_freq == 2.0

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidPreset, match="invalid JSON"):
            load_preset(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(InvalidPreset):
            load_preset(tmp_path / "absent.json")

    def test_wrong_schema_rejected(self):
        with pytest.raises(InvalidPreset):
            validate_preset(_preset_dict(schema="other/9"))

    def test_missing_base_freq_rejected(self):
        with pytest.raises(InvalidPreset):
            validate_preset(_preset_dict(breathing={"amplitude": 0.1}))

    def test_unknown_top_level_key_rejected(self):
        with pytest.raises(InvalidPreset, match="unknown preset keys"):
            validate_preset(_preset_dict(extra=1))

    def test_to_dict_validates_back(self):
        preset = load_preset("sea_bass")
        data = {"schema": PRESET_SCHEMA, **preset.to_dict()}
        assert validate_preset(data) == preset


# ============================
# Species models
# ============================

class TestSpeciesModels:
    def test_breathing_peaks_at_knee(self):
        preset = load_preset("sea_bream")
        speeds = np.arange(0.0, 6.01, 0.5)
        freqs = [preset.breath_freq_at(s) for s in speeds]
        assert speeds[int(np.argmax(freqs))] == pytest.approx(preset.fatigue.breath_knee)

    def test_breathing_monotone_without_fatigue(self):
        preset = load_preset("sea_bream")
        freqs = [preset.breath_freq_at(s, fatigue=False) for s in np.arange(0.0, 6.01, 0.5)]
        assert np.all(np.diff(freqs) > 0)

    def test_swim_amplitude_peaks_at_activity_knee(self):
        preset = load_preset("sea_bream")
        speeds = np.arange(0.0, 6.01, 0.5)
        amps = [preset.swim_amplitude_at(s) for s in speeds]
        assert speeds[int(np.argmax(amps))] == pytest.approx(preset.fatigue.activity_knee)

    def test_mo2_curve_peaks_at_knee(self):
        model = Mo2Model()
        speeds = np.arange(0.0, 6.01, 0.5)
        values = [model.mo2_at(s) for s in speeds]
        assert speeds[int(np.argmax(values))] == pytest.approx(4.5)
        assert model.mo2_at(4.5) == pytest.approx(130.0 + 24.0 * 4.5)

    def test_mo2_never_negative(self):
        assert Mo2Model(decline_per_bls=1000.0).mo2_at(10.0) == 0.0

    def test_chamber_rejects_fish_larger_than_chamber(self):
        with pytest.raises(InvalidPreset):
            Chamber(volume_l=0.1, fish_mass_kg=0.2)

    def test_chamber_rejects_massless_fish(self):
        with pytest.raises(InvalidPreset):
            Chamber(fish_mass_kg=0.0)


# ============================
# Single recordings
# ============================

class TestGenerate:
    def test_same_seed_same_series(self):
        preset = load_preset("sea_bream")
        a = generate(preset, 60.0, FS, seed=7)
        b = generate(preset, 60.0, FS, seed=7)
        assert np.array_equal(a.series.data, b.series.data)
        assert np.array_equal(a.truth.breath_freq_hz, b.truth.breath_freq_hz)

    def test_different_seeds_differ(self):
        preset = load_preset("sea_bream")
        a = generate(preset, 60.0, FS, seed=7)
        b = generate(preset, 60.0, FS, seed=8)
        assert not np.array_equal(a.series.data, b.series.data)

    def test_length_and_start(self):
        rec = generate(load_preset("sea_bass"), 30.0, FS, seed=1, start_s=120.0)
        assert len(rec.series) == 3000
        assert rec.series.start_s == 120.0
        assert rec.truth.frame_start_s[0] == pytest.approx(120.0)
        assert len(rec.truth.breath_freq_hz) == 3

    def test_samples_inside_sensor_range(self):
        rec = generate(load_preset("sea_bream"), 60.0, FS, seed=3, speed_bls=6.0)
        assert np.abs(rec.series.data).max() <= 2.0

    def test_rejects_non_preset(self):
        with pytest.raises(InvalidPreset):
            generate({"name": "sea_bream"}, 60.0, FS, seed=0)

    @pytest.mark.parametrize("duration, fs", [(0.0, FS), (60.0, 0.0), (-1.0, FS)])
    def test_rejects_non_positive_duration_or_rate(self, duration, fs):
        with pytest.raises(InvalidConfig):
            generate(load_preset("sea_bream"), duration, fs, seed=0)

    def test_rejects_negative_speed(self):
        with pytest.raises(InvalidSpeeds):
            generate(load_preset("sea_bream"), 60.0, FS, seed=0, speed_bls=-1.0)

    def test_noise_free_estimate_recovers_truth(self, exact_cfg):
        preset = load_preset("sea_bream", QUIET)
        rec = generate(preset, exact_cfg.window_seconds, FS, seed=11, speed_bls=2.0)
        result = process_window(rec.series, exact_cfg, EstimatorMode.EXACT)

        truth_f = float(np.mean(rec.truth.breath_freq_hz))
        assert abs(result.resp_freq - truth_f) <= 1.0 / exact_cfg.frame_seconds + 1e-9
        expected_activity = nearest_rank_percentile(rec.truth.jerk_energy_g, exact_cfg.percentile)
        assert result.activity == pytest.approx(expected_activity, rel=1e-9)

    @pytest.mark.parametrize("name, band", [("sea_bream", (2.3, 2.4)), ("sea_bass", (1.8, 2.2))])
    def test_resting_estimate_within_species_band(self, exact_cfg, name, band):
        rec = generate(load_preset(name), exact_cfg.window_seconds, FS, seed=5)
        resp = process_window(rec.series, exact_cfg, EstimatorMode.EXACT).resp_freq
        assert band[0] - 1e-9 <= resp <= band[1] + 1e-9

    def test_free_swimming_adds_activity(self):
        forced = generate(load_preset("sea_bream"), 600.0, FS, seed=4, speed_bls=1.0)
        free = generate(load_preset("sea_bream_free"), 600.0, FS, seed=4, speed_bls=1.0)
        assert np.mean(free.truth.jerk_energy_g) > np.mean(forced.truth.jerk_energy_g)


# ============================
# Stepped-velocity protocol
# ============================

class TestSwimProtocol:
    SPEEDS = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0]

    @pytest.mark.parametrize("speeds", [[], [1.0, 1.0], [2.0, 1.0], [-0.5, 1.0]])
    def test_rejects_bad_speeds(self, speeds):
        with pytest.raises(InvalidSpeeds):
            swim_protocol(load_preset("sea_bream"), speeds, 60.0, FS, seed=0)

    def test_steps_are_contiguous(self):
        steps = swim_protocol(load_preset("sea_bream"), [1.0, 2.0, 3.0], 30.0, FS, seed=0)
        assert [s.speed_bls for s in steps] == [1.0, 2.0, 3.0]
        assert [s.series.start_s for s in steps] == pytest.approx([0.0, 30.0, 60.0])
        assert all(len(s.series) == 3000 for s in steps)

    def test_truth_breathing_peaks_at_knee(self):
        steps = swim_protocol(load_preset("sea_bream"), self.SPEEDS, 60.0, FS, seed=2)
        means = [np.mean(s.truth.breath_freq_hz) for s in steps]
        assert self.SPEEDS[int(np.argmax(means))] == 4.0

    def test_breath_knee_override(self):
        steps = swim_protocol(load_preset("sea_bream"), self.SPEEDS, 60.0, FS, seed=2, breath_knee=3.0)
        means = [np.mean(s.truth.breath_freq_hz) for s in steps]
        assert self.SPEEDS[int(np.argmax(means))] == 3.0

    def test_monotone_without_fatigue(self):
        steps = swim_protocol(load_preset("sea_bream"), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 60.0, FS,
                              seed=2, fatigue=False)
        means = [np.mean(s.truth.breath_freq_hz) for s in steps]
        assert np.all(np.diff(means) > 0)

    def test_activity_rises_up_to_knee(self, exact_cfg):
        speeds = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0]
        steps = swim_protocol(load_preset("sea_bream"), speeds, exact_cfg.window_seconds, FS, seed=9)
        activity = [process_window(s.series, exact_cfg, EstimatorMode.EXACT).activity for s in steps]
        assert np.all(np.diff(activity) > 0)

    def test_replicates_agree(self, exact_cfg):
        preset = load_preset("sea_bream")
        per_seed = []
        for seed in range(8):
            steps = swim_protocol(preset, [1.0, 2.0, 3.0], exact_cfg.window_seconds, FS, seed=seed)
            per_seed.append([process_window(s.series, exact_cfg, EstimatorMode.EXACT).resp_freq for s in steps])
        assert np.all(np.std(per_seed, axis=0) < 0.1)


# ============================
# Device-simulator source
# ============================

class TestSynthSource:
    def test_window_is_deterministic_in_start(self):
        source = SynthSource(load_preset("sea_bream"), FS, seed=3)
        a = source.window(3600.0, 60.0, FS)
        b = source.window(3600.0, 60.0, FS)
        assert np.array_equal(a.data, b.data)
        assert a.start_s == 3600.0

    def test_windows_at_different_starts_differ(self):
        source = SynthSource(load_preset("sea_bream"), FS, seed=3)
        assert not np.array_equal(source.window(0.0, 60.0, FS).data, source.window(60.0, 60.0, FS).data)

    def test_rate_mismatch_rejected(self):
        source = SynthSource(load_preset("sea_bream"), FS, seed=3)
        with pytest.raises(InvalidConfig):
            source.window(0.0, 60.0, 50.0)


# ============================
# Respirometry traces
# ============================

class TestRespirometryProtocol:
    def test_shape_and_timing(self):
        steps = respirometry_protocol([1.0, 2.0, 3.0], seed=1)
        cycle = CyclePhases().cycle_s
        assert len(steps) == 3
        for i, step in enumerate(steps):
            assert step.t_s.size == int(cycle)
            assert step.t_s[0] == pytest.approx(i * cycle)
            assert step.phases == CyclePhases()

    def test_saturation_stays_in_range(self):
        steps = respirometry_protocol(np.arange(0.0, 6.01, 0.5), seed=1, noise_std_pct=0.5)
        for step in steps:
            assert step.o2_sat_pct.min() >= 0.0
            assert step.o2_sat_pct.max() <= 100.0

    def test_sealed_phase_declines(self):
        step = respirometry_protocol([3.0], seed=1, noise_std_pct=0.0)[0]
        sealed = step.o2_sat_pct[step.t_s >= CyclePhases().flush_s]
        assert np.all(np.diff(sealed) < 0)

    def test_faster_uptake_declines_faster(self):
        slow, fast = respirometry_protocol([0.0, 4.5], seed=1, noise_std_pct=0.0)
        assert slow.o2_sat_pct[0] - slow.o2_sat_pct[-1] < fast.o2_sat_pct[0] - fast.o2_sat_pct[-1]

    def test_chamber_properties_propagate(self):
        chamber = Chamber(volume_l=3.0, fish_mass_kg=0.4, temp_c=18.0, salinity_psu=30.0)
        step = respirometry_protocol([1.0], chamber=chamber)[0]
        assert (step.chamber_volume_l, step.fish_mass_kg) == (3.0, 0.4)
        assert (step.temp_c, step.salinity_psu) == (18.0, 30.0)

    def test_same_seed_same_trace(self):
        a = respirometry_protocol([1.0, 2.0], seed=5)
        b = respirometry_protocol([1.0, 2.0], seed=5)
        assert all(np.array_equal(x.o2_sat_pct, y.o2_sat_pct) for x, y in zip(a, b))

    @pytest.mark.parametrize("speeds", [[], [2.0, 1.0], [-1.0]])
    def test_rejects_bad_speeds(self, speeds):
        with pytest.raises(InvalidSpeeds):
            respirometry_protocol(speeds)
