# fishbit/cli/commands.py
"""One handler per subcommand: ``handler(args, cfg) -> exit code``."""

from __future__ import annotations

import json
from argparse import Namespace
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from fishbit.analysis import (
    Agreement,
    CyclePhases,
    RespirometryRun,
    agreement,
    classify_many,
    detect_mmr_mrf,
    label_by_speed,
    pls_da_fit,
    score_overlap_fraction,
)
from fishbit.cli.io import (
    read_raw_csv,
    read_step,
    read_windows_csv,
    write_long_csv,
    write_raw_csv,
    write_step,
    write_truth_csv,
    write_windows_csv,
)
from fishbit.cli.manifest import RunManifest, output_lock, write_manifest
from fishbit.config import ConfigManager
from fishbit.constants import LOG_MAGIC
from fishbit.device_sim import (
    DeviceConfig,
    RecordMode,
    ScheduleProgram,
    SeriesSource,
    decode_log,
    dequantize_record,
    encode_log,
    get_schedule,
    records_to_series,
    run_schedule,
)
from fishbit.errors import (
    ClassImbalanceBelowMinimum,
    DegenerateInput,
    InvalidConfig,
    SingularFeatures,
    UsageError,
)
from fishbit.signal_core import (
    AccelSeries,
    EstimatorConfig,
    EstimatorMode,
    WindowResult,
    process_series,
)
from fishbit.synth import (
    Chamber,
    Mo2Model,
    SynthSource,
    generate,
    load_preset,
    respirometry_protocol,
    swim_protocol,
)
from fishbit.utils import atomic_write_bytes, atomic_write_json, get_logger

logger = get_logger(__name__)

REPORT_SCHEMA = "fishbit-report/1"
STATE_SCHEMA = "fishbit-state/1"


# =====================================================
# Helpers
# =====================================================

def parse_preset_overrides(items: Optional[Sequence[str]]) -> Dict[str, Dict[str, Any]]:
    """``["breathing.noise_std=0", ...]`` to ``{"breathing": {"noise_std": 0}}``."""
    overrides: Dict[str, Dict[str, Any]] = {}
    for item in items or ():
        key, sep, raw = item.partition("=")
        section, dot, name = key.partition(".")
        if not sep or not dot or not section or not name:
            raise UsageError(f"preset override '{item}' is not SECTION.KEY=VALUE")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        overrides.setdefault(section, {})[name] = value
    return overrides


def _load_synth_preset(args: Namespace, cfg: ConfigManager):
    return load_preset(cfg.get("synth", "preset"), parse_preset_overrides(getattr(args, "set", None)))


def _is_device_log(path: Path) -> bool:
    with Path(path).open("rb") as f:
        return f.read(len(LOG_MAGIC)) == LOG_MAGIC


def _require_fs(series: AccelSeries, est: EstimatorConfig) -> None:
    if abs(series.fs - est.fs) > 1e-6:
        raise InvalidConfig(f"input sampled at {series.fs:g} Hz but the estimator expects {est.fs:g} Hz (use --fs)")


# =====================================================
# synth
# =====================================================

def cmd_synth(args: Namespace, cfg: ConfigManager) -> int:
    preset = _load_synth_preset(args, cfg)
    fs = float(cfg.get("estimator", "fs"))
    seed = int(cfg.get("synth", "seed"))

    if args.protocol:
        return _synth_protocol(args, cfg, preset, fs, seed)

    duration = float(cfg.get("synth", "duration_seconds"))
    rec = generate(preset, duration, fs, seed, speed_bls=args.speed)

    out = Path(args.out)
    truth = Path(args.truth) if args.truth else out.with_name(f"{out.stem}.truth.csv")
    with output_lock(out):
        write_raw_csv(out, rec.series)
        write_truth_csv(truth, rec.truth)
        write_manifest(out, RunManifest("synth", cfg.digest(), seed), outputs=[out, truth])

    logger.info(f"Synthesized {len(rec.series)} samples of '{preset.name}' ({duration:g} s at {fs:g} Hz)")
    return 0


def _synth_protocol(args: Namespace, cfg: ConfigManager, preset, fs: float, seed: int) -> int:
    speeds = [float(s) for s in cfg.get("synth", "speeds")]
    step_seconds = float(cfg.get("synth", "step_seconds"))
    phases = CyclePhases.from_config(cfg)

    steps = swim_protocol(
        preset, speeds, step_seconds, fs, seed,
        fatigue=not args.no_fatigue, breath_knee=args.breath_knee,
    )
    model = Mo2Model(knee_bls=args.mmr_knee) if args.mmr_knee is not None else Mo2Model()
    o2_steps = respirometry_protocol(speeds, model, Chamber(), seed, phases=phases)

    out_dir = Path(args.out)
    primary = out_dir / "protocol"
    written: List[Path] = []
    with output_lock(primary):
        for i, (step, o2) in enumerate(zip(steps, o2_steps)):
            raw = out_dir / f"step_{i:02d}_raw.csv"
            truth = out_dir / f"step_{i:02d}_truth.csv"
            o2_csv = out_dir / f"step_{i:02d}_o2.csv"
            write_raw_csv(raw, step.series)
            write_truth_csv(truth, step.truth)
            sidecar = write_step(o2_csv, o2)
            written += [raw, truth, o2_csv, sidecar]
        write_manifest(primary, RunManifest("synth --protocol", cfg.digest(), seed), outputs=written)

    logger.info(f"Protocol of {len(speeds)} steps written to {out_dir}")
    return 0


# =====================================================
# process
# =====================================================

def _windows_from_log(path: Path, est: EstimatorConfig, mode: EstimatorMode, workers: int) -> List[WindowResult]:
    decoded = decode_log(path.read_bytes())
    if decoded.mode is RecordMode.PROCESSED:
        if mode is not EstimatorMode.ONBOARD:
            logger.warning("Processed log holds on-board estimates; --mode is ignored")
        windows = []
        for record in decoded.records:
            resp, activity = dequantize_record(record)
            windows.append(WindowResult(resp, activity, EstimatorMode.ONBOARD, window_start=float(record.window_start_s)))
        return windows

    series = records_to_series(decoded.records, float(decoded.fs), decoded.counts_per_g)
    _require_fs(series, est)
    return process_series(series, est, mode, workers=workers).windows


def cmd_process(args: Namespace, cfg: ConfigManager) -> int:
    source = Path(args.input)
    mode = EstimatorMode(args.mode)
    est = EstimatorConfig.from_config(cfg, mode)

    if _is_device_log(source):
        windows = _windows_from_log(source, est, mode, args.workers)
    else:
        series = read_raw_csv(source, fs=est.fs)
        if len(series) < est.window_samples:
            logger.warning(
                f"{source} holds {series.duration:g} s, shorter than one {est.window_seconds:g} s window"
            )
        windows = process_series(series, est, mode, workers=args.workers).windows

    out = Path(args.out)
    with output_lock(out):
        write_windows_csv(out, windows)
        write_manifest(out, RunManifest(f"process --mode {mode.value}", cfg.digest()), inputs=[source], outputs=[out])

    logger.info(f"{len(windows)} {mode.value} windows written to {out}")
    return 0


# =====================================================
# simulate
# =====================================================

def _program(args: Namespace) -> ScheduleProgram:
    program = get_schedule(args.schedule) if args.schedule else ScheduleProgram()
    changes: Dict[str, Any] = {}
    if args.window_seconds is not None:
        changes["window_seconds"] = args.window_seconds
    if args.period_seconds is not None:
        changes["period_seconds"] = args.period_seconds
    if args.total_seconds is not None:
        changes["total_duration_seconds"] = args.total_seconds
    if args.record_mode is not None:
        changes["mode"] = RecordMode(args.record_mode)
    return replace(program, **changes) if changes else program


def cmd_simulate(args: Namespace, cfg: ConfigManager) -> int:
    device = DeviceConfig.from_config(cfg)
    program = _program(args)
    est = EstimatorConfig.from_config(cfg, EstimatorMode.ONBOARD)
    if abs(est.fs - device.fs) > 1e-6:
        raise InvalidConfig(f"estimator rate {est.fs:g} Hz differs from device rate {device.fs:g} Hz")

    inputs: List[Path] = []
    seed = None
    if args.input:
        source = SeriesSource(read_raw_csv(Path(args.input), fs=device.fs))
        inputs.append(Path(args.input))
    else:
        seed = int(cfg.get("synth", "seed"))
        source = SynthSource(_load_synth_preset(args, cfg), device.fs, seed, speed_bls=args.speed)

    result = run_schedule(program, source, device, estimator=est, strict=not args.lenient)

    out = Path(args.out)
    state_path = out.with_name(f"{out.name}.state.json")
    state = {
        "schema": STATE_SCHEMA,
        "schedule": {
            "window_seconds": program.window_seconds,
            "period_seconds": program.period_seconds,
            "total_duration_seconds": program.total_duration_seconds,
            "mode": program.mode.value,
        },
        "window_count": result.report.window_count,
        "active_seconds": result.report.active_seconds,
        "warnings": list(result.report.warnings),
        **result.state.summary(),
    }
    with output_lock(out):
        atomic_write_bytes(out, encode_log(result.records, result.mode, device))
        atomic_write_json(state_path, state)
        write_manifest(out, RunManifest("simulate", cfg.digest(), seed), inputs=inputs, outputs=[out, state_path])

    print(f"status={result.state.status.value} records={result.state.record_count} "
          f"download_bytes={result.state.download_bytes}")
    return 0


# =====================================================
# analyze
# =====================================================

def _step_means(frames) -> tuple[list[float], list[float]]:
    resp, act = [], []
    for frame in frames:
        resp.append(float(frame["resp_freq_bps"].mean()))
        act.append(float(frame["activity_g"].mean()))
    return resp, act


def _safe_agreement(xs, ys, what: str) -> Optional[Agreement]:
    try:
        return agreement(xs, ys)
    except DegenerateInput as e:
        logger.warning(f"No {what} agreement: {e}")
        return None


def _paired(exact_frames, onboard_frames, column: str):
    xs, ys = [], []
    for i, (a, b) in enumerate(zip(exact_frames, onboard_frames)):
        n = min(len(a), len(b))
        if len(a) != len(b):
            logger.warning(f"Step {i}: {len(a)} exact vs {len(b)} on-board windows; pairing the first {n}")
        xs.extend(a[column].to_numpy()[:n])
        ys.extend(b[column].to_numpy()[:n])
    return xs, ys


def _plsda_section(frames, speeds: Sequence[float], threshold: float) -> Optional[dict]:
    features = np.vstack([f[["resp_freq_bps", "activity_g"]].to_numpy() for f in frames])
    window_speeds = np.concatenate([np.full(len(f), s) for f, s in zip(frames, speeds)])
    window_starts = np.concatenate([f["window_start_s"].to_numpy() for f in frames])
    labels = label_by_speed(window_speeds, threshold)

    try:
        model = pls_da_fit(features, labels)
    except (ClassImbalanceBelowMinimum, SingularFeatures) as e:
        logger.warning(f"PLS-DA skipped: {e}")
        return None

    predicted = classify_many(model, features)
    scores = [p.score for p in predicted]
    return {
        "threshold_bls": threshold,
        "n_samples": int(features.shape[0]),
        "r2y": model.r2y,
        "q2": model.q2,
        "accuracy": float(np.mean([p.label == lab for p, lab in zip(predicted, labels)])),
        "overlap_fraction": score_overlap_fraction(scores, labels),
        "scores": [
            {
                "speed_bls": float(s),
                "window_start_s": float(t),
                "label": lab,
                "predicted": p.label,
                "score": p.score,
            }
            for s, t, lab, p in zip(window_speeds, window_starts, labels, predicted)
        ],
    }


def cmd_analyze(args: Namespace, cfg: ConfigManager) -> int:
    if len(args.windows) != len(args.steps):
        raise UsageError(f"{len(args.steps)} respirometry steps but {len(args.windows)} windows files")
    if args.compare_onboard and len(args.compare_onboard) != len(args.windows):
        raise UsageError("--compare-onboard needs one file per --windows file")

    phases = CyclePhases.from_config(cfg)
    steps = [read_step(Path(p)) for p in args.steps]
    steps = [s if s.phases is not None else replace(s, phases=phases) for s in steps]
    run = RespirometryRun.from_steps(steps, min_samples=int(cfg.get("respirometry", "min_samples", 30)))

    frames = [read_windows_csv(Path(p)) for p in args.windows]
    for path, frame in zip(args.windows, frames):
        if frame.empty:
            raise DegenerateInput(f"{path} holds no windows")
    resp, activity = _step_means(frames)
    knees = detect_mmr_mrf(run, resp, activity)

    agreements: Dict[str, Any] = {}
    resp_mo2 = _safe_agreement(resp, run.mo2, "respiration vs MO2")
    agreements["resp_freq_vs_mo2"] = resp_mo2.as_dict() if resp_mo2 else None
    inputs = [Path(p) for p in args.steps] + [Path(p) for p in args.windows]
    if args.compare_onboard:
        onboard = [read_windows_csv(Path(p)) for p in args.compare_onboard]
        inputs += [Path(p) for p in args.compare_onboard]
        for column, key in (("resp_freq_bps", "onboard_resp_freq"), ("activity_g", "onboard_activity")):
            result = _safe_agreement(*_paired(frames, onboard, column), key)
            agreements[key] = result.as_dict() if result else None

    threshold = args.threshold if args.threshold is not None else max(knees.mrf_speed, knees.mmr_speed)
    report = {
        "schema": REPORT_SCHEMA,
        "steps": [
            {
                "speed_bls": speed,
                "mo2_mg_kg_h": mo2,
                "mo2_r2": r2,
                "resp_freq_bps": r,
                "activity_g": a,
                "n_windows": int(len(f)),
            }
            for speed, mo2, r2, r, a, f in zip(run.speeds, run.mo2, run.fit_r2, resp, activity, frames)
        ],
        "knees": knees.as_dict(),
        "agreement": agreements,
        "plsda": _plsda_section(frames, run.speeds, threshold),
    }

    long_rows = []
    for step in report["steps"]:
        long_rows += [
            (step["speed_bls"], "mo2", step["mo2_mg_kg_h"], "mgO2/kg/h"),
            (step["speed_bls"], "mo2_r2", step["mo2_r2"], "1"),
            (step["speed_bls"], "resp_freq", step["resp_freq_bps"], "breaths/s"),
            (step["speed_bls"], "activity", step["activity_g"], "g"),
        ]

    out = Path(args.out)
    long_path = out.with_suffix(".long.csv")
    with output_lock(out):
        atomic_write_json(out, report)
        write_long_csv(long_path, long_rows)
        write_manifest(out, RunManifest("analyze", cfg.digest()), inputs=inputs, outputs=[out, long_path])

    logger.info(
        f"MMR at {knees.mmr_speed:g} BL/s, MRF at {knees.mrf_speed:g} BL/s, "
        f"max activity at {knees.max_activity_speed:g} BL/s"
    )
    return 0


# =====================================================
# config
# =====================================================

def cmd_config(args: Namespace, cfg: ConfigManager) -> int:
    if args.write:
        target = Path(args.write)
        with output_lock(target):
            cfg.save(target)
        logger.info(f"Effective configuration written to {target}")
    else:
        print(json.dumps(cfg.data, indent=2, sort_keys=True))
    return 0
