# fishbit/cli/parser.py
from __future__ import annotations

import argparse
from typing import Any, Dict

from fishbit.constants import APP_VERSION, ENV_CONFIG
from fishbit.signal_core import EstimatorMode


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        help=f"JSON config file; its values override flags (default: ${ENV_CONFIG})",
    )
    common.add_argument("--fs", type=float, help="sampling rate in Hz (estimator and device)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return common


def _synth_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="species preset name or JSON path")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--speed", type=float, help="swimming speed in BL/s (default: preset)")
    parser.add_argument(
        "--set", action="append", metavar="SECTION.KEY=VALUE",
        help="preset override, e.g. breathing.noise_std=0 (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="fishbit",
        description="Operculum accelerometer processing, logger simulation and swim-tunnel analytics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    # synth
    p = sub.add_parser("synth", parents=[common], help="generate synthetic recordings")
    _synth_flags(p)
    p.add_argument("--duration", type=float, help="seconds")
    p.add_argument("--out", required=True, help="raw CSV (directory with --protocol)")
    p.add_argument("--truth", help="ground-truth CSV (default: <out>.truth.csv)")
    p.add_argument("--protocol", action="store_true", help="stepped-velocity swim-tunnel protocol")
    p.add_argument("--speeds", type=float, nargs="+", help="protocol speeds in BL/s")
    p.add_argument("--step-seconds", type=float)
    p.add_argument("--breath-knee", type=float, help="speed of maximum breathing (BL/s)")
    p.add_argument("--mmr-knee", type=float, help="speed of maximum MO2 (BL/s)")
    p.add_argument("--no-fatigue", action="store_true", help="monotone growth with speed")

    # process
    p = sub.add_parser("process", parents=[common], help="estimate respiration and activity per window")
    p.add_argument("--input", required=True, help="raw CSV or binary device log")
    p.add_argument("--mode", choices=[m.value for m in EstimatorMode], default=EstimatorMode.EXACT.value)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="windows CSV")

    # simulate
    p = sub.add_parser("simulate", parents=[common], help="run a logger schedule")
    _synth_flags(p)
    p.add_argument("--schedule", help="named schedule preset")
    p.add_argument("--window-seconds", type=float)
    p.add_argument("--period-seconds", type=float)
    p.add_argument("--total-seconds", type=float)
    p.add_argument("--record-mode", choices=["raw", "processed"])
    p.add_argument("--input", help="raw CSV source (default: synthetic preset)")
    p.add_argument("--lenient", action="store_true", help="fill the raw buffer instead of rejecting overruns")
    p.add_argument("--out", required=True, help="binary log file")

    # analyze
    p = sub.add_parser("analyze", parents=[common], help="respirometry, knees, agreement and PLS-DA")
    p.add_argument("--steps", nargs="+", required=True, help="respirometry step CSVs, ascending speed")
    p.add_argument("--windows", nargs="+", required=True, help="windows CSV per step")
    p.add_argument("--compare-onboard", nargs="+", help="on-board windows CSV per step")
    p.add_argument("--threshold", type=float, help="anaerobic above this speed (default: later of MRF and MMR)")
    p.add_argument("--out", required=True, help="JSON report")

    # config
    p = sub.add_parser("config", parents=[common], help="show or write the effective configuration")
    p.add_argument("--write", metavar="PATH")

    return parser


def flag_overrides(args: argparse.Namespace) -> Dict[str, Dict[str, Any]]:
    """Config sections set by command-line flags."""
    overrides: Dict[str, Dict[str, Any]] = {}

    def put(section: str, key: str, value: Any) -> None:
        if value is not None:
            overrides.setdefault(section, {})[key] = value

    fs = getattr(args, "fs", None)
    put("estimator", "fs", fs)
    put("device", "fs", fs)
    put("synth", "preset", getattr(args, "preset", None))
    put("synth", "seed", getattr(args, "seed", None))
    put("synth", "duration_seconds", getattr(args, "duration", None))
    put("synth", "step_seconds", getattr(args, "step_seconds", None))
    put("synth", "speeds", getattr(args, "speeds", None))
    put("logging", "level", getattr(args, "log_level", None))
    return overrides
