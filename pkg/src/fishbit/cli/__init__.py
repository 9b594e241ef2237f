# fishbit/cli/__init__.py
"""Command-line surface: ``fishbit synth|process|simulate|analyze|config``."""

from __future__ import annotations

import warnings
from typing import Callable, Dict, Optional, Sequence

from fishbit.cli.commands import cmd_analyze, cmd_config, cmd_process, cmd_simulate, cmd_synth
from fishbit.cli.parser import build_parser, flag_overrides
from fishbit.config import ConfigManager
from fishbit.errors import (
    FishbitError,
    InvalidPreset,
    NonDecreasingSaturation,
    ScheduleWarning,
    UnknownSchedule,
    UsageError,
)
from fishbit.utils import get_logger, get_logs_root, set_root_logger, setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

COMMANDS: Dict[str, Callable[..., int]] = {
    "synth": cmd_synth,
    "process": cmd_process,
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "config": cmd_config,
}


def _configure_logging(cfg: ConfigManager) -> None:
    log_dir = get_logs_root() if cfg.get("logging", "file", False) else None
    root = setup_logging(
        log_dir,
        log_level=str(cfg.get("logging", "level", "INFO")),
        json_format=bool(cfg.get("logging", "json", False)),
    )
    set_root_logger(root)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 2 on usage errors (bad flags, unknown preset or
        schedule), 1 on any other failure
    """
    set_root_logger(setup_logging(log_level="INFO"))
    logger = get_logger(__name__)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        cfg = ConfigManager(args.config, flag_overrides(args))
        _configure_logging(cfg)
        logger.debug(f"fishbit {args.command} (config {cfg.digest()[:12]})")

        with warnings.catch_warnings():
            # already reported through the logger
            warnings.simplefilter("ignore", ScheduleWarning)
            warnings.simplefilter("ignore", NonDecreasingSaturation)
            return COMMANDS[args.command](args, cfg)

    except (UsageError, InvalidPreset, UnknownSchedule) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except FishbitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_ERROR


__all__ = ["main", "build_parser", "COMMANDS", "EXIT_OK", "EXIT_ERROR", "EXIT_USAGE"]
