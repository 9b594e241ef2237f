# fishbit/cli/manifest.py
from __future__ import annotations

import hashlib
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Optional

from fishbit.constants import APP_VERSION
from fishbit.utils import FileLock, atomic_write_json, get_logger

logger = get_logger(__name__)

MANIFEST_SCHEMA = "fishbit-manifest/1"


def file_digest(path: Path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(output: Path) -> Path:
    """``<output>.manifest.json`` next to the primary output."""
    output = Path(output)
    return output.with_name(f"{output.name}.manifest.json")


def _relative(path: Path, base: Path) -> str:
    """Paths relative to the manifest so a moved run stays byte-identical."""
    try:
        return Path(os.path.relpath(Path(path).resolve(), base.resolve())).as_posix()
    except ValueError:
        return Path(path).as_posix()


@dataclass
class RunManifest:
    """Reproducibility record of one command; deliberately free of timestamps."""

    command: str
    config_digest: str
    seed: Optional[int] = None
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    tool_version: str = APP_VERSION

    def add_inputs(self, paths: Iterable[Path], base: Path) -> None:
        for p in paths:
            self.inputs[_relative(p, base)] = file_digest(p)

    def add_outputs(self, paths: Iterable[Path], base: Path) -> None:
        for p in paths:
            self.outputs[_relative(p, base)] = file_digest(p)

    def to_dict(self) -> dict:
        return {"schema": MANIFEST_SCHEMA, **asdict(self)}


def output_lock(output: Path) -> FileLock:
    """Lock serializing writes into the directory of ``output``."""
    return FileLock.for_directory(Path(output).parent)


def write_manifest(
    primary_output: Path,
    manifest: RunManifest,
    *,
    inputs: Iterable[Path] = (),
    outputs: Iterable[Path] = (),
) -> Path:
    """
    Hash inputs and outputs and write ``<primary_output>.manifest.json``.

    Call while holding ``output_lock(primary_output)``.
    """
    target = manifest_path(primary_output)
    base = target.parent
    manifest.add_inputs(inputs, base)
    manifest.add_outputs(outputs, base)
    atomic_write_json(target, manifest.to_dict())
    logger.debug(f"Manifest written to {target}")
    return target
