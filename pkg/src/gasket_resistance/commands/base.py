"""Shared plumbing of the command functions: run manifests and error responses."""

from __future__ import annotations

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from gasket_resistance.config.schema import Config
from gasket_resistance.errors import (
    ConfigError,
    ExitCode,
    GasketError,
    OutputError,
)
from gasket_resistance.models.run import RunManifest
from gasket_resistance.utils.csvio import read_json, write_json
from gasket_resistance.utils.digest import digest_files, mismatched_digests

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def package_version() -> str:
    from gasket_resistance import __version__

    return __version__


class RunRecorder:
    """Writes the manifest of one command run and tracks its output files.

    The manifest is written on creation, before any result, and rewritten
    with the file digests by `finish`.
    """

    def __init__(self, command: str, cfg: Config, section: str | None = None) -> None:
        self.root = Path(cfg.run.output_dir) / command
        self.outputs: list[Path] = []
        snapshot: dict[str, Any] = {
            "run": cfg.run.model_dump(mode="json"),
            "tolerances": cfg.tolerances.model_dump(mode="json"),
        }
        if section is not None:
            snapshot[section] = getattr(cfg, section).model_dump(mode="json")
        self.manifest = RunManifest(
            command=command,
            version=package_version(),
            seed=cfg.run.seed,
            config=snapshot,
            started_at=_now(),
        )
        self.manifest_path = self.root / MANIFEST_NAME
        self._write_manifest()

    def _write_manifest(self) -> None:
        write_json(self.manifest_path, self.manifest.model_dump(mode="json"))

    def path(self, name: str) -> Path:
        return self.root / name

    def record(self, path: Path, replica_key: tuple[int, int] | None = None) -> Path:
        self.outputs.append(Path(path))
        if replica_key is not None and list(replica_key) not in self.manifest.replica_seeds:
            self.manifest.replica_seeds.append(list(replica_key))
        return path

    def finish(self, status: str = "success") -> RunManifest:
        self.manifest.outputs = digest_files(self.outputs, self.root)
        self.manifest.finished_at = _now()
        self.manifest.status = status
        self._write_manifest()
        logger.info("%s: %d files written to %s", self.manifest.command, len(self.outputs), self.root)
        return self.manifest


def verify_manifest(path: Path | str) -> dict[str, Any]:
    """Re-hash the files a manifest lists.

    Returns:
        Response with status `success` when every digest matches, else
        `error` and the mismatched files
    """
    manifest_path = Path(path)
    try:
        manifest = RunManifest.model_validate(read_json(manifest_path))
    except GasketError as exc:
        return error_response(exc)
    except ValueError as exc:
        return error_response(ConfigError(f"{manifest_path}: not a run manifest ({exc})"))
    bad = mismatched_digests(manifest.outputs, manifest_path.parent)
    response: dict[str, Any] = {
        "manifest": {"path": str(manifest_path), "files": len(manifest.outputs)},
        "status": "success" if not bad else "error",
    }
    if bad:
        response["error"] = f"{len(bad)} files do not match their recorded digest"
        response["mismatched"] = bad
        response["exit_code"] = int(ExitCode.VERIFICATION_FAILED)
    return response


def exit_code_for(exc: GasketError) -> ExitCode:
    if isinstance(exc, ConfigError):
        return ExitCode.CONFIG_ERROR
    if isinstance(exc, OutputError):
        return ExitCode.IO_ERROR
    return ExitCode.CONFIG_ERROR


def error_response(exc: GasketError) -> dict[str, Any]:
    """Status/error/hint response for a failed command."""
    response: dict[str, Any] = {
        "status": "error",
        "error": str(exc),
        "exit_code": int(exit_code_for(exc)),
    }
    if exc.hint:
        response["hint"] = exc.hint
    return response
