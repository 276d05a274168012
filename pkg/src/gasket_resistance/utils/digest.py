"""File digests for run manifests."""

from __future__ import annotations

import hashlib
from pathlib import Path

from gasket_resistance.errors import OutputError

_CHUNK = 1 << 20


def file_digest(path: Path) -> str:
    """Hex sha256 of a file's bytes."""
    sha = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            while chunk := f.read(_CHUNK):
                sha.update(chunk)
    except OSError as exc:
        raise OutputError(path, exc.strerror or str(exc)) from exc
    return sha.hexdigest()


def digest_files(paths: list[Path], root: Path) -> dict[str, str]:
    """Digests keyed by path relative to `root` (POSIX separators)."""
    return {Path(p).relative_to(root).as_posix(): file_digest(Path(p)) for p in paths}


def mismatched_digests(digests: dict[str, str], root: Path) -> list[str]:
    """Relative paths whose current digest differs from the recorded one (or are missing)."""
    bad = []
    for name, expected in sorted(digests.items()):
        path = root / name
        if not path.is_file() or file_digest(path) != expected:
            bad.append(name)
    return bad
