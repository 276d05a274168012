"""CSV and JSON output with a fixed byte layout.

CSV files are UTF-8 with LF line endings, a header row and '.' decimals;
JSON documents use sorted keys and two-space indentation. Floats are
written with 17 significant digits so re-runs compare byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from gasket_resistance.network_core.io import format_float, read_text, write_text


def format_cell(value: Any) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format_float(value)
    if value is None:
        return ""
    return str(value)


def format_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} cells, header has {len(header)}")
        writer.writerow([format_cell(cell) for cell in row])
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write one CSV file through a single writer."""
    return write_text(Path(path), format_csv(header, rows))


def read_csv(path: Path) -> list[dict[str, str]]:
    """Rows of a CSV file as header-keyed dicts (values left as text)."""
    return list(csv.DictReader(io.StringIO(read_text(Path(path)))))


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def _finite_json(value: Any) -> Any:
    """Replace non-finite floats by strings, which JSON cannot carry."""
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    if isinstance(value, Mapping):
        return {k: _finite_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_json(v) for v in value]
    return value


def format_json(document: Any) -> str:
    plain = json.loads(json.dumps(document, default=_json_default))
    return json.dumps(_finite_json(plain), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: Path, document: Any) -> Path:
    return write_text(Path(path), format_json(document))


def read_json(path: Path) -> Any:
    return json.loads(read_text(Path(path)))
