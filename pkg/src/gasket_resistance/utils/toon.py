"""TOON (Token-Oriented Object Notation) encoder for command summaries.

TOON combines YAML-style indentation with CSV-style rows for uniform
arrays, which keeps per-scale and per-check tables readable on a terminal.

See: https://github.com/toon-format/toon
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays, enums and paths to plain Python values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return list(value)
    return value


class ToonEncoder:
    """Encoder for TOON format."""

    def __init__(self, indent: int = 2, precision: int = 10) -> None:
        """Initialize the encoder.

        Args:
            indent: Number of spaces for indentation
            precision: Significant digits for floats
        """
        self.indent = indent
        self.precision = precision

    def encode(self, data: Mapping[str, Any]) -> str:
        """Encode a mapping to TOON format.

        Args:
            data: Mapping to encode

        Returns:
            TOON-formatted string
        """
        lines: list[str] = []
        self._encode_dict(data, lines, 0)
        return "\n".join(lines)

    def _encode_dict(self, data: Mapping[str, Any], lines: list[str], depth: int) -> None:
        prefix = " " * (depth * self.indent)
        for key, raw in data.items():
            value = _plain(raw)
            if isinstance(value, Mapping):
                lines.append(f"{prefix}{key}:")
                self._encode_dict(value, lines, depth + 1)
            elif isinstance(value, list):
                self._encode_list(str(key), value, lines, depth)
            else:
                lines.append(f"{prefix}{key}: {self._format_value(value)}")

    def _encode_list(self, key: str, items: Sequence[Any], lines: list[str], depth: int) -> None:
        """Encode a list, using tabular rows for uniform arrays of flat mappings."""
        prefix = " " * (depth * self.indent)
        items = [_plain(item) for item in items]
        if not items:
            lines.append(f"{prefix}{key}[0]:")
            return

        if all(isinstance(item, Mapping) for item in items):
            fields = list(items[0].keys())
            flat = all(
                not isinstance(_plain(v), (Mapping, list)) for item in items for v in item.values()
            )
            if flat and all(list(item.keys()) == fields for item in items):
                lines.append(f"{prefix}{key}[{len(items)}]{{{','.join(fields)}}}:")
                for item in items:
                    row = [self._format_cell(_plain(item[f])) for f in fields]
                    lines.append(f"{prefix}{' ' * self.indent}{','.join(row)}")
                return

        if not any(isinstance(item, (Mapping, list)) for item in items):
            inline = ",".join(self._format_cell(item) for item in items)
            lines.append(f"{prefix}{key}[{len(items)}]: {inline}")
            return

        lines.append(f"{prefix}{key}[{len(items)}]:")
        for item in items:
            if isinstance(item, Mapping):
                lines.append(f"{prefix}{' ' * self.indent}-")
                self._encode_dict(item, lines, depth + 2)
            elif isinstance(item, list):
                self._encode_list("-", item, lines, depth + 1)
            else:
                lines.append(f"{prefix}{' ' * self.indent}- {self._format_value(item)}")

    def _format_number(self, value: float) -> str:
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if value.is_integer() and abs(value) < 1e15:
            return f"{value:.1f}"
        return format(value, f".{self.precision}g")

    def _format_value(self, value: Any) -> str:
        """Format a scalar value for TOON."""
        if value is None:
            return "null"
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return self._format_number(value)
        text = str(value)
        if any(c in text for c in [",", ":", "\n", '"', "'"]):
            return f'"{self._escape_string(text)}"'
        return text

    def _format_cell(self, value: Any) -> str:
        """Format a value inside a tabular row."""
        if value is None:
            return ""
        if isinstance(value, (bool, int, float)):
            return self._format_value(value)
        text = str(value)
        if any(c in text for c in [",", "\n", '"']):
            return f'"{self._escape_string(text)}"'
        return text

    def _escape_string(self, s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def encode_toon(data: Mapping[str, Any]) -> str:
    """Encode a command summary to TOON with default settings."""
    return ToonEncoder().encode(data)
