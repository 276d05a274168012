"""Line-oriented text format for networks.

```
NET v1 <n_vertices> <n_edges>
<vertex>            one line per vertex, in order
<u> <v> <w>         one line per edge, w with 17 significant digits
# <section>         optional appendix sections owned by other formats
```
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from gasket_resistance.errors import ArgumentError, OutputError
from gasket_resistance.models.network import Network

NET_HEADER = "NET v1"


def format_float(value: float) -> str:
    """Decimal text that parses back to the identical double."""
    return format(value, ".17g")


def format_network(net: Network) -> str:
    lines = [f"{NET_HEADER} {net.n_vertices} {net.n_edges}"]
    lines.extend(str(v) for v in net.vertex_ids)
    lines.extend(f"{u} {v} {format_float(w)}" for u, v, w in net.edges())
    return "\n".join(lines) + "\n"


def parse_fields(line: str, kinds: tuple[type, ...], what: str) -> tuple[Any, ...]:
    """Split a whitespace-separated line into exactly len(kinds) typed fields."""
    fields = line.split()
    if len(fields) != len(kinds):
        raise ArgumentError(f"bad {what} line, expected {len(kinds)} fields: {line!r}")
    try:
        return tuple(kind(field) for kind, field in zip(kinds, fields))
    except ValueError as exc:
        raise ArgumentError(f"bad {what} line: {line!r}") from exc


def parse_network_lines(lines: list[str]) -> tuple[Network, list[str]]:
    """Parse a NET v1 block; returns the network and the unparsed trailing lines."""
    if not lines:
        raise ArgumentError("empty network file")
    header = lines[0].split()
    if len(header) != 4 or " ".join(header[:2]) != NET_HEADER:
        raise ArgumentError(f"bad network header: {lines[0]!r}")
    n_vertices, n_edges = parse_fields(" ".join(header[2:]), (int, int), "network header")
    if n_vertices < 0 or n_edges < 0:
        raise ArgumentError(f"bad network header: {lines[0]!r}")
    body = lines[1 : 1 + n_vertices + n_edges]
    if len(body) != n_vertices + n_edges:
        raise ArgumentError("network file is truncated")
    vertex_ids = [parse_fields(line, (int,), "vertex")[0] for line in body[:n_vertices]]
    edges = [parse_fields(line, (int, int, float), "edge") for line in body[n_vertices:]]
    try:
        network = Network.from_edges(vertex_ids, edges)
    except ValidationError as exc:
        raise ArgumentError(f"invalid network: {exc.errors()[0]['msg']}") from exc
    return network, lines[1 + n_vertices + n_edges :]


def parse_network(text: str) -> Network:
    network, rest = parse_network_lines(text.splitlines())
    if any(line.strip() and not line.startswith("#") for line in rest):
        raise ArgumentError("unexpected content after the edge list")
    return network


def write_text(path: Path, text: str) -> Path:
    """Write UTF-8 text with LF line endings, wrapping failures in OutputError."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        raise OutputError(path, exc.strerror or str(exc)) from exc
    return path


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(path, exc.strerror or str(exc)) from exc


def write_network(net: Network, path: Path) -> Path:
    return write_text(Path(path), format_network(net))


def read_network(path: Path) -> Network:
    return parse_network(read_text(Path(path)))


def networks_equal(a: Network, b: Network, ids: Iterable[int] | None = None) -> bool:
    """Exact equality of vertex order and conductances."""
    if ids is not None:
        a = a.subnetwork(ids)
        b = b.subnetwork(ids)
    return a.vertex_ids == b.vertex_ids and a.conductance == b.conductance
