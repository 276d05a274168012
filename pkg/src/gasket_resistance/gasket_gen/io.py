"""Text formats for cluster snapshots and cable networks.

```
CLUSTER v1 <L> <p> <seed> <n_sites>
<q> <r>                 one axial pair per site, in site-id order
```

A cable network is a NET v1 block followed by appendix sections:

```
# cable key=value ...   construction parameters
# coords
<vertex> <q> <r>
# lengths
<u> <v> <length>
# removed
<site>
```
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

from pydantic import ValidationError

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.lattice import (
    CableMode,
    CableNetwork,
    ClusterGraph,
    EdgeMode,
    site_coords,
)
from gasket_resistance.network_core.io import (
    format_float,
    format_network,
    parse_fields,
    parse_network_lines,
    read_text,
    write_text,
)

CLUSTER_HEADER = "CLUSTER v1"


class ClusterSnapshot(NamedTuple):
    cluster: ClusterGraph
    p: float
    seed: int


def format_cluster(cluster: ClusterGraph, p: float, seed: int) -> str:
    lines = [f"{CLUSTER_HEADER} {cluster.side} {format_float(p)} {seed} {cluster.size}"]
    lines.extend(f"{q} {r}" for q, r in cluster.coords.tolist())
    return "\n".join(lines) + "\n"


def parse_cluster(text: str) -> ClusterSnapshot:
    lines = text.splitlines()
    if not lines:
        raise ArgumentError("empty cluster file")
    header = lines[0].split()
    if len(header) != 6 or " ".join(header[:2]) != CLUSTER_HEADER:
        raise ArgumentError(f"bad cluster header: {lines[0]!r}")
    side, p, seed, n_sites = parse_fields(" ".join(header[2:]), (int, float, int, int), "cluster header")
    if side < 1:
        raise ArgumentError(f"bad cluster header: {lines[0]!r}")
    body = [line for line in lines[1:] if line.strip()]
    if len(body) != n_sites:
        raise ArgumentError(f"cluster header announces {n_sites} sites, found {len(body)}")
    coords = [parse_fields(line, (int, int), "site") for line in body]
    try:
        cluster = ClusterGraph.from_coords(side, coords)
    except ValidationError as exc:
        raise ArgumentError(f"invalid cluster: {exc.errors()[0]['msg']}") from exc
    return ClusterSnapshot(cluster, p, seed)


def write_cluster(cluster: ClusterGraph, p: float, seed: int, path: Path) -> Path:
    return write_text(Path(path), format_cluster(cluster, p, seed))


def read_cluster(path: Path) -> ClusterSnapshot:
    return parse_cluster(read_text(Path(path)))


_FLOAT_KEYS = ("eps", "c0", "a0", "d", "intensity", "dead_end_scale")
_INT_KEYS = ("side", "point_count", "kept_count", "seed")


def format_cable(cable: CableNetwork) -> str:
    params = [f"{key}={format_float(getattr(cable, key))}" for key in _FLOAT_KEYS]
    params += [f"{key}={getattr(cable, key)}" for key in _INT_KEYS]
    params += [f"mode={cable.mode.value}", f"edge_mode={cable.edge_mode.value}"]
    lines = [format_network(cable.network).rstrip("\n"), "# cable " + " ".join(params), "# coords"]
    lines.extend(f"{v} {q} {r}" for v, (q, r) in sorted(cable.vertex_coords.items()))
    lines.append("# lengths")
    lines.extend(f"{u} {v} {format_float(x)}" for (u, v), x in sorted(cable.lengths.items()))
    lines.append("# removed")
    lines.extend(str(v) for v in cable.removed_sites)
    return "\n".join(lines) + "\n"


def parse_cable(text: str, cluster: ClusterGraph | None = None) -> CableNetwork:
    """Parse a cable file; `cluster` re-attaches the underlying cluster."""
    network, rest = parse_network_lines(text.splitlines())
    sections: dict[str, list[str]] = {}
    params: dict[str, str] = {}
    current: list[str] | None = None
    for line in rest:
        if line.startswith("# cable"):
            items = [item.partition("=") for item in line[len("# cable") :].split()]
            if any(not sep for _, sep, _ in items):
                raise ArgumentError(f"bad cable parameter line: {line!r}")
            params = {key: value for key, _, value in items}
            current = None
        elif line.startswith("# "):
            current = sections.setdefault(line[2:].strip(), [])
        elif line.strip():
            if current is None:
                raise ArgumentError(f"unexpected line outside a section: {line!r}")
            current.append(line)
    if not params:
        raise ArgumentError("cable file lacks its '# cable' parameter line")
    missing = [key for key in (*_FLOAT_KEYS, *_INT_KEYS, "mode", "edge_mode") if key not in params]
    if missing:
        raise ArgumentError(f"cable parameter line lacks {', '.join(missing)}")
    coords = {}
    for line in sections.get("coords", []):
        v, q, r = parse_fields(line, (int, int, int), "coords")
        coords[v] = (q, r)
    lengths = {}
    for line in sections.get("lengths", []):
        u, v, x = parse_fields(line, (int, int, float), "lengths")
        lengths[(u, v)] = x
    removed = tuple(parse_fields(line, (int,), "removed")[0] for line in sections.get("removed", []))
    floats = {key: parse_fields(params[key], (float,), key)[0] for key in _FLOAT_KEYS}
    ints = {key: parse_fields(params[key], (int,), key)[0] for key in _INT_KEYS}
    side = ints["side"]
    if cluster is not None and cluster.side != side:
        raise ArgumentError("attached cluster lives on a different lattice")
    for v in network.vertex_ids:
        coords.setdefault(v, site_coords(v, side))
    try:
        return CableNetwork(
            network=network,
            vertex_coords=coords,
            lengths=lengths,
            removed_sites=removed,
            mode=CableMode(params["mode"]),
            edge_mode=EdgeMode(params["edge_mode"]),
            cluster=cluster,
            **floats,
            **ints,
        )
    except ValidationError as exc:
        raise ArgumentError(f"invalid cable file: {exc.errors()[0]['msg']}") from exc
    except ValueError as exc:
        raise ArgumentError(f"invalid cable mode: {exc}") from exc


def write_cable(cable: CableNetwork, path: Path) -> Path:
    return write_text(Path(path), format_cable(cable))


def read_cable(path: Path, cluster: ClusterGraph | None = None) -> CableNetwork:
    return parse_cable(read_text(Path(path)), cluster)
