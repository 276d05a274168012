"""Cable-graph approximation of a cluster at scale eps.

Vertices come from a Poisson sample of intensity eps^-(d + c0) per site on
the cluster with its small dead ends removed: the point count N is
Poisson(lambda * |kept|) and the N points occupy N distinct kept sites
drawn uniformly, so the vertex count is the point count.
Two vertices closer than eps in chemical distance are joined by a cable
along a shortest path. Any shortest path of length below eps from v stays
inside the chemical ball of radius eps around v, hence inside the region
B(v, 2 eps) u B(w, 2 eps) the cable is allowed to use, so cable lengths are
plain chemical distances.

In `direct` mode each close pair is one edge whose resistance is the cable
length. In `merged` mode the union of all cables is taken as a subgraph of
the cluster; branch points become vertices and every unbranched stretch
becomes one edge, so overlapping cables share resistance.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator

import networkx as nx
import numpy as np
from scipy.sparse import csgraph

from gasket_resistance.errors import INFINITE_RESISTANCE, ArgumentError
from gasket_resistance.gasket_gen.cluster import cluster_diameter
from gasket_resistance.gasket_gen.pruning import dead_end_prune
from gasket_resistance.models.lattice import (
    CableMode,
    CableNetwork,
    ClusterGraph,
    EdgeMode,
    site_coords,
)
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Edge,
    Network,
    Tolerances,
    canonical_edge,
)
from gasket_resistance.network_core.resistance import effective_resistance
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)

# Gasket dimension of CLE_6
DEFAULT_DIMENSION = 91 / 48
MIN_EPS = 2.0
# Distance rows held in memory at once
_BATCH_CELLS = 1 << 22


def point_intensity(eps: float, d: float = DEFAULT_DIMENSION, c0: float = 0.05) -> float:
    """Poisson points per site, eps^-(d + c0)."""
    return float(eps ** (-(d + c0)))


def dead_end_scale(eps: float, diameter: float, a0: float = 0.25) -> float:
    """Pruning threshold (eps / D)^a0 * D in lattice steps."""
    if diameter <= 0:
        return 0.0
    return float((eps / diameter) ** a0 * diameter)


def _close_pairs(
    cluster: ClusterGraph, vertices: np.ndarray, eps: float
) -> Iterator[tuple[int, np.ndarray, np.ndarray, np.ndarray]]:
    """For each vertex v: (v's index, later vertex indices, their distances, v's distance row)."""
    positions = np.searchsorted(cluster.site_ids, vertices)
    batch = max(1, _BATCH_CELLS // max(cluster.size, 1))
    for start in range(0, len(vertices), batch):
        rows = np.atleast_2d(
            csgraph.dijkstra(
                cluster.adjacency,
                directed=False,
                indices=positions[start : start + batch],
                unweighted=True,
                limit=eps,
            )
        )
        for offset, row in enumerate(rows):
            i = start + offset
            later = np.arange(i + 1, len(vertices))
            dist = row[positions[later]]
            close = dist < eps
            yield i, later[close], dist[close], row


def _cable_path(cluster: ClusterGraph, dist_v: np.ndarray, w_pos: int) -> list[int]:
    """Positions of the cable from w back to v (dist_v is the BFS row of v).

    Among shortest paths the one whose site sequence read from w is
    lexicographically smallest is chosen.
    """
    adj = cluster.adjacency
    path = [w_pos]
    cur = w_pos
    while dist_v[cur] > 0:
        nbrs = adj.indices[adj.indptr[cur] : adj.indptr[cur + 1]]
        cur = int(nbrs[dist_v[nbrs] == dist_v[cur] - 1].min())
        path.append(cur)
    return path


def _merge_cables(
    graph: nx.Graph, sampled: set[int], edge_mode: EdgeMode
) -> tuple[list[int], list[tuple[int, int, float]], dict[Edge, float]]:
    """Collapse the union of cables into branch-point-to-branch-point chains."""
    special = sampled | {v for v in graph.nodes if graph.degree(v) != 2}
    visited: set[Edge] = set()
    chains: list[tuple[int, int, float]] = []
    lengths: dict[Edge, float] = {}
    for u in sorted(special):
        for first in sorted(graph.neighbors(u)):
            if canonical_edge(u, first) in visited:
                continue
            visited.add(canonical_edge(u, first))
            prev, cur, steps = u, first, 1
            while cur not in special:
                nxt = next(n for n in graph.neighbors(cur) if n != prev)
                visited.add(canonical_edge(cur, nxt))
                prev, cur, steps = cur, nxt, steps + 1
            if cur == u:
                continue
            resistance = float(steps) if edge_mode is EdgeMode.LENGTH else 1.0
            chains.append((u, cur, resistance))
            key = canonical_edge(u, cur)
            lengths[key] = min(lengths.get(key, math.inf), float(steps))
    return sorted(special), chains, lengths


def cable_approximation(
    cluster: ClusterGraph,
    eps: float,
    c0: float = 0.05,
    a0: float = 0.25,
    d: float = DEFAULT_DIMENSION,
    seed: int = 0,
    replica: int = 0,
    mode: CableMode | str = CableMode.DIRECT,
    edge_mode: EdgeMode | str = EdgeMode.LENGTH,
    intensity: float | None = None,
    prune: bool = True,
) -> CableNetwork:
    """Build the scale-eps cable network of a cluster.

    Args:
        cluster: Cluster to approximate
        eps: Scale in lattice steps (>= 2)
        c0: Intensity exponent offset
        a0: Dead-end scale exponent
        d: Target dimension entering the intensity
        seed: Seed of the Poisson sample
        replica: Replica index of the Poisson sample
        mode: `direct` or `merged` cables
        edge_mode: `length` or `unit` edge resistances
        intensity: Override of the points-per-site intensity
        prune: Whether to remove dead ends before sampling

    Returns:
        The cable network; it has no vertices when the sample is empty

    Raises:
        ArgumentError: If eps < 2 or a parameter is out of range
    """
    if eps < MIN_EPS:
        raise ArgumentError(f"eps must be >= {MIN_EPS} lattice steps, got {eps}")
    if d <= 0 or c0 <= 0 or a0 <= 0:
        raise ArgumentError("d, c0 and a0 must be positive")
    if intensity is not None and intensity < 0:
        raise ArgumentError(f"intensity must be >= 0, got {intensity}")
    mode = CableMode(mode)
    edge_mode = EdgeMode(edge_mode)

    diameter = cluster_diameter(cluster)
    scale = dead_end_scale(eps, diameter, a0) if prune else 0.0
    kept, removed = dead_end_prune(cluster, scale)
    kept_sites = np.array(sorted(kept), dtype=np.int64)
    lam = point_intensity(eps, d, c0) if intensity is None else float(intensity)

    rng = make_rng(seed, replica, Stream.POISSON)
    n_points = int(rng.poisson(lam * len(kept_sites)))
    if n_points > len(kept_sites):
        logger.warning(
            "cable eps=%g: %d points exceed the %d kept sites; every kept site is a vertex",
            eps, n_points, len(kept_sites),
        )
    n_vertices = min(n_points, len(kept_sites))
    sampled = np.sort(rng.choice(kept_sites, size=n_vertices, replace=False))
    logger.info(
        "cable eps=%g: %d points on %d sites (D=%d, s=%.3g, %d pruned)",
        eps, n_points, cluster.size, diameter, scale, len(removed),
    )

    lengths: dict[Edge, float] = {}
    if mode is CableMode.DIRECT:
        vertex_ids = [int(v) for v in sampled]
        edges: list[tuple[int, int, float]] = []
        for i, later, dist, _ in _close_pairs(cluster, sampled, eps):
            for j, length in zip(later.tolist(), dist.tolist()):
                v, w = vertex_ids[i], vertex_ids[j]
                edges.append((v, w, length if edge_mode is EdgeMode.LENGTH else 1.0))
                lengths[(v, w)] = float(length)
    else:
        union = nx.Graph()
        union.add_nodes_from(int(v) for v in sampled)
        sites = cluster.site_ids
        for i, later, _, row in _close_pairs(cluster, sampled, eps):
            for j in later.tolist():
                path = _cable_path(cluster, row, int(np.searchsorted(sites, sampled[j])))
                union.add_edges_from(zip(sites[path[:-1]].tolist(), sites[path[1:]].tolist()))
        vertex_ids, edges, lengths = _merge_cables(union, {int(v) for v in sampled}, edge_mode)

    network = Network.from_resistances(vertex_ids, edges)
    return CableNetwork(
        network=network,
        vertex_coords={v: site_coords(v, cluster.side) for v in vertex_ids},
        lengths=lengths,
        side=cluster.side,
        eps=eps,
        c0=c0,
        a0=a0,
        d=d,
        intensity=lam,
        point_count=n_points,
        dead_end_scale=scale,
        removed_sites=tuple(sorted(removed)),
        kept_count=len(kept_sites),
        mode=mode,
        edge_mode=edge_mode,
        seed=seed,
        cluster=cluster,
    )


def _require_cluster(cable: CableNetwork) -> ClusterGraph:
    if cable.cluster is None:
        raise ArgumentError("the cable network has no attached cluster")
    return cable.cluster


def nearest_cable_vertex(cable: CableNetwork, x: int) -> int | None:
    """Closest cable vertex within chemical distance < eps of site x (ties: smallest id)."""
    cluster = _require_cluster(cable)
    if x in cable.network:
        return x
    if cable.is_empty:
        return None
    dist = cluster.distances_from(x, limit=cable.eps)
    vertices = np.array(cable.network.vertex_ids, dtype=np.int64)
    d = dist[np.searchsorted(cluster.site_ids, vertices)]
    close = d < cable.eps
    if not np.any(close):
        return None
    order = np.lexsort((vertices[close], d[close]))
    return int(vertices[close][order[0]])


def _same_dead_end(cluster: ClusterGraph, removed: set[int], x: int, y: int) -> bool:
    mask = np.isin(cluster.site_ids, list(removed))
    dist = csgraph.dijkstra(
        cluster.induced_adjacency(mask), directed=False, indices=cluster.position(x), unweighted=True
    )
    return bool(np.isfinite(dist[cluster.position(y)]))


def cable_resistance_between_sites(
    cable: CableNetwork, x: int, y: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Cable resistance between two cluster sites via their nearest cable vertices.

    Sites in the same removed dead end are at resistance 0; sites with no
    cable vertex within eps give the infinite-resistance sentinel.
    """
    cluster = _require_cluster(cable)
    cluster.position(x)
    cluster.position(y)
    if x == y:
        return 0.0
    removed = set(cable.removed_sites)
    if x in removed and y in removed and _same_dead_end(cluster, removed, x, y):
        return 0.0
    vx = nearest_cable_vertex(cable, x)
    vy = nearest_cable_vertex(cable, y)
    if vx is None or vy is None:
        return INFINITE_RESISTANCE
    return effective_resistance(cable.network, vx, vy, tol)


def verify_cable(cable: CableNetwork, assert_tol: float = DEFAULT_TOLERANCES.assert_tol) -> list[str]:
    """Exhaustive check of the cable invariants; returns the violations found.

    Every edge must join vertices closer than eps by a cable at least as
    long as their chemical distance. In direct mode every close pair of
    sampled vertices must be an edge whose resistance is that distance.
    """
    cluster = _require_cluster(cable)
    problems: list[str] = []
    if cable.is_empty:
        return problems
    vertices = np.array(cable.network.vertex_ids, dtype=np.int64)
    close: dict[Edge, float] = {}
    for i, later, dist, _ in _close_pairs(cluster, vertices, cable.eps):
        for j, length in zip(later.tolist(), dist.tolist()):
            close[canonical_edge(int(vertices[i]), int(vertices[j]))] = length
    for u, v, _ in cable.network.edges():
        if (u, v) not in close:
            problems.append(f"edge ({u}, {v}) joins vertices at chemical distance >= eps")
            continue
        length = cable.lengths.get((u, v), math.inf)
        if length < close[(u, v)] - assert_tol:
            problems.append(f"cable ({u}, {v}) of length {length} is shorter than {close[(u, v)]}")
    if cable.mode is CableMode.DIRECT:
        for (u, v), length in close.items():
            w = cable.network.weight(u, v)
            if w == 0:
                problems.append(f"close pair ({u}, {v}) at distance {length} has no edge")
            elif cable.edge_mode is EdgeMode.LENGTH and abs(1.0 / w - length) > assert_tol:
                problems.append(f"edge ({u}, {v}) resistance {1.0 / w} != length {length}")
    return problems
