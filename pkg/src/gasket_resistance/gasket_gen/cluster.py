"""Chemical-distance queries on clusters."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.lattice import ClusterGraph, VolumeProfile
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)


def chemical_ball(cluster: ClusterGraph, x: int, r: int) -> frozenset[int]:
    """All cluster sites within chemical distance r of x."""
    if r < 0:
        raise ArgumentError(f"ball radius must be >= 0, got {r}")
    dist = cluster.distances_from(x, limit=r)
    return frozenset(cluster.site_ids[np.isfinite(dist)].tolist())


def eccentricity(cluster: ClusterGraph, x: int) -> tuple[int, int]:
    """(farthest site, its chemical distance) from x, farthest ties broken by smallest id."""
    dist = cluster.distances_from(x)
    finite = np.where(np.isfinite(dist), dist, -1.0)
    far = int(np.argmax(finite))
    return int(cluster.site_ids[far]), int(finite[far])


def cluster_diameter(cluster: ClusterGraph, start: int | None = None) -> int:
    """Double-sweep estimate of the chemical diameter.

    A lower bound that is exact on trees and tight in practice on
    percolation clusters.
    """
    if cluster.size <= 1:
        return 0
    first = int(cluster.site_ids[0]) if start is None else start
    a, _ = eccentricity(cluster, first)
    _, diameter = eccentricity(cluster, a)
    return diameter


def volume_profile(
    cluster: ClusterGraph,
    radii: Sequence[int],
    n_centers: int,
    seed: int,
    replica: int = 0,
) -> VolumeProfile:
    """Chemical-ball sizes |B(x, r)| for randomly sampled centers x."""
    radii = [int(r) for r in radii]
    if not radii or radii[0] < 0 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ArgumentError("radii must be non-negative and strictly increasing")
    if n_centers < 1:
        raise ArgumentError("n_centers must be >= 1")
    rng = make_rng(seed, replica, Stream.CENTERS)
    picks = rng.choice(cluster.size, size=min(n_centers, cluster.size), replace=False)
    centers = cluster.site_ids[np.sort(picks)]
    counts = np.empty((len(centers), len(radii)), dtype=np.int64)
    for i, center in enumerate(centers):
        dist = cluster.distances_from(int(center), limit=radii[-1])
        reached = np.sort(dist[np.isfinite(dist)])
        counts[i] = np.searchsorted(reached, radii, side="right")
    logger.debug("volume profile: %d centers x %d radii", len(centers), len(radii))
    return VolumeProfile(
        radii=tuple(radii),
        centers=tuple(int(c) for c in centers),
        counts=counts,
        cluster_size=cluster.size,
    )
