"""Site percolation on the triangular lattice."""

from __future__ import annotations

import functools
import logging
import math

import numpy as np
from scipy.sparse import csgraph

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.exponents import Estimate
from gasket_resistance.models.lattice import ClusterGraph, LatticeConfig, lattice_adjacency
from gasket_resistance.utils.pool import run_tasks
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)

# Critical site density of the triangular lattice
CRITICAL_P = 0.5


def sample_percolation(side: int, p: float, seed: int, replica: int = 0) -> LatticeConfig:
    """Open each site of the L x L rhombus independently with probability p."""
    if side < 2:
        raise ArgumentError(f"lattice side must be >= 2, got {side}")
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"open probability must lie in [0, 1], got {p}")
    rng = make_rng(seed, replica, Stream.LATTICE)
    bitmap = rng.random(side * side) < p
    return LatticeConfig(side=side, p=p, seed=seed, open=bitmap)


def _cluster_labels(cfg: LatticeConfig) -> tuple[np.ndarray, np.ndarray]:
    """Open site ids and their component labels under six-neighbour adjacency."""
    sites = cfg.open_sites()
    if len(sites) == 0:
        return sites, np.zeros(0, dtype=np.int64)
    _, labels = csgraph.connected_components(lattice_adjacency(cfg.side, sites), directed=False)
    return sites, np.asarray(labels, dtype=np.int64)


def extract_clusters(cfg: LatticeConfig) -> list[ClusterGraph]:
    """Connected clusters of open sites, largest first (ties by smallest site id)."""
    sites, labels = _cluster_labels(cfg)
    if len(sites) == 0:
        return []
    order = np.argsort(labels, kind="stable")
    boundaries = np.flatnonzero(np.diff(labels[order])) + 1
    groups = np.split(sites[order], boundaries)
    groups.sort(key=lambda members: (-len(members), int(members.min())))
    logger.debug("extracted %d clusters from %d open sites", len(groups), len(sites))
    return [ClusterGraph(side=cfg.side, site_ids=members) for members in groups]


def largest_cluster(cfg: LatticeConfig) -> ClusterGraph | None:
    clusters = extract_clusters(cfg)
    return clusters[0] if clusters else None


def has_crossing(cfg: LatticeConfig) -> bool:
    """Whether an open cluster joins the q = 0 and q = L - 1 sides of the rhombus."""
    sites, labels = _cluster_labels(cfg)
    if len(sites) == 0:
        return False
    q = sites % cfg.side
    left = set(labels[q == 0].tolist())
    right = set(labels[q == cfg.side - 1].tolist())
    return not left.isdisjoint(right)


def _crossing_replica(replica: int, side: int, p: float, seed: int) -> bool:
    return has_crossing(sample_percolation(side, p, seed, replica))


def crossing_probability(
    side: int, p: float, n_samples: int, seed: int, threads: int = 1
) -> Estimate:
    """Monte Carlo left-right crossing probability with its binomial standard error."""
    if n_samples < 1:
        raise ArgumentError("n_samples must be >= 1")
    task = functools.partial(_crossing_replica, side=side, p=p, seed=seed)
    hits = sum(run_tasks(task, list(range(n_samples)), threads))
    p_hat = hits / n_samples
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / n_samples)
    logger.info("crossing probability L=%d p=%.4f: %.4f +- %.4f", side, p, p_hat, stderr)
    return Estimate(value=p_hat, stderr=stderr)
