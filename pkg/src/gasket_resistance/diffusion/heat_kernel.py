"""Heat kernel of the mu-symmetric generator.

The generator is -M^{-1} L with M = diag(mu) and L the graph Laplacian.
Its kernel is taken as a density against mu,

    p(t, x, y) = P_x[X_t = y] / mu(y),

so p is symmetric in (x, y) and p(0, x, x) = 1/mu(x).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from enum import Enum

import numpy as np
from scipy import linalg

from gasket_resistance.diffusion.walk import JumpTable
from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.diffusion import SpeedMeasure
from gasket_resistance.models.network import Network
from gasket_resistance.utils.rng import Stream, UniformBuffer, make_rng

logger = logging.getLogger(__name__)

EIGEN_MAX_VERTICES = 2000


class KernelMethod(str, Enum):
    AUTO = "auto"
    EIGEN = "eigen"
    MONTE_CARLO = "mc"


def _check_times(times: Sequence[float]) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ArgumentError("times must be a nonempty list")
    if np.any(t < 0) or np.any(np.diff(t) <= 0):
        raise ArgumentError("times must be nonnegative and strictly increasing")
    return t


def _spectrum(net: Network, mu: SpeedMeasure) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenpairs of M^{-1/2} L M^{-1/2} together with sqrt(mu)."""
    root = np.sqrt(mu.on(net.vertex_ids))
    L = net.laplacian.toarray()
    symmetric = L / root[:, None] / root[None, :]
    eigenvalues, eigenvectors = linalg.eigh(symmetric)
    return np.clip(eigenvalues, 0.0, None), eigenvectors, root


def heat_kernel(net: Network, mu: SpeedMeasure, times: Sequence[float]) -> np.ndarray:
    """Full kernel p(t, x, y) for every t, shaped (len(times), n, n) in vertex order."""
    t = _check_times(times)
    eigenvalues, vectors, root = _spectrum(net, mu)
    kernels = np.empty((t.size, net.n_vertices, net.n_vertices))
    for k, tk in enumerate(t):
        kernels[k] = (vectors * np.exp(-tk * eigenvalues)) @ vectors.T
        kernels[k] /= root[:, None] * root[None, :]
    return kernels


def transition_matrix(net: Network, mu: SpeedMeasure, t: float) -> np.ndarray:
    """P_t(x, y) = P_x[X_t = y]; rows sum to one."""
    kernel = heat_kernel(net, mu, [t])[0]
    return kernel * mu.on(net.vertex_ids)[None, :]


def detailed_balance_deviation(net: Network, mu: SpeedMeasure, times: Sequence[float]) -> float:
    """Largest |mu(x) P_t(x, y) - mu(y) P_t(y, x)| over all pairs and times."""
    masses = mu.on(net.vertex_ids)
    worst = 0.0
    for tk in _check_times(times):
        flow = masses[:, None] * transition_matrix(net, mu, float(tk))
        worst = max(worst, float(np.max(np.abs(flow - flow.T))))
    return worst


def _return_probability_eigen(net: Network, mu: SpeedMeasure, x: int, t: np.ndarray) -> np.ndarray:
    eigenvalues, vectors, root = _spectrum(net, mu)
    row = vectors[net.position(x)] ** 2
    return np.exp(-np.outer(t, eigenvalues)) @ row / root[net.position(x)] ** 2


def _return_probability_mc(
    net: Network, mu: SpeedMeasure, x: int, t: np.ndarray, n_samples: int, seed: int, replica: int
) -> np.ndarray:
    """Fraction of independent walks sitting at x at each time, divided by mu(x)."""
    table = JumpTable(net, mu)
    origin = table.start(x)
    draws = UniformBuffer(make_rng(seed, replica, Stream.WALK))
    at_origin = np.zeros(t.size)
    for _ in range(n_samples):
        position, clock, k = origin, 0.0, 0
        while k < t.size:
            clock += draws.exponential() / table.rate[position]
            while k < t.size and t[k] < clock:
                at_origin[k] += position == origin
                k += 1
            position = table.jump(position, draws.uniform())
    return at_origin / n_samples / mu.mu[x]


def return_probability(
    net: Network,
    mu: SpeedMeasure,
    x: int,
    times: Sequence[float],
    method: KernelMethod | str = KernelMethod.AUTO,
    n_samples: int = 10_000,
    seed: int = 0,
    replica: int = 0,
) -> list[float]:
    """On-diagonal heat kernel p(t, x, x) at each of `times`.

    The automatic method diagonalises the generator up to 2000 vertices and
    switches to a Monte Carlo occupation estimate above that.
    """
    t = _check_times(times)
    chosen = KernelMethod(method)
    if chosen is KernelMethod.AUTO:
        chosen = KernelMethod.EIGEN if net.n_vertices <= EIGEN_MAX_VERTICES else KernelMethod.MONTE_CARLO
    logger.debug("return probability at %d on %d vertices via %s", x, net.n_vertices, chosen.value)
    if chosen is KernelMethod.EIGEN:
        values = _return_probability_eigen(net, mu, x, t)
    else:
        if n_samples < 1:
            raise ArgumentError("n_samples must be >= 1")
        values = _return_probability_mc(net, mu, x, t, n_samples, seed, replica)
    return [float(v) for v in values]
