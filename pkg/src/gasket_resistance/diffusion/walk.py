"""Exact simulation of the mu-symmetric jump process.

At x the process waits an exponential time of rate mu_0(x)/mu(x), with
mu_0(x) = sum_y w(x, y), then jumps to y with probability w(x, y)/mu_0(x).
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Collection
from typing import Literal, overload

import numpy as np

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.diffusion import SpeedMeasure, Trajectory, WalkStatistics
from gasket_resistance.models.network import Network
from gasket_resistance.utils.rng import Stream, UniformBuffer, make_rng

logger = logging.getLogger(__name__)

MAX_STORED_JUMPS = 10_000_000


class JumpTable:
    """Per-vertex holding rates and cumulative jump distributions."""

    def __init__(self, net: Network, mu: SpeedMeasure | None = None) -> None:
        matrix = net.weight_matrix
        self.net = net
        self.indptr = matrix.indptr
        self.indices = matrix.indices
        self.degree = net.degree
        self.cumulative = np.empty_like(matrix.data)
        for row in range(net.n_vertices):
            lo, hi = self.indptr[row], self.indptr[row + 1]
            self.cumulative[lo:hi] = np.cumsum(matrix.data[lo:hi])
        masses = mu.on(net.vertex_ids) if mu is not None else np.ones(net.n_vertices)
        self.rate = self.degree / masses

    def start(self, vertex: int) -> int:
        position = self.net.position(vertex)
        if self.degree[position] <= 0:
            raise ArgumentError(f"vertex {vertex} is isolated; the walk cannot move")
        return position

    def jump(self, position: int, u: float) -> int:
        """Next position given a uniform draw u in [0, 1)."""
        lo, hi = self.indptr[position], self.indptr[position + 1]
        k = int(np.searchsorted(self.cumulative[lo:hi], u * self.degree[position], side="right"))
        return int(self.indices[lo + min(k, hi - lo - 1)])


@overload
def simulate_walk(
    net: Network, mu: SpeedMeasure, x0: int, t_max: float, seed: int,
    replica: int = ..., store: Literal[True] = ..., max_jumps: int = ...,
) -> Trajectory: ...


@overload
def simulate_walk(
    net: Network, mu: SpeedMeasure, x0: int, t_max: float, seed: int,
    replica: int = ..., store: Literal[False] = ..., max_jumps: int = ...,
) -> WalkStatistics: ...


def simulate_walk(
    net: Network,
    mu: SpeedMeasure,
    x0: int,
    t_max: float,
    seed: int,
    replica: int = 0,
    store: bool = True,
    max_jumps: int = MAX_STORED_JUMPS,
) -> Trajectory | WalkStatistics:
    """Simulate the walk from x0 on [0, t_max].

    With store=False only the occupation times, jump count and final state
    are kept, so runs of any length fit in memory.

    Raises:
        ArgumentError: If x0 is isolated, t_max <= 0, or a stored path would
            exceed `max_jumps` jumps
    """
    if t_max <= 0:
        raise ArgumentError(f"t_max must be positive, got {t_max}")
    table = JumpTable(net, mu)
    position = table.start(x0)
    draws = UniformBuffer(make_rng(seed, replica, Stream.WALK))
    times: list[float] = [0.0]
    states: list[int] = [position]
    occupation = np.zeros(net.n_vertices)
    n_jumps = 0
    t = 0.0
    while True:
        hold = draws.exponential() / table.rate[position]
        if t + hold >= t_max:
            occupation[position] += t_max - t
            break
        occupation[position] += hold
        t += hold
        position = table.jump(position, draws.uniform())
        n_jumps += 1
        if store:
            if n_jumps > max_jumps:
                raise ArgumentError(
                    f"walk exceeds {max_jumps} stored jumps",
                    hint="simulate with store=False to stream statistics",
                )
            times.append(t)
            states.append(position)
    logger.debug("walk from %d: %d jumps up to t=%g", x0, n_jumps, t_max)
    labels = net.vertex_ids
    if not store:
        return WalkStatistics(
            n_jumps=n_jumps,
            occupation={labels[i]: float(occupation[i]) for i in np.flatnonzero(occupation)},
            final_state=labels[position],
            t_max=t_max,
            seed=seed,
        )
    return Trajectory(
        times=times, states=[labels[s] for s in states], t_max=t_max, seed=seed
    )


def trace_walk(traj: Trajectory, B: Collection[int]) -> Trajectory:
    """Time change of a path onto B: time spent off B is cut out and
    consecutive visits to the same vertex of B are joined.

    A path that never visits B gives an empty trajectory.
    """
    if not B:
        raise ArgumentError("the trace set B must be nonempty")
    keep = np.isin(traj.states, list(B))
    if not np.any(keep):
        return Trajectory.empty(seed=traj.seed)
    holds = traj.holding_times()[keep]
    states = traj.states[keep]
    starts = np.concatenate([[0.0], np.cumsum(holds)[:-1]])
    new_run = np.concatenate([[True], states[1:] != states[:-1]])
    return Trajectory(
        times=starts[new_run],
        states=states[new_run],
        t_max=float(np.sum(holds)),
        seed=traj.seed,
    )


def occupation_fractions(traj: Trajectory | WalkStatistics) -> dict[int, float]:
    """Fraction of the observation window spent at each visited vertex."""
    if isinstance(traj, WalkStatistics):
        return traj.fractions()
    if traj.is_empty or traj.t_max <= 0:
        return {}
    totals: dict[int, float] = {}
    for state, hold in zip(traj.states.tolist(), traj.holding_times().tolist()):
        totals[state] = totals.get(state, 0.0) + hold
    return {v: t / traj.t_max for v, t in sorted(totals.items())}


def transition_counts(traj: Trajectory) -> Counter[tuple[int, int]]:
    """Number of jumps along each ordered pair (u, v)."""
    return Counter(zip(traj.states[:-1].tolist(), traj.states[1:].tolist()))
