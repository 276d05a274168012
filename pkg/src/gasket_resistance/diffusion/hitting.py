"""Hitting probabilities and commute times."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from gasket_resistance.diffusion.walk import JumpTable
from gasket_resistance.errors import (
    INFINITE_RESISTANCE,
    ArgumentError,
    DisconnectedError,
    PreconditionError,
)
from gasket_resistance.models.diffusion import HittingQuery, SpeedMeasure
from gasket_resistance.models.exponents import Estimate
from gasket_resistance.models.network import DEFAULT_TOLERANCES, Network, PotentialFunction, Tolerances
from gasket_resistance.network_core.resistance import effective_resistance
from gasket_resistance.network_core.topology import separates
from gasket_resistance.network_core.trace import harmonic_extension
from gasket_resistance.utils.rng import Stream, UniformBuffer, make_rng

logger = logging.getLogger(__name__)


class ChainIdentity(NamedTuple):
    """Hitting probability at an interior chain point and its resistance ratio."""

    vertex: int
    probability: float
    ratio: float


class CommuteEstimate(NamedTuple):
    value: float
    stderr: float
    expected: float


def _component_of(net: Network, vertex: int) -> Network:
    labels = net.component_labels
    label = labels[net.position(vertex)]
    return net.subnetwork(v for v, lab in zip(net.vertex_ids, labels.tolist()) if lab == label)


def _reduce_to_start_component(net: Network, q: HittingQuery) -> tuple[Network, set[int], set[int]]:
    """Component of the start vertex with the targets it contains."""
    for v in q.target_a | q.target_b:
        net.position(v)
    component = _component_of(net, q.start)
    a = {v for v in q.target_a if v in component}
    b = {v for v in q.target_b if v in component}
    if not a and not b:
        raise DisconnectedError(q.start, f"vertex {q.start} cannot reach either target set")
    return component, a, b


def hitting_probability_solve(
    net: Network, q: HittingQuery, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """P_start[hit A before B], the harmonic extension of 1_A from A u B."""
    if q.start in q.target_a:
        return 1.0
    if q.start in q.target_b:
        return 0.0
    sub, a, b = _reduce_to_start_component(net, q)
    if not b:
        return 1.0
    if not a:
        return 0.0
    boundary = sorted(a | b)
    g = PotentialFunction(values={v: float(v in a) for v in boundary})
    value = harmonic_extension(sub, boundary, g, tol)[q.start]
    return min(max(value, 0.0), 1.0)


def hitting_probability_mc(
    net: Network,
    mu: SpeedMeasure,
    q: HittingQuery,
    n_samples: int,
    seed: int,
    replica: int = 0,
) -> Estimate:
    """Monte Carlo estimate of P_start[hit A before B] with binomial standard error.

    Only the jump chain matters for the order of hits, so holding times
    are not drawn.
    """
    if n_samples < 1:
        raise ArgumentError("n_samples must be >= 1")
    if q.start in q.target_a or q.start in q.target_b:
        return Estimate(value=float(q.start in q.target_a), stderr=0.0)
    _reduce_to_start_component(net, q)
    table = JumpTable(net, mu)
    origin = table.start(q.start)
    in_a = np.zeros(net.n_vertices, dtype=bool)
    in_b = np.zeros(net.n_vertices, dtype=bool)
    in_a[[net.position(v) for v in q.target_a]] = True
    in_b[[net.position(v) for v in q.target_b]] = True
    draws = UniformBuffer(make_rng(seed, replica, Stream.HITTING))
    hits = 0
    for _ in range(n_samples):
        position = origin
        while not (in_a[position] or in_b[position]):
            position = table.jump(position, draws.uniform())
        hits += int(in_a[position])
    p_hat = hits / n_samples
    return Estimate(value=p_hat, stderr=math.sqrt(p_hat * (1.0 - p_hat) / n_samples))


def chain_hitting_identity(
    net: Network, chain: Sequence[int], tol: Tolerances = DEFAULT_TOLERANCES
) -> list[ChainIdentity]:
    """For each interior chain point x_i, P_{x_i}[hit x_{i-1} before x_{i+1}]
    next to R(x_i, x_{i+1}) / R(x_{i-1}, x_{i+1}).

    Raises:
        PreconditionError: If some x_i does not separate its neighbours in the chain
    """
    if len(chain) < 3:
        raise ArgumentError("a chain needs at least three points")
    results = []
    for prev, mid, nxt in zip(chain, chain[1:], chain[2:]):
        if not separates(net, prev, nxt, [mid]):
            raise PreconditionError(f"{mid} does not separate {prev} from {nxt}")
        q = HittingQuery(start=mid, target_a=frozenset({prev}), target_b=frozenset({nxt}))
        probability = hitting_probability_solve(net, q, tol)
        ratio = effective_resistance(net, mid, nxt, tol) / effective_resistance(net, prev, nxt, tol)
        results.append(ChainIdentity(vertex=mid, probability=probability, ratio=ratio))
    return results


def _hitting_time(table: JumpTable, start: int, target: int, draws: UniformBuffer) -> float:
    position, elapsed = start, 0.0
    while position != target:
        elapsed += draws.exponential() / table.rate[position]
        position = table.jump(position, draws.uniform())
    return elapsed


def commute_time_estimate(
    net: Network,
    mu: SpeedMeasure,
    x: int,
    y: int,
    n_samples: int,
    seed: int,
    replica: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> CommuteEstimate:
    """Monte Carlo E_x[sigma_y] + E_y[sigma_x] next to its exact value R(x, y) mu(V).

    mu(V) is the total mass of the component holding x and y.
    """
    if x == y:
        raise ArgumentError("commute time needs two distinct vertices")
    if n_samples < 2:
        raise ArgumentError("n_samples must be >= 2")
    if not net.same_component(x, y):
        raise ArgumentError(f"{x} and {y} lie in different components")
    component = _component_of(net, x)
    resistance = effective_resistance(component, x, y, tol)
    expected = resistance * float(mu.on(component.vertex_ids).sum())

    table = JumpTable(component, mu)
    ix, iy = table.start(x), table.start(y)
    draws = UniformBuffer(make_rng(seed, replica, Stream.COMMUTE))
    samples = np.array(
        [_hitting_time(table, ix, iy, draws) + _hitting_time(table, iy, ix, draws) for _ in range(n_samples)]
    )
    stderr = float(samples.std(ddof=1) / math.sqrt(n_samples))
    logger.debug("commute %d<->%d: %.4g +- %.2g (exact %.4g)", x, y, samples.mean(), stderr, expected)
    return CommuteEstimate(value=float(samples.mean()), stderr=stderr, expected=expected)


def commute_time_check(
    net: Network,
    mu: SpeedMeasure | None,
    x: int,
    y: int,
    n_samples: int,
    seed: int,
    sigmas: float = 4.0,
) -> bool:
    """Whether the simulated commute time is within `sigmas` standard errors of R(x, y) mu(V).

    mu defaults to mu_0, the constant-speed walk.
    """
    measure = mu if mu is not None else SpeedMeasure.degree(_component_of(net, x))
    estimate = commute_time_estimate(net, measure, x, y, n_samples, seed)
    return abs(estimate.value - estimate.expected) <= sigmas * estimate.stderr
