"""Gluing, contraction and the series/parallel laws."""

from __future__ import annotations

import itertools
from collections.abc import Collection
from typing import NamedTuple

from gasket_resistance.errors import (
    INFINITE_RESISTANCE,
    ArgumentError,
    NumericalError,
    PreconditionError,
)
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Edge,
    Network,
    Tolerances,
    canonical_edge,
)
from gasket_resistance.network_core.resistance import effective_resistance, resistance_matrix
from gasket_resistance.network_core.topology import reachable_avoiding, separates


class ParallelLawBound(NamedTuple):
    """Both sides of R(x,y)^-1 <= sum_i R_Kx(x,z_i)^-1."""

    lhs: float
    rhs: float
    holds: bool


def _inverse(resistance: float) -> float:
    return 0.0 if resistance == INFINITE_RESISTANCE else 1.0 / resistance


def glue_overlapping(net1: Network, net2: Network, shared: Collection[int]) -> Network:
    """Glue two networks along a finite shared vertex set.

    Conductances between two shared vertices add; every other edge is
    inherited from the network it belongs to; no edge joins the two private
    parts. Energies decompose as E = E1 + E2.
    """
    shared_set = set(shared)
    overlap = set(net1.vertex_ids) & set(net2.vertex_ids)
    if not shared_set:
        raise ArgumentError("the shared vertex set must be nonempty")
    if overlap != shared_set:
        raise ArgumentError(
            f"vertex sets intersect in {sorted(overlap)}, expected exactly {sorted(shared_set)}"
        )
    conductance: dict[Edge, float] = dict(net1.conductance)
    for edge, w in net2.conductance.items():
        conductance[edge] = conductance.get(edge, 0.0) + w
    vertex_ids = net1.vertex_ids + tuple(v for v in net2.vertex_ids if v not in shared_set)
    return Network(vertex_ids=vertex_ids, conductance=conductance)


def glue_at_cut_point(net1: Network, net2: Network, z: int) -> Network:
    """Glue two networks at a single common vertex z, which becomes a cut point."""
    return glue_overlapping(net1, net2, {z})


def contract_pair(net: Network, x0: int, y0: int) -> Network:
    """Merge y0 into x0 (conductance of the pair set to infinity).

    The merged vertex keeps the label x0; edges incident to y0 move to x0
    and combine in parallel with existing ones.
    """
    net.position(x0)
    net.position(y0)
    if x0 == y0:
        raise ArgumentError("cannot contract a vertex with itself")
    conductance: dict[Edge, float] = {}
    for u, v, w in net.edges():
        u = x0 if u == y0 else u
        v = x0 if v == y0 else v
        if u == v:
            continue
        key = canonical_edge(u, v)
        conductance[key] = conductance.get(key, 0.0) + w
    vertex_ids = tuple(v for v in net.vertex_ids if v != y0)
    return Network(vertex_ids=vertex_ids, conductance=conductance)


def contraction_slack(
    net: Network, x0: int, y0: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Largest R(x,y) - R'(x,y) - 1/w(x0,y0) over all pairs (<= 0 when the bound holds).

    R' is the resistance after contracting (x0, y0). Returns -inf when
    w(x0, y0) = 0, since the bound is then infinite.
    """
    w0 = net.weight(x0, y0)
    if w0 == 0:
        return -INFINITE_RESISTANCE
    merged = contract_pair(net, x0, y0)
    before = resistance_matrix(net, net.vertex_ids, tol)
    after = resistance_matrix(merged, merged.vertex_ids, tol)
    worst = -INFINITE_RESISTANCE
    for x, y in itertools.combinations(net.vertex_ids, 2):
        r_before = before.value(x, y)
        r_after = after.value(x0 if x == y0 else x, x0 if y == y0 else y)
        if r_after == INFINITE_RESISTANCE:
            continue
        worst = max(worst, r_before - r_after - 1.0 / w0)
    return worst


def contraction_bound_holds(
    net: Network, x0: int, y0: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether R(x,y) <= R'(x,y) + 1/w(x0,y0) for every pair."""
    return contraction_slack(net, x0, y0, tol) <= tol.assert_tol


def parallel_law_bound(
    net: Network,
    x: int,
    y: int,
    separators: Collection[int],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ParallelLawBound:
    """Generalised parallel law for a vertex set separating x from y.

    K_x is the network induced on the vertices not strictly separated from x,
    that is everything reachable from x without crossing the separators,
    together with the separators.

    Raises:
        PreconditionError: If the separators do not separate x from y
    """
    zs = list(dict.fromkeys(separators))
    if not separates(net, x, y, zs):
        raise PreconditionError(f"{sorted(zs)} does not separate {x} from {y}")
    side = reachable_avoiding(net, x, zs)
    k_x = net.subnetwork([v for v in net.vertex_ids if v in side or v in zs])
    lhs = _inverse(effective_resistance(net, x, y, tol))
    rhs = sum(_inverse(effective_resistance(k_x, x, z, tol)) for z in zs)
    return ParallelLawBound(lhs=lhs, rhs=rhs, holds=lhs <= rhs + tol.assert_tol)


def series_decompose(
    net: Network, x: int, z: int, y: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Check the series law R(x,y) = R(x,z) + R(z,y) at a cut vertex z.

    Returns False when z does not separate x from y.

    Raises:
        NumericalError: If z separates but the identity fails beyond tolerance
    """
    if len({x, y, z}) < 3 or not separates(net, x, y, [z]):
        return False
    if not net.same_component(x, z) or not net.same_component(z, y):
        return False
    total = effective_resistance(net, x, y, tol)
    parts = effective_resistance(net, x, z, tol) + effective_resistance(net, z, y, tol)
    if abs(total - parts) > tol.assert_tol * max(1.0, total):
        raise NumericalError(f"series law violated: R={total!r} but R(x,z)+R(z,y)={parts!r}")
    return True
