"""Traces onto vertex subsets and harmonic extensions."""

from __future__ import annotations

import logging
from collections.abc import Collection, Sequence

import numpy as np

from gasket_resistance.errors import ArgumentError, DisconnectedError, NumericalError
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Network,
    PotentialFunction,
    Tolerances,
    canonical_edge,
)
from gasket_resistance.network_core.resistance import dirichlet_form
from gasket_resistance.solvers import get_solver

logger = logging.getLogger(__name__)


def _ordered_subset(net: Network, B: Collection[int]) -> tuple[int, ...]:
    if not B:
        raise ArgumentError("the trace set B must be nonempty")
    ordered = tuple(dict.fromkeys(int(v) for v in B))
    for v in ordered:
        net.position(v)
    return ordered


def _clamp_conductances(
    pairs: dict[tuple[int, int], float], tol: Tolerances, what: str
) -> tuple[dict[tuple[int, int], float], int]:
    """Zero out slightly negative conductances; fail on genuinely negative ones."""
    clamped = 0
    kept: dict[tuple[int, int], float] = {}
    for edge, w in pairs.items():
        if w < -tol.assert_tol:
            raise NumericalError(f"{what}: conductance {w:.3e} on {edge} is negative")
        if w < 0:
            clamped += 1
            continue
        kept[edge] = w
    if clamped:
        logger.warning("%s: clamped %d slightly negative conductances to zero", what, clamped)
    return kept, clamped


def trace_network(
    net: Network, B: Collection[int], tol: Tolerances = DEFAULT_TOLERANCES
) -> Network:
    """Trace of the network onto B (Schur complement of the Laplacian).

    Only components that meet B are represented. Effective resistances
    between vertices of B are unchanged.
    """
    boundary = _ordered_subset(net, B)
    labels = net.component_labels
    boundary_pos = np.array([net.position(v) for v in boundary], dtype=np.int64)
    kept_labels = set(labels[boundary_pos].tolist())
    boundary_set = set(boundary_pos.tolist())
    interior_pos = np.array(
        [i for i in range(net.n_vertices) if i not in boundary_set and labels[i] in kept_labels],
        dtype=np.int64,
    )
    L = net.laplacian
    schur = L[boundary_pos][:, boundary_pos].toarray()
    if len(interior_pos):
        L_ib = L[interior_pos][:, boundary_pos].toarray()
        L_ii = L[interior_pos][:, interior_pos]
        solution = get_solver(len(interior_pos), tol).solve(L_ii, L_ib)
        schur = schur - L_ib.T @ solution
    schur = 0.5 * (schur + schur.T)
    pairs: dict[tuple[int, int], float] = {}
    for i in range(len(boundary)):
        for j in range(i + 1, len(boundary)):
            if -schur[i, j] != 0:
                pairs[canonical_edge(boundary[i], boundary[j])] = float(-schur[i, j])
    conductance, clamped = _clamp_conductances(pairs, tol, "trace")
    logger.debug(
        "trace onto %d of %d vertices (%d eliminated)", len(boundary), net.n_vertices, len(interior_pos)
    )
    return Network(vertex_ids=boundary, conductance=conductance, clamped=clamped)


def harmonic_extension(
    net: Network,
    B: Collection[int],
    g: PotentialFunction,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> PotentialFunction:
    """Energy-minimising extension of boundary data g from B to all vertices.

    The result solves the weighted mean-value equation off B, and equals the
    expectation of g at the first hitting point of B.
    """
    boundary = _ordered_subset(net, B)
    g_boundary = g.on(boundary)
    labels = net.component_labels
    boundary_pos = np.array([net.position(v) for v in boundary], dtype=np.int64)
    touched = set(labels[boundary_pos].tolist())
    boundary_set = set(boundary_pos.tolist())
    interior = [i for i in range(net.n_vertices) if i not in boundary_set]
    for i in interior:
        if labels[i] not in touched:
            raise DisconnectedError(net.vertex_ids[i])
    values = np.zeros(net.n_vertices)
    values[boundary_pos] = g_boundary
    if interior:
        interior_pos = np.array(interior, dtype=np.int64)
        L = net.laplacian
        rhs = -(L[interior_pos][:, boundary_pos] @ g_boundary)
        values[interior_pos] = get_solver(len(interior_pos), tol).solve(
            L[interior_pos][:, interior_pos], rhs
        )
    return PotentialFunction.from_array(net.vertex_ids, values)


def trace_weights_by_polarization(
    net: Network, B: Sequence[int], tol: Tolerances = DEFAULT_TOLERANCES
) -> Network:
    """Trace conductances as w_B(x, y) = -E(h_x, h_y), h_x the harmonic delta at x."""
    boundary = _ordered_subset(net, B)
    meets = {c for c in net.components() if not c.isdisjoint(boundary)}
    net = net.subnetwork(v for v in net.vertex_ids if any(v in c for c in meets))
    deltas = [
        harmonic_extension(
            net, boundary, PotentialFunction(values={b: float(b == x) for b in boundary}), tol
        )
        for x in boundary
    ]
    pairs: dict[tuple[int, int], float] = {}
    for i in range(len(boundary)):
        for j in range(i + 1, len(boundary)):
            w = -dirichlet_form(net, deltas[i], deltas[j])
            if w != 0:
                pairs[canonical_edge(boundary[i], boundary[j])] = w
    conductance, clamped = _clamp_conductances(pairs, tol, "polarization trace")
    return Network(vertex_ids=boundary, conductance=conductance, clamped=clamped)
