"""Energies and effective resistances of finite networks."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from scipy import sparse

from gasket_resistance.errors import INFINITE_RESISTANCE, ArgumentError
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Network,
    PotentialFunction,
    ResistanceMatrix,
    Tolerances,
)
from gasket_resistance.solvers import get_solver

logger = logging.getLogger(__name__)


def dirichlet_form(net: Network, f: PotentialFunction, g: PotentialFunction) -> float:
    """Bilinear energy E(f, g) = 1/2 sum_{x,y} w(x,y)(f(x)-f(y))(g(x)-g(y))."""
    fv = f.on(net.vertex_ids)
    gv = g.on(net.vertex_ids)
    if net.n_edges == 0:
        return 0.0
    rows, cols, weights = net.edge_arrays
    return float(np.sum(weights * (fv[rows] - fv[cols]) * (gv[rows] - gv[cols])))


def dirichlet_energy(net: Network, f: PotentialFunction) -> float:
    """Energy E(f, f) of a potential; zero exactly for componentwise constants."""
    return dirichlet_form(net, f, f)


def markov_clamp(f: PotentialFunction) -> PotentialFunction:
    """Unit contraction (f v 0) ^ 1, which never increases the energy."""
    return PotentialFunction(values={v: min(max(x, 0.0), 1.0) for v, x in f.values.items()})


def _grounded_system(net: Network, members: np.ndarray, ground: int) -> tuple[sparse.csr_matrix, np.ndarray]:
    """Laplacian of the component `members` with row/column `ground` removed.

    Returns the reduced matrix and the network positions of its rows.
    """
    rows = members[members != ground]
    block = net.laplacian[rows][:, rows]
    return block, rows


def effective_resistance(
    net: Network, x: int, y: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Effective resistance R(x, y).

    Computed by grounding y, injecting a unit current at x and reading the
    potential of x. Vertices in different components have infinite
    resistance; R(x, x) = 0.
    """
    ix = net.position(x)
    iy = net.position(y)
    if ix == iy:
        return 0.0
    labels = net.component_labels
    if labels[ix] != labels[iy]:
        return INFINITE_RESISTANCE
    members = np.flatnonzero(labels == labels[ix])
    block, rows = _grounded_system(net, members, iy)
    rhs = (rows == ix).astype(float)
    potential = get_solver(len(rows), tol).solve(block, rhs)
    return float(potential[int(np.flatnonzero(rows == ix)[0])])


def resistance_matrix(
    net: Network, subset: Sequence[int], tol: Tolerances = DEFAULT_TOLERANCES
) -> ResistanceMatrix:
    """All-pairs effective resistance on `subset`.

    One grounded solve per component: with G the Green function grounded at
    a subset vertex z, R(a, b) = G(a,a) + G(b,b) - 2 G(a,b).
    """
    ordered = tuple(int(v) for v in subset)
    if len(set(ordered)) != len(ordered):
        raise ArgumentError("subset vertices must be pairwise distinct")
    positions = np.array([net.position(v) for v in ordered], dtype=np.int64)
    n = len(ordered)
    R = np.full((n, n), INFINITE_RESISTANCE)
    np.fill_diagonal(R, 0.0)
    labels = net.component_labels
    for label in np.unique(labels[positions]) if n else []:
        local = np.flatnonzero(labels[positions] == label)
        if len(local) < 2:
            continue
        ground = positions[local[0]]
        members = np.flatnonzero(labels == label)
        block, rows = _grounded_system(net, members, ground)
        row_of = {int(p): i for i, p in enumerate(rows)}
        targets = [row_of[int(positions[k])] for k in local[1:]]
        rhs = np.zeros((len(rows), len(targets)))
        rhs[targets, np.arange(len(targets))] = 1.0
        green = get_solver(len(rows), tol).solve(block, rhs)[targets, :]
        green = 0.5 * (green + green.T)
        full = np.zeros((len(local), len(local)))
        full[1:, 1:] = green
        diag = np.diag(full)
        block_R = diag[:, None] + diag[None, :] - 2.0 * full
        np.fill_diagonal(block_R, 0.0)
        R[np.ix_(local, local)] = block_R
    logger.debug("resistance matrix on %d vertices of a %d-vertex network", n, net.n_vertices)
    return ResistanceMatrix(vertex_ids=ordered, R=R)


def holder_bound(net: Network, f: PotentialFunction, x: int, y: int,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, float]:
    """Both sides of |f(x) - f(y)|^2 <= E(f, f) R(x, y)."""
    lhs = (f[x] - f[y]) ** 2
    resistance = effective_resistance(net, x, y, tol)
    if resistance == INFINITE_RESISTANCE:
        return lhs, INFINITE_RESISTANCE
    return lhs, dirichlet_energy(net, f) * resistance
