"""Recovery of edge conductances from a resistance metric."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from gasket_resistance.errors import ArgumentError, NotAResistanceMetricError, NumericalError
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Network,
    ResistanceMatrix,
    Tolerances,
    canonical_edge,
)

logger = logging.getLogger(__name__)

# Green matrices worse conditioned than this are treated as singular
_MAX_CONDITION = 1e12
# Leverage w(x, y) * R(x, y) below this many times eps * cond(G) is rounding noise
_NOISE_FACTOR = 10.0


def green_matrix(Rm: ResistanceMatrix) -> np.ndarray:
    """Green function grounded at the first vertex z0.

    G(x, y) = (R(x, z0) + R(y, z0) - R(x, y)) / 2 on the remaining vertices.
    """
    R = Rm.R
    return 0.5 * (R[1:, 0][:, None] + R[0, 1:][None, :] - R[1:, 1:])


def weights_from_resistance(Rm: ResistanceMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Network:
    """Conductances of the unique network whose effective resistance is `Rm`.

    The grounded Laplacian is the inverse of the Green matrix: w(x, y) is
    minus its off-diagonal entry and w(x, z0) its row sum. An entry whose
    leverage w(x, y) * R(x, y) (a number in [0, 1] for every true edge) is
    within the inversion's rounding error eps * cond(G) is read as no edge,
    whatever its sign.

    Raises:
        NotAResistanceMetricError: If a recovered conductance is below -assert_tol
        NumericalError: If the Green matrix is singular
    """
    labels = Rm.vertex_ids
    n = len(labels)
    if n <= 1:
        return Network(vertex_ids=labels)
    if not np.all(np.isfinite(Rm.R)):
        raise ArgumentError("resistance metric must be finite to recover conductances")
    G = green_matrix(Rm)
    G = 0.5 * (G + G.T)
    condition = np.linalg.cond(G)
    if not np.isfinite(condition) or condition > _MAX_CONDITION:
        raise NumericalError(f"Green matrix is singular (condition number {condition:.3e})")
    try:
        L = scipy.linalg.inv(G)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Green matrix could not be inverted: {exc}") from exc
    L = 0.5 * (L + L.T)

    R = Rm.R
    floor = _NOISE_FACTOR * np.finfo(float).eps * condition
    recovered: dict[tuple[int, int], float] = {}
    noise = 0
    row_sums = L.sum(axis=1)
    for i in range(n - 1):
        # column 0 of R is the ground z0
        entries = [(0, float(row_sums[i]))]
        entries += [(j + 1, float(-L[i, j])) for j in range(i + 1, n - 1)]
        for k, w in entries:
            if abs(w) * R[i + 1, k] <= floor:
                noise += 1
                continue
            recovered[canonical_edge(labels[i + 1], labels[k])] = w
    if noise:
        logger.debug("dropped %d recovered conductances at rounding level (leverage <= %.3g)", noise, floor)
    if not recovered:
        return Network(vertex_ids=labels)

    worst_edge, worst = min(recovered.items(), key=lambda item: item[1])
    if worst < -tol.assert_tol:
        raise NotAResistanceMetricError(
            f"not a resistance metric: recovered conductance {worst:.6g} on {worst_edge}"
        )
    clamped = sum(1 for w in recovered.values() if w < 0)
    if clamped:
        logger.warning("clamped %d slightly negative recovered conductances to zero", clamped)
    conductance = {edge: w for edge, w in recovered.items() if w > 0}
    return Network(vertex_ids=labels, conductance=conductance, clamped=clamped)
