"""Annulus crossing resistances and the resistance exponent.

The annulus around a center c at scale r is the region between the inner
shell {d(c, v) <= r} and the outer shell {d(c, v) >= ratio * r}. Each shell
is glued to a single node and the effective resistance between the two
nodes is measured. Distances are chemical (cluster graph distance) unless
the euclidean metric (hex distance on the lattice) is chosen.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Mapping, Sequence
from enum import Enum
from functools import partial
from typing import Any

import numpy as np

from gasket_resistance.errors import INFINITE_RESISTANCE, ArgumentError, InsufficientDataError
from gasket_resistance.exponents.fitting import MIN_FIT_POINTS, fit_power_law
from gasket_resistance.gasket_gen.cable import cable_approximation
from gasket_resistance.models.exponents import AnnulusSample, AnnulusStatus, ExponentFit
from gasket_resistance.models.lattice import CableMode, CableNetwork, ClusterGraph, EdgeMode, hex_distance
from gasket_resistance.models.network import DEFAULT_TOLERANCES, Network, Tolerances
from gasket_resistance.network_core.resistance import effective_resistance
from gasket_resistance.utils.pool import run_tasks
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)

MIN_MEDIAN_SAMPLES = 10
SHELL_RATIO = 2.0


class ShellMetric(str, Enum):
    CHEMICAL = "chemical"
    EUCLIDEAN = "euclidean"


def default_eps_rule(scale: float) -> float:
    """Cable scale used for annuli of inner radius `scale`."""
    return max(2.0, scale / 4.0)


def _vertex_distances(cable: CableNetwork, center: int, limit: float, metric: ShellMetric) -> np.ndarray:
    vertices = np.array(cable.network.vertex_ids, dtype=np.int64)
    if metric is ShellMetric.EUCLIDEAN:
        cq, cr = center % cable.side, center // cable.side
        return np.asarray(hex_distance(vertices % cable.side - cq, vertices // cable.side - cr), dtype=float)
    if cable.cluster is None:
        raise ArgumentError(
            "chemical shells need the underlying cluster",
            hint="read the cable together with its cluster snapshot, or use euclidean shells",
        )
    cluster = cable.cluster
    dist = cluster.distances_from(center, limit=limit)
    return dist[np.searchsorted(cluster.site_ids, vertices)]


def _glue_shells(net: Network, inner: list[int], outer: list[int]) -> tuple[Network, int, int]:
    """Network with each shell contracted to its smallest label."""
    a, b = min(inner), min(outer)
    relabel = dict.fromkeys(inner, a) | dict.fromkeys(outer, b)
    keep = [v for v in net.vertex_ids if v not in relabel or v in (a, b)]
    edges = ((relabel.get(u, u), relabel.get(v, v), w) for u, v, w in net.edges())
    return Network.from_edges(keep, edges), a, b


def annulus_resistance(
    cable: CableNetwork,
    center: int,
    r_in: float,
    r_out: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    metric: ShellMetric | str = ShellMetric.CHEMICAL,
) -> AnnulusSample:
    """Resistance between the glued inner and outer shells around `center`.

    An empty shell gives a NO_DATA sample with nan resistance; shells in
    different components give DISCONNECTED with infinite resistance.
    """
    r_out = SHELL_RATIO * r_in if r_out is None else r_out
    if not 0 < r_in < r_out:
        raise ArgumentError(f"need 0 < r_in < r_out, got {r_in}, {r_out}")
    metric = ShellMetric(metric)
    q, r = center % cable.side, center // cable.side

    def sample(resistance: float, status: AnnulusStatus) -> AnnulusSample:
        return AnnulusSample(
            scale=r_in, center=center, center_q=q, center_r=r, resistance=resistance, status=status
        )

    if cable.is_empty:
        return sample(math.nan, AnnulusStatus.NO_DATA)
    dist = _vertex_distances(cable, center, r_out, metric)
    vertices = cable.network.vertex_ids
    inner = [v for v, x in zip(vertices, dist.tolist()) if x <= r_in]
    outer = [v for v, x in zip(vertices, dist.tolist()) if x >= r_out]
    if not inner or not outer:
        return sample(math.nan, AnnulusStatus.NO_DATA)
    glued, a, b = _glue_shells(cable.network, inner, outer)
    resistance = effective_resistance(glued, a, b, tol)
    if resistance == INFINITE_RESISTANCE:
        return sample(INFINITE_RESISTANCE, AnnulusStatus.DISCONNECTED)
    return sample(resistance, AnnulusStatus.OK)


def eligible_centers(cable: CableNetwork, r_out: float) -> np.ndarray:
    """Cable vertices whose distance to the lattice boundary is at least r_out."""
    vertices = np.array(cable.network.vertex_ids, dtype=np.int64)
    q, r = vertices % cable.side, vertices // cable.side
    hi = cable.side - 1 - r_out
    inside = (q >= r_out) & (q <= hi) & (r >= r_out) & (r <= hi)
    return vertices[inside]


def annulus_samples(
    cable: CableNetwork,
    scale: float,
    n_centers: int,
    seed: int,
    replica: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    metric: ShellMetric | str = ShellMetric.CHEMICAL,
) -> list[AnnulusSample]:
    """Annulus resistances at `scale` around up to `n_centers` random centers."""
    if n_centers < 1:
        raise ArgumentError("n_centers must be >= 1")
    r_out = SHELL_RATIO * scale
    candidates = eligible_centers(cable, r_out)
    if candidates.size == 0:
        logger.warning("no center at distance %g from the boundary at scale %g", r_out, scale)
        return []
    rng = make_rng(seed, replica, Stream.CENTERS)
    chosen = np.sort(rng.choice(candidates, size=min(n_centers, candidates.size), replace=False))
    return [annulus_resistance(cable, int(c), scale, r_out, tol, metric) for c in chosen.tolist()]


def median_normalizer(
    samples: Sequence[float] | Sequence[AnnulusSample], min_samples: int = MIN_MEDIAN_SAMPLES
) -> float:
    """Median of the valid resistance samples at one scale.

    Raises:
        InsufficientDataError: If fewer than `min_samples` valid samples are given
    """
    values = [
        s.resistance if isinstance(s, AnnulusSample) else float(s)
        for s in samples
        if not isinstance(s, AnnulusSample) or s.status is AnnulusStatus.OK
    ]
    values = [v for v in values if math.isfinite(v)]
    if len(values) < min_samples:
        raise InsufficientDataError(
            f"median needs at least {min_samples} samples, got {len(values)}"
        )
    return float(np.median(values))


def median_ratios(medians: Mapping[float, float]) -> dict[float, float]:
    """m(2r)/m(r) for each scale r whose double is also present."""
    return {r: medians[2 * r] / medians[r] for r in sorted(medians) if 2 * r in medians}


def alpha_from_samples(
    samples_by_scale: Mapping[float, Sequence[AnnulusSample] | Sequence[float]],
    min_samples: int = MIN_MEDIAN_SAMPLES,
) -> tuple[ExponentFit, dict[float, float]]:
    """Fit of the median resistance per scale; scales without enough data are dropped.

    Returns:
        The fit and the medians it was computed from

    Raises:
        InsufficientDataError: If fewer than three scales survive
    """
    medians: dict[float, float] = {}
    dropped = []
    for scale in sorted(samples_by_scale):
        try:
            medians[scale] = median_normalizer(samples_by_scale[scale], min_samples)
        except InsufficientDataError as exc:
            logger.warning("dropping scale %g: %s", scale, exc)
            dropped.append(scale)
    if len(medians) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"resistance fit needs {MIN_FIT_POINTS} scales with data, got {len(medians)}"
        )
    fit = fit_power_law(list(medians), list(medians.values()), name="alpha")
    if dropped:
        note = "dropped scales without enough annuli: " + ", ".join(f"{s:g}" for s in dropped)
        fit = fit.model_copy(update={"warnings": (*fit.warnings, note)})
    return fit, medians


def _scale_samples(
    task: tuple[int, ClusterGraph, float, int],
    eps_rule: Callable[[float], float],
    n_centers: int,
    cable_options: Mapping[str, object],
    metric: ShellMetric,
    tol: Tolerances,
) -> tuple[float, list[AnnulusSample]]:
    index, cluster, scale, seed = task
    cable = cable_approximation(cluster, eps_rule(scale), seed=seed, replica=index, **cable_options)  # type: ignore[arg-type]
    return scale, annulus_samples(cable, scale, n_centers, seed, index, tol, metric)


def collect_annuli(
    clusters: Sequence[ClusterGraph],
    scales: Sequence[float],
    eps_rule: Callable[[float], float] = default_eps_rule,
    seeds: Sequence[int] = (0,),
    n_centers: int = 16,
    mode: CableMode | str = CableMode.DIRECT,
    edge_mode: EdgeMode | str = EdgeMode.LENGTH,
    metric: ShellMetric | str = ShellMetric.CHEMICAL,
    prune: bool = True,
    intensity: float | None = None,
    c0: float = 0.05,
    a0: float = 0.25,
    threads: int = 1,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> dict[float, list[AnnulusSample]]:
    """Annulus samples per scale, pooled over clusters and seeds.

    Every (cluster, seed) pair gives one cable network per scale, built at
    eps = eps_rule(scale) with the cluster index as replica.
    """
    tasks = [
        (index, cluster, float(scale), seed)
        for index, cluster in enumerate(clusters)
        for seed in seeds
        for scale in scales
    ]
    options = {
        "mode": CableMode(mode),
        "edge_mode": EdgeMode(edge_mode),
        "prune": prune,
        "intensity": intensity,
        "c0": c0,
        "a0": a0,
    }
    worker = partial(
        _scale_samples,
        eps_rule=eps_rule,
        n_centers=n_centers,
        cable_options=options,
        metric=ShellMetric(metric),
        tol=tol,
    )
    pooled: dict[float, list[AnnulusSample]] = {float(s): [] for s in scales}
    for scale, samples in run_tasks(worker, tasks, threads):
        pooled[scale].extend(samples)
    return pooled


def estimate_alpha(
    clusters: Sequence[ClusterGraph],
    scales: Sequence[float],
    eps_rule: Callable[[float], float] = default_eps_rule,
    seeds: Sequence[int] = (0,),
    min_samples: int = MIN_MEDIAN_SAMPLES,
    **options: Any,
) -> ExponentFit:
    """Resistance exponent from median annulus resistances across scales.

    Keyword options are passed to `collect_annuli`.
    """
    if len(scales) < MIN_FIT_POINTS:
        raise ArgumentError(f"need at least {MIN_FIT_POINTS} scales, got {len(scales)}")
    fit, medians = alpha_from_samples(
        collect_annuli(clusters, scales, eps_rule, seeds, **options), min_samples
    )
    logger.info("alpha = %.4f +- %.4f from %d scales", fit.slope, fit.stderr, len(medians))
    return fit
