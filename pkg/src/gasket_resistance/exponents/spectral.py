"""Spectral dimension from the decay of the return probability.

p(t, x, x) ~ t^(-d_s / 2), so the fitted log-log slope is -d_s / 2.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from gasket_resistance.diffusion.heat_kernel import KernelMethod, return_probability
from gasket_resistance.errors import ArgumentError
from gasket_resistance.exponents.fitting import fit_power_law
from gasket_resistance.models.diffusion import MeasureRule, SpeedMeasure
from gasket_resistance.models.exponents import Estimate, ExponentFit
from gasket_resistance.models.lattice import CableNetwork
from gasket_resistance.models.network import Network
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)

EQUILIBRIUM_MARGIN = 0.1


def _largest_component(net: Network) -> Network:
    if net.n_vertices == 0:
        return net
    return net.subnetwork(sorted(net.components()[0]))


def log_times(t_range: tuple[float, float], n_times: int = 16) -> list[float]:
    """Log-spaced times across t_range, which must span at least a decade."""
    t_min, t_max = t_range
    if not 0 < t_min < t_max:
        raise ArgumentError(f"need 0 < t_min < t_max, got {t_range}")
    if t_max < 10 * t_min:
        raise ArgumentError(f"t_range {t_range} spans less than one decade")
    return np.geomspace(t_min, t_max, n_times).tolist()


def estimate_spectral_dimension(
    nets: Sequence[CableNetwork | Network],
    mu_rule: MeasureRule | str = MeasureRule.COUNT,
    t_range: tuple[float, float] = (1.0, 100.0),
    seeds: Sequence[int] = (0,),
    n_starts: int = 4,
    n_times: int = 16,
    method: KernelMethod | str = KernelMethod.AUTO,
    n_samples: int = 2000,
) -> ExponentFit:
    """Fit of the mean return probability against time.

    For every network (its largest component) and seed, `n_starts` start
    vertices are drawn and p(t, x, x) is evaluated on a log grid of
    `t_range`. The fit carries a warning when r^2 < 0.9 or when the last
    value is within 10% of the equilibrium level 1/mu(V).
    """
    times = log_times(t_range, n_times)
    curves = []
    equilibrium = []
    for index, item in enumerate(nets):
        net = _largest_component(item.network if isinstance(item, CableNetwork) else item)
        if net.n_edges == 0:
            logger.warning("network %d has no edges; skipped", index)
            continue
        mu = SpeedMeasure.for_rule(net, mu_rule)
        equilibrium.append(1.0 / mu.total)
        for seed in seeds:
            rng = make_rng(seed, index, Stream.CENTERS)
            starts = rng.choice(np.array(net.vertex_ids), size=min(n_starts, net.n_vertices), replace=False)
            for x in sorted(starts.tolist()):
                curves.append(return_probability(net, mu, x, times, method, n_samples, seed, index))
    if not curves:
        raise ArgumentError("no network with edges to fit")
    mean_curve = np.mean(curves, axis=0)
    observed = mean_curve > 0
    fit = fit_power_law(
        np.asarray(times)[observed].tolist(), mean_curve[observed].tolist(), name="return_probability"
    )
    notes = list(fit.warnings)
    if not np.all(observed):
        notes.append(f"{int(np.sum(~observed))} times without a single return were left out")
    floor = float(np.mean(equilibrium))
    if mean_curve[-1] <= (1.0 + EQUILIBRIUM_MARGIN) * floor:
        notes.append("return probability has reached its equilibrium level 1/mu(V)")
    return fit.model_copy(update={"warnings": tuple(notes)})


def spectral_dimension(fit: ExponentFit) -> Estimate:
    """d_s = -2 * slope of the return-probability fit."""
    return Estimate(value=-2.0 * fit.slope, stderr=2.0 * fit.stderr)


def predicted_spectral_dimension(dimension: float, alpha: float) -> float:
    """2 d / (d + alpha)."""
    if dimension + alpha <= 0:
        raise ArgumentError("d + alpha must be positive")
    return 2.0 * dimension / (dimension + alpha)


def spectral_consistency(fit: ExponentFit, dimension: float, alpha: float) -> float:
    """|d_s - 2 d / (d + alpha)| with d and alpha fitted in the same run."""
    return abs(spectral_dimension(fit).value - predicted_spectral_dimension(dimension, alpha))
