"""Power-law fits on log-log data."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Sequence

import numpy as np
from scipy import stats

from gasket_resistance.errors import ArgumentError, InsufficientDataError
from gasket_resistance.models.exponents import ExponentFit, TheoryConstants
from gasket_resistance.models.lattice import VolumeProfile

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 3
MIN_R_SQUARED = 0.9


def fit_power_law(
    scales: Sequence[float], values: Sequence[float], name: str = "fit"
) -> ExponentFit:
    """Ordinary least squares of log(value) on log(scale).

    Raises:
        ArgumentError: If fewer than three points are given, lengths differ,
            or a scale or value is not positive and finite
    """
    x = np.asarray(scales, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ArgumentError("scales and values must be flat lists of equal length")
    if x.size < MIN_FIT_POINTS:
        raise ArgumentError(f"a fit needs at least {MIN_FIT_POINTS} points, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y)) and np.all(x > 0) and np.all(y > 0)):
        raise ArgumentError("scales and values must be positive and finite")
    if np.unique(x).size < 2:
        raise ArgumentError("scales must not all coincide")
    result = stats.linregress(np.log(x), np.log(y))
    r_squared = float(result.rvalue) ** 2
    warnings = []
    if r_squared < MIN_R_SQUARED and np.ptp(np.log(y)) > 0:
        warnings.append(f"r^2 = {r_squared:.3f} below {MIN_R_SQUARED}: not a clean power law")
    fit = ExponentFit(
        name=name,
        scales=tuple(x.tolist()),
        values=tuple(y.tolist()),
        slope=float(result.slope),
        intercept=float(result.intercept),
        stderr=float(result.stderr),
        r_squared=r_squared,
        warnings=tuple(warnings),
    )
    logger.debug("%s: slope %.4f +- %.4f (r2 %.4f)", name, fit.slope, fit.stderr, r_squared)
    return fit


def fit_dimension(
    profiles: Sequence[VolumeProfile],
    r_range: tuple[float, float] | None = None,
    theory: TheoryConstants | None = None,
) -> ExponentFit:
    """Dimension estimate from the median ball volume per radius.

    Centers of all profiles are pooled per radius. With `theory` given, a
    warning is attached when d_cle falls outside slope +- 2 stderr.

    Raises:
        InsufficientDataError: If fewer than three radii fall in `r_range`
        ArgumentError: If the pooled profiles are degenerate
    """
    pooled: dict[int, list[int]] = defaultdict(list)
    for profile in profiles:
        for j, radius in enumerate(profile.radii):
            if radius <= 0:
                continue
            if r_range is not None and not r_range[0] <= radius <= r_range[1]:
                continue
            pooled[radius].extend(profile.counts[:, j].tolist())
    radii = sorted(r for r, counts in pooled.items() if counts)
    if len(radii) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"dimension fit needs {MIN_FIT_POINTS} radii in range, got {len(radii)}"
        )
    medians = [float(np.median(pooled[r])) for r in radii]
    if np.ptp(medians) == 0:
        raise ArgumentError("ball volumes do not grow with the radius; profiles are degenerate")
    fit = fit_power_law(radii, medians, name="dimension")
    if theory is not None and not fit.intersects(theory.d_cle, theory.d_cle):
        fit = fit.model_copy(
            update={"warnings": (*fit.warnings, f"d_cle = {theory.d_cle:.4f} outside slope +- 2 stderr")}
        )
    return fit


def bracket_flags(fit: ExponentFit, theory: TheoryConstants, loose: tuple[float, float]) -> dict[str, bool]:
    """Whether slope +- 2 stderr meets [d_double, d_sle] and the loose band."""
    return {
        "in_bracket": fit.intersects(theory.d_double, theory.d_sle),
        "in_loose_band": fit.intersects(*loose),
    }
