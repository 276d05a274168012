"""Scaling exponents: gasket dimension, resistance exponent, spectral dimension."""

from gasket_resistance.exponents.annulus import (
    MIN_MEDIAN_SAMPLES,
    ShellMetric,
    alpha_from_samples,
    annulus_resistance,
    annulus_samples,
    collect_annuli,
    default_eps_rule,
    eligible_centers,
    estimate_alpha,
    median_normalizer,
    median_ratios,
)
from gasket_resistance.exponents.fitting import bracket_flags, fit_dimension, fit_power_law
from gasket_resistance.exponents.spectral import (
    estimate_spectral_dimension,
    log_times,
    predicted_spectral_dimension,
    spectral_consistency,
    spectral_dimension,
)
from gasket_resistance.exponents.theory import KAPPA_PERCOLATION, theory_constants

__all__ = [
    "KAPPA_PERCOLATION",
    "MIN_MEDIAN_SAMPLES",
    "ShellMetric",
    "alpha_from_samples",
    "annulus_resistance",
    "annulus_samples",
    "bracket_flags",
    "collect_annuli",
    "default_eps_rule",
    "eligible_centers",
    "estimate_alpha",
    "estimate_spectral_dimension",
    "fit_dimension",
    "fit_power_law",
    "log_times",
    "median_normalizer",
    "median_ratios",
    "predicted_spectral_dimension",
    "spectral_consistency",
    "spectral_dimension",
    "theory_constants",
]
