"""Closed-form exponents of CLE gaskets."""

from __future__ import annotations

from gasket_resistance.errors import ArgumentError
from gasket_resistance.models.exponents import TheoryConstants

KAPPA_PERCOLATION = 6.0


def theory_constants(kappa_prime: float = KAPPA_PERCOLATION) -> TheoryConstants:
    """Gasket, double-point and SLE dimensions for kappa' in (4, 8).

    Raises:
        ArgumentError: If kappa' lies outside (4, 8)
    """
    k = float(kappa_prime)
    if not 4.0 < k < 8.0:
        raise ArgumentError(f"kappa' must lie in (4, 8), got {kappa_prime}")
    return TheoryConstants(
        kappa_prime=k,
        d_cle=2.0 - (8.0 - k) * (3.0 * k - 8.0) / (32.0 * k),
        d_double=2.0 - (12.0 - k) * (4.0 + k) / (8.0 * k),
        d_sle=1.0 + 2.0 / k,
    )
