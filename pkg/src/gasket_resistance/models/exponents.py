"""Models for Monte Carlo estimates and exponent fits."""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Estimate(NamedTuple):
    """A Monte Carlo estimate with its standard error."""

    value: float
    stderr: float

    def within(self, target: float, sigmas: float = 4.0) -> bool:
        """Whether `target` lies within `sigmas` standard errors of the estimate."""
        return abs(self.value - target) <= sigmas * self.stderr


class ExponentFit(BaseModel):
    """Ordinary least squares fit of log(value) against log(scale)."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(default="fit", description="Quantity being fitted")
    scales: tuple[float, ...] = Field(..., description="Scales entering the fit")
    values: tuple[float, ...] = Field(..., description="Observed values per scale")
    slope: float = Field(..., description="Fitted exponent")
    intercept: float = Field(..., description="Fitted log-prefactor")
    stderr: float = Field(..., ge=0, description="Standard error of the slope")
    r_squared: float = Field(..., description="Coefficient of determination")
    warnings: tuple[str, ...] = Field(default=(), description="Reliability notes")

    @model_validator(mode="after")
    def _lengths(self) -> ExponentFit:
        if len(self.scales) != len(self.values):
            raise ValueError("scales and values must have equal length")
        return self

    @property
    def reliable(self) -> bool:
        return not self.warnings

    def interval(self, width: float = 2.0) -> tuple[float, float]:
        """slope +- width * stderr."""
        return self.slope - width * self.stderr, self.slope + width * self.stderr

    def intersects(self, low: float, high: float, width: float = 2.0) -> bool:
        lo, hi = self.interval(width)
        return lo <= high and hi >= low

    def as_row(self) -> dict[str, object]:
        return {
            "name": self.name,
            "slope": self.slope,
            "stderr": self.stderr,
            "r2": self.r_squared,
            "scales": list(self.scales),
            "values": list(self.values),
        }


class TheoryConstants(BaseModel):
    """Closed-form exponents for a CLE parameter kappa' in (4, 8)."""

    model_config = ConfigDict(frozen=True)

    kappa_prime: float = Field(..., gt=4, lt=8, description="CLE parameter")
    d_cle: float = Field(..., description="Gasket dimension")
    d_double: float = Field(..., description="Double-point dimension, lower end of the alpha bracket")
    d_sle: float = Field(..., description="SLE curve dimension, upper end of the alpha bracket")

    @model_validator(mode="after")
    def _bracket(self) -> TheoryConstants:
        if not self.d_double < self.d_sle:
            raise ValueError("d_double must be below d_sle")
        return self

    def spectral_dimension(self, alpha: float) -> float:
        """2 d / (d + alpha) for this gasket dimension."""
        return 2.0 * self.d_cle / (self.d_cle + alpha)

    def ratio_bracket(self) -> tuple[float, float]:
        """Expected range of the dyadic median ratio m(2r)/m(r)."""
        return math.pow(2.0, self.d_double), math.pow(2.0, self.d_sle)


class AnnulusStatus(str, Enum):
    """Outcome of one annulus resistance measurement."""

    OK = "ok"
    NO_DATA = "no_data"
    DISCONNECTED = "disconnected"


class AnnulusSample(BaseModel):
    """Resistance across one annulus of a cable network."""

    model_config = ConfigDict(frozen=True)

    scale: float = Field(..., gt=0, description="Inner radius r_in")
    center: int = Field(..., description="Center site id")
    center_q: int = Field(..., description="Axial q of the center")
    center_r: int = Field(..., description="Axial r of the center")
    resistance: float = Field(..., description="Resistance between the glued shells (nan without data)")
    status: AnnulusStatus = Field(..., description="ok, no_data or disconnected")

    def as_row(self) -> tuple[float, int, int, float, str]:
        return (self.scale, self.center_q, self.center_r, self.resistance, self.status.value)
