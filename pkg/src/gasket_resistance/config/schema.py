"""Configuration schema definitions."""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gasket_resistance.diffusion.heat_kernel import KernelMethod
from gasket_resistance.exponents.annulus import ShellMetric
from gasket_resistance.models.diffusion import MeasureRule
from gasket_resistance.models.lattice import CableMode, EdgeMode
from gasket_resistance.models.network import Tolerances


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _increasing(values: list[float], name: str) -> list[float]:
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    return values


class RunConfig(_Section):
    """Settings shared by every command."""

    seed: int = Field(default=0, ge=0, description="Global seed all random streams derive from")
    output_dir: Path = Field(default=Path("gasket-output"), description="Directory for results")
    threads: int = Field(default=1, ge=1, description="Worker processes for replica tasks")


class ToleranceConfig(_Section):
    """Numerical tolerances."""

    solve_tol: float = Field(default=1e-10, gt=0, description="Relative residual of iterative solves")
    assert_tol: float = Field(default=1e-9, gt=0, description="Absolute tolerance of identity checks")
    dense_max_vertices: int = Field(default=4096, ge=1, description="Largest dense Cholesky system")

    def to_tolerances(self) -> Tolerances:
        return Tolerances(**self.model_dump())


class CableSettings(_Section):
    """Cable-graph construction parameters shared by several commands."""

    c0: float = Field(default=0.05, gt=0, description="Intensity exponent offset")
    a0: float = Field(default=0.25, gt=0, description="Dead-end scale exponent")
    mode: CableMode = Field(default=CableMode.DIRECT, description="direct or merged cables")
    edge_mode: EdgeMode = Field(default=EdgeMode.LENGTH, description="length or unit resistances")
    prune: bool = Field(default=True, description="Remove dead ends below s(eps)")
    intensity: float | None = Field(default=None, ge=0, description="Override of points per site")


class GenerateConfig(CableSettings):
    """`generate`: percolation clusters and their cable networks."""

    sizes: list[int] = Field(default_factory=lambda: [64], min_length=1, description="Lattice sides L")
    p: float = Field(default=0.5, ge=0, le=1, description="Site-open probability")
    replicas: int = Field(default=1, ge=1, description="Configurations per size")
    eps: list[float] = Field(default_factory=list, description="Cable scales; empty for clusters only")
    crossing_samples: int = Field(default=0, ge=0, description="Samples for the crossing estimate")

    @field_validator("sizes")
    @classmethod
    def _sizes(cls, value: list[int]) -> list[int]:
        if any(size < 2 for size in value):
            raise ValueError("lattice sides must be >= 2")
        return value

    @field_validator("eps")
    @classmethod
    def _eps(cls, value: list[float]) -> list[float]:
        if any(e < 2 for e in value):
            raise ValueError("eps must be >= 2 lattice steps")
        return value


class ResistConfig(CableSettings):
    """`resist`: resistances of network files and annuli of cluster snapshots."""

    networks: list[Path] = Field(default_factory=list, description="NET files to solve")
    subset: list[int] = Field(default_factory=list, description="Vertices of the resistance table")
    snapshots: list[Path] = Field(default_factory=list, description="Cluster snapshot files")
    scales: list[float] = Field(default_factory=lambda: [8.0, 16.0], description="Annulus inner radii")
    eps: float | None = Field(default=None, ge=2, description="Cable scale; None for max(2, scale/4)")
    n_centers: int = Field(default=16, ge=1, description="Annuli per scale and snapshot")
    metric: ShellMetric = Field(default=ShellMetric.CHEMICAL, description="chemical or euclidean shells")

    @field_validator("scales")
    @classmethod
    def _scales(cls, value: list[float]) -> list[float]:
        if any(s <= 0 for s in value):
            raise ValueError("scales must be positive")
        return _increasing(value, "scales")


class WalkConfig(_Section):
    """`walk`: trajectories and return probabilities."""

    network: Path | None = Field(default=None, description="NET or cable file to walk on")
    start: int | None = Field(default=None, description="Start vertex; None for the smallest label")
    tmax: float = Field(default=10.0, gt=0, description="Length of each trajectory")
    replicas: int = Field(default=1, ge=1, description="Independent trajectories")
    mu: MeasureRule = Field(default=MeasureRule.COUNT, description="Speed measure: count or degree")
    times: list[float] = Field(
        default_factory=lambda: [0.1, 1.0, 10.0], description="Return-probability time grid"
    )
    method: KernelMethod = Field(default=KernelMethod.AUTO, description="auto, eigen or mc")
    mc_samples: int = Field(default=10_000, ge=1, description="Walks per Monte Carlo estimate")
    store: bool = Field(default=True, description="Write trajectories, not only statistics")

    @field_validator("times")
    @classmethod
    def _times(cls, value: list[float]) -> list[float]:
        if not value or any(t < 0 for t in value):
            raise ValueError("times must be a nonempty list of nonnegative values")
        return _increasing(value, "times")


class ExponentsConfig(CableSettings):
    """`exponents`: dimension, resistance exponent and spectral dimension."""

    kappa: float = Field(default=6.0, gt=4, lt=8, description="CLE parameter kappa'")
    sizes: list[int] = Field(default_factory=lambda: [128], min_length=1, description="Lattice sides")
    scales: list[float] = Field(
        default_factory=lambda: [4.0, 8.0, 16.0], min_length=3, description="Dyadic annulus radii"
    )
    replicas: int = Field(default=4, ge=1, description="Clusters per size")
    radii: list[int] = Field(
        default_factory=lambda: [2, 4, 8, 16, 32], min_length=3, description="Ball radii"
    )
    volume_centers: int = Field(default=32, ge=1, description="Ball centers per cluster")
    n_centers: int = Field(default=16, ge=1, description="Annuli per scale and cable")
    min_samples: int = Field(default=10, ge=1, description="Valid annuli needed per scale")
    metric: ShellMetric = Field(default=ShellMetric.CHEMICAL, description="Annulus shell metric")
    spectral: bool = Field(default=True, description="Also fit the spectral dimension")
    spectral_eps: float = Field(default=2.0, ge=2, description="Cable scale of the walk networks")
    t_range: tuple[float, float] = Field(default=(1.0, 100.0), description="Return-probability times")
    n_starts: int = Field(default=4, ge=1, description="Walk starts per network")
    dimension_band: tuple[float, float] = Field(default=(1.75, 2.0), description="Acceptance band of d")
    alpha_band: tuple[float, float] = Field(default=(0.4, 1.7), description="Loose band of alpha")
    ratio_band: tuple[float, float] = Field(
        default=(2**0.5, 2**1.6), description="Band of the dyadic median ratio"
    )
    spectral_tolerance: float = Field(default=0.15, gt=0, description="Allowed |d_s - 2d/(d+alpha)|")

    @model_validator(mode="after")
    def _ranges(self) -> ExponentsConfig:
        _increasing(self.scales, "scales")
        _increasing([float(r) for r in self.radii], "radii")
        for name in ("t_range", "dimension_band", "alpha_band", "ratio_band"):
            low, high = getattr(self, name)
            if not low < high:
                raise ValueError(f"{name} must be an increasing pair")
        return self


class VerifyConfig(_Section):
    """`verify`: randomized property suite."""

    fixtures: int = Field(default=50, ge=1, description="Random fixtures per property")
    max_vertices: int = Field(default=8, ge=3, description="Largest random fixture")
    mc_samples: int = Field(default=4000, ge=10, description="Samples per Monte Carlo check")
    sigmas: float = Field(default=4.0, gt=0, description="Monte Carlo acceptance in standard errors")
    inject_non_metric: bool = Field(default=False, description="Run the non-metric negative control")
    slow: bool = Field(default=False, description="Include the lattice-scale crossing check")
    crossing_sizes: list[int] = Field(default_factory=lambda: [32, 64], description="Crossing lattices")
    crossing_samples: int = Field(default=2000, ge=1, description="Crossing replicas per size")


class Config(BaseModel):
    """Main configuration of the gasket command."""

    model_config = ConfigDict(extra="forbid")

    run: RunConfig = Field(default_factory=RunConfig, description="Global run settings")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig, description="Tolerances")
    generate: GenerateConfig = Field(default_factory=GenerateConfig, description="generate")
    resist: ResistConfig = Field(default_factory=ResistConfig, description="resist")
    walk: WalkConfig = Field(default_factory=WalkConfig, description="walk")
    exponents: ExponentsConfig = Field(default_factory=ExponentsConfig, description="exponents")
    verify: VerifyConfig = Field(default_factory=VerifyConfig, description="verify")
