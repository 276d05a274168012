"""Data models for networks, clusters, walks and estimates."""

from gasket_resistance.models.diffusion import (
    HittingQuery,
    MeasureRule,
    SpeedMeasure,
    Trajectory,
    WalkStatistics,
)
from gasket_resistance.models.exponents import (
    AnnulusSample,
    AnnulusStatus,
    Estimate,
    ExponentFit,
    TheoryConstants,
)
from gasket_resistance.models.lattice import (
    CableMode,
    CableNetwork,
    ClusterGraph,
    EdgeMode,
    LatticeConfig,
    VolumeProfile,
)
from gasket_resistance.models.network import (
    DEFAULT_TOLERANCES,
    Edge,
    Network,
    PotentialFunction,
    ResistanceMatrix,
    Tolerances,
    canonical_edge,
)
from gasket_resistance.models.run import CheckResult, CheckStatus, RunManifest, VerifyReport

__all__ = [
    "DEFAULT_TOLERANCES",
    "AnnulusSample",
    "AnnulusStatus",
    "CableMode",
    "CableNetwork",
    "CheckResult",
    "CheckStatus",
    "ClusterGraph",
    "Edge",
    "EdgeMode",
    "Estimate",
    "ExponentFit",
    "HittingQuery",
    "LatticeConfig",
    "MeasureRule",
    "Network",
    "PotentialFunction",
    "ResistanceMatrix",
    "RunManifest",
    "SpeedMeasure",
    "TheoryConstants",
    "Tolerances",
    "Trajectory",
    "VerifyReport",
    "WalkStatistics",
    "canonical_edge",
]
