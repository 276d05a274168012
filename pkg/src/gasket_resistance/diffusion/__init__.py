"""The symmetric jump process on a weighted network."""

from gasket_resistance.diffusion.heat_kernel import (
    EIGEN_MAX_VERTICES,
    KernelMethod,
    detailed_balance_deviation,
    heat_kernel,
    return_probability,
    transition_matrix,
)
from gasket_resistance.diffusion.hitting import (
    ChainIdentity,
    CommuteEstimate,
    chain_hitting_identity,
    commute_time_check,
    commute_time_estimate,
    hitting_probability_mc,
    hitting_probability_solve,
)
from gasket_resistance.diffusion.walk import (
    MAX_STORED_JUMPS,
    JumpTable,
    occupation_fractions,
    simulate_walk,
    trace_walk,
    transition_counts,
)

__all__ = [
    "EIGEN_MAX_VERTICES",
    "MAX_STORED_JUMPS",
    "ChainIdentity",
    "CommuteEstimate",
    "JumpTable",
    "KernelMethod",
    "chain_hitting_identity",
    "commute_time_check",
    "commute_time_estimate",
    "detailed_balance_deviation",
    "heat_kernel",
    "hitting_probability_mc",
    "hitting_probability_solve",
    "occupation_fractions",
    "return_probability",
    "simulate_walk",
    "trace_walk",
    "transition_counts",
]
