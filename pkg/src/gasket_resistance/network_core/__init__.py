"""Exact finite electrical-network calculus."""

from gasket_resistance.network_core.gluing import (
    ParallelLawBound,
    contract_pair,
    contraction_bound_holds,
    contraction_slack,
    glue_at_cut_point,
    glue_overlapping,
    parallel_law_bound,
    series_decompose,
)
from gasket_resistance.network_core.io import (
    format_network,
    parse_network,
    read_network,
    write_network,
)
from gasket_resistance.network_core.recovery import green_matrix, weights_from_resistance
from gasket_resistance.network_core.resistance import (
    dirichlet_energy,
    dirichlet_form,
    effective_resistance,
    holder_bound,
    markov_clamp,
    resistance_matrix,
)
from gasket_resistance.network_core.topology import reachable_avoiding, separates
from gasket_resistance.network_core.trace import (
    harmonic_extension,
    trace_network,
    trace_weights_by_polarization,
)

__all__ = [
    "ParallelLawBound",
    "contract_pair",
    "contraction_bound_holds",
    "contraction_slack",
    "dirichlet_energy",
    "dirichlet_form",
    "effective_resistance",
    "format_network",
    "glue_at_cut_point",
    "glue_overlapping",
    "green_matrix",
    "harmonic_extension",
    "holder_bound",
    "markov_clamp",
    "parallel_law_bound",
    "parse_network",
    "reachable_avoiding",
    "read_network",
    "resistance_matrix",
    "separates",
    "series_decompose",
    "trace_network",
    "trace_weights_by_polarization",
    "weights_from_resistance",
    "write_network",
]
