"""Percolation clusters and their cable-graph approximations."""

from gasket_resistance.gasket_gen.cable import (
    DEFAULT_DIMENSION,
    cable_approximation,
    cable_resistance_between_sites,
    dead_end_scale,
    nearest_cable_vertex,
    point_intensity,
    verify_cable,
)
from gasket_resistance.gasket_gen.cluster import (
    chemical_ball,
    cluster_diameter,
    eccentricity,
    volume_profile,
)
from gasket_resistance.gasket_gen.io import (
    ClusterSnapshot,
    format_cable,
    format_cluster,
    parse_cable,
    parse_cluster,
    read_cable,
    read_cluster,
    write_cable,
    write_cluster,
)
from gasket_resistance.gasket_gen.lattice import (
    CRITICAL_P,
    crossing_probability,
    extract_clusters,
    has_crossing,
    largest_cluster,
    sample_percolation,
)
from gasket_resistance.gasket_gen.pruning import PruneResult, dead_end_prune

__all__ = [
    "CRITICAL_P",
    "DEFAULT_DIMENSION",
    "ClusterSnapshot",
    "PruneResult",
    "cable_approximation",
    "cable_resistance_between_sites",
    "chemical_ball",
    "cluster_diameter",
    "crossing_probability",
    "dead_end_prune",
    "dead_end_scale",
    "eccentricity",
    "extract_clusters",
    "format_cable",
    "format_cluster",
    "has_crossing",
    "largest_cluster",
    "nearest_cable_vertex",
    "parse_cable",
    "parse_cluster",
    "point_intensity",
    "read_cable",
    "read_cluster",
    "sample_percolation",
    "verify_cable",
    "volume_profile",
    "write_cable",
    "write_cluster",
]
