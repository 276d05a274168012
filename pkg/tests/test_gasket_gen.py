"""Tests for percolation sampling, clusters, pruning and cable networks."""

from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from scipy.sparse import csgraph

from gasket_resistance.errors import ArgumentError
from gasket_resistance.gasket_gen import (
    cable_approximation,
    cable_resistance_between_sites,
    chemical_ball,
    cluster_diameter,
    crossing_probability,
    dead_end_prune,
    extract_clusters,
    format_cable,
    format_cluster,
    has_crossing,
    largest_cluster,
    parse_cable,
    parse_cluster,
    read_cable,
    read_cluster,
    sample_percolation,
    verify_cable,
    volume_profile,
    write_cable,
    write_cluster,
)
from gasket_resistance.gasket_gen.cable import dead_end_scale, point_intensity
from gasket_resistance.models.lattice import ClusterGraph, LatticeConfig, site_id
from gasket_resistance.network_core import effective_resistance
from gasket_resistance.network_core.io import networks_equal


def _line_site(q: int) -> int:
    return site_id(q, 10, 20)


def _brute_force_prune(cluster: ClusterGraph, s: float) -> frozenset[int]:
    """Dead ends found by cutting at every articulation point in turn."""
    graph = cluster.graph
    removed: set[int] = set()
    for z in nx.articulation_points(graph):
        rest = graph.subgraph(set(graph) - {z})
        sides = sorted(nx.connected_components(rest), key=lambda c: (-len(c), min(c)))
        for side in sides[1:]:
            if nx.diameter(graph.subgraph({*side, z})) <= s:
                removed.update(side)
    if len(removed) == cluster.size:
        return frozenset()
    return frozenset(removed)


class TestPercolation:
    def test_all_open(self):
        cluster = largest_cluster(sample_percolation(8, 1.0, seed=1))
        assert cluster is not None
        assert cluster.size == 64

    def test_all_closed(self):
        assert largest_cluster(sample_percolation(8, 0.0, seed=1)) is None

    def test_deterministic(self):
        assert sample_percolation(32, 0.5, seed=7, replica=3) == sample_percolation(32, 0.5, seed=7, replica=3)
        assert sample_percolation(32, 0.5, seed=7, replica=3) != sample_percolation(32, 0.5, seed=7, replica=4)

    def test_clusters_largest_first(self):
        clusters = extract_clusters(sample_percolation(24, 0.45, seed=2))
        sizes = [c.size for c in clusters]
        assert sizes == sorted(sizes, reverse=True)
        assert sum(sizes) == sample_percolation(24, 0.45, seed=2).n_open

    def test_bad_arguments(self):
        with pytest.raises(ArgumentError):
            sample_percolation(1, 0.5, seed=0)
        with pytest.raises(ArgumentError):
            sample_percolation(8, 1.5, seed=0)

    def test_crossing_extremes(self):
        assert has_crossing(sample_percolation(6, 1.0, seed=0))
        full = crossing_probability(6, 1.0, n_samples=20, seed=0)
        empty = crossing_probability(6, 0.0, n_samples=20, seed=0)
        assert (full.value, full.stderr) == (1.0, 0.0)
        assert (empty.value, empty.stderr) == (0.0, 0.0)

    @pytest.mark.slow
    @pytest.mark.parametrize("side", [32, 64])
    def test_self_dual_crossing(self, side):
        estimate = crossing_probability(side, 0.5, n_samples=2000, seed=0, threads=4)
        assert abs(estimate.value - 0.5) <= 4 * (0.25 / 2000) ** 0.5

    def test_clusters_partition_open_sites(self):
        bitmap = np.zeros(25, dtype=bool)
        bitmap[[0, 1, 2, 10, 15]] = True
        cfg = LatticeConfig(side=5, p=0.2, seed=0, open=bitmap)
        clusters = extract_clusters(cfg)
        assert [c.size for c in clusters] == [3, 2]
        assert clusters[0].site_ids.tolist() == [0, 1, 2]
        assert clusters[1].site_ids.tolist() == [10, 15]

    def test_partition_on_random_configs(self):
        for replica in range(10):
            cfg = sample_percolation(16, 0.5, seed=4, replica=replica)
            sites = np.concatenate([c.site_ids for c in extract_clusters(cfg)])
            assert np.array_equal(np.sort(sites), cfg.open_sites())


class TestClusterMetric:
    def test_line_distances(self, line_cluster):
        assert line_cluster.chem_dist(_line_site(0), _line_site(19)) == 19
        assert cluster_diameter(line_cluster) == 19

    def test_chemical_ball(self, line_cluster):
        ball = chemical_ball(line_cluster, _line_site(10), 3)
        assert ball == frozenset(_line_site(q) for q in range(7, 14))

    def test_full_rhombus_diameter(self, full_cluster):
        # Opposite acute corners of the rhombus are 2(L-1) steps apart
        assert full_cluster.chem_dist(site_id(0, 7, 8), site_id(7, 0, 8)) == 7
        assert full_cluster.chem_dist(site_id(0, 0, 8), site_id(7, 7, 8)) == 14

    def test_hexagonal_ball_volumes(self):
        cluster = ClusterGraph.from_coords(12, [(q, r) for q in range(12) for r in range(12)])
        center = site_id(6, 6, 12)
        for r in range(6):
            assert len(chemical_ball(cluster, center, r)) == 1 + 3 * r * (r + 1)

    def test_distances_match_floyd_warshall(self):
        cluster = largest_cluster(sample_percolation(10, 0.65, seed=3))
        oracle = csgraph.floyd_warshall(cluster.adjacency, directed=False, unweighted=True)
        for x in cluster.site_ids.tolist():
            assert np.array_equal(cluster.distances_from(x), oracle[cluster.position(x)])

    def test_disconnected_coords_rejected(self):
        with pytest.raises(ArgumentError):
            ClusterGraph.from_coords(10, [(0, 0), (5, 5)])

    def test_volume_profile(self, full_cluster):
        profile = volume_profile(full_cluster, [0, 1, 2, 4], n_centers=5, seed=3)
        assert profile.counts.shape == (5, 4)
        assert (profile.counts[:, 0] == 1).all()
        assert (profile.counts <= 64).all()
        assert profile == volume_profile(full_cluster, [0, 1, 2, 4], n_centers=5, seed=3)

    def test_volume_profile_radii(self, full_cluster):
        with pytest.raises(ArgumentError):
            volume_profile(full_cluster, [2, 1], n_centers=1, seed=0)


class TestPruning:
    def test_zero_scale_keeps_everything(self, line_cluster):
        assert len(dead_end_prune(line_cluster, 0.0).kept) == 20

    def test_line_ends(self, line_cluster):
        result = dead_end_prune(line_cluster, 3.0)
        assert result.removed == frozenset(_line_site(q) for q in (0, 1, 2, 17, 18, 19))

    def test_monotone(self):
        cluster = largest_cluster(sample_percolation(24, 0.6, seed=4))
        previous = None
        for s in (0.0, 1.0, 2.0, 4.0, 8.0):
            kept = dead_end_prune(cluster, s).kept
            if previous is not None:
                assert kept <= previous
            previous = kept

    def test_negative_scale(self, line_cluster):
        with pytest.raises(ArgumentError):
            dead_end_prune(line_cluster, -1.0)

    def test_biconnected_cluster_untouched(self, full_cluster):
        assert dead_end_prune(full_cluster, 100.0).removed == frozenset()


    def test_matches_articulation_point_search(self):
        checked = 0
        for replica in range(200):
            cluster = largest_cluster(sample_percolation(5, 0.5, seed=6, replica=replica))
            if cluster is None or not 3 <= cluster.size <= 12:
                continue
            checked += 1
            for s in (1.0, 2.0, 3.0, 5.0):
                assert dead_end_prune(cluster, s).removed == _brute_force_prune(cluster, s)
        assert checked >= 20

class TestCable:
    def test_intensity_and_scale(self):
        assert point_intensity(4.0, d=2.0, c0=0.05) == pytest.approx(4.0 ** -2.05)
        assert dead_end_scale(4.0, 64.0, a0=0.5) == pytest.approx(16.0)
        assert dead_end_scale(4.0, 0.0) == 0.0

    def test_dense_line_is_unit_path(self, line_cluster):
        cable = cable_approximation(line_cluster, 2.0, intensity=50.0, prune=False)
        assert cable.network.n_vertices == 20
        assert cable.network.n_edges == 19
        assert effective_resistance(cable.network, _line_site(0), _line_site(19)) == pytest.approx(19.0)
        assert verify_cable(cable) == []

    def test_merged_cables_share_resistance(self, line_cluster):
        cable = cable_approximation(line_cluster, 3.0, intensity=50.0, prune=False, mode="merged")
        assert cable.network.n_edges == 19
        assert effective_resistance(cable.network, _line_site(0), _line_site(19)) == pytest.approx(19.0)
        assert verify_cable(cable) == []

    def test_unit_edge_mode(self, line_cluster):
        cable = cable_approximation(line_cluster, 3.0, intensity=50.0, prune=False, edge_mode="unit")
        assert all(w == pytest.approx(1.0) for _, _, w in cable.network.edges())
        assert verify_cable(cable) == []

    def test_invariants_on_random_cluster(self):
        cluster = largest_cluster(sample_percolation(32, 0.6, seed=5))
        for mode in ("direct", "merged"):
            cable = cable_approximation(cluster, 4.0, seed=5, mode=mode, intensity=0.3)
            assert verify_cable(cable) == []
            assert set(cable.network.vertex_ids).isdisjoint(cable.removed_sites)

    def test_empty_sample(self, line_cluster):
        cable = cable_approximation(line_cluster, 2.0, intensity=0.0)
        assert cable.is_empty
        assert verify_cable(cable) == []

    def test_deterministic(self, full_cluster):
        a = cable_approximation(full_cluster, 3.0, seed=9, replica=2, intensity=0.4)
        b = cable_approximation(full_cluster, 3.0, seed=9, replica=2, intensity=0.4)
        assert a == b

    def test_vertex_count_is_poisson(self):
        cluster = largest_cluster(sample_percolation(32, 0.6, seed=1))
        lam, n_seeds = 0.3, 200
        counts = [
            cable_approximation(cluster, 2.0, seed=1, replica=k, intensity=lam, prune=False).network.n_vertices
            for k in range(n_seeds)
        ]
        expected = lam * cluster.size
        assert abs(np.mean(counts) - expected) <= 4 * (expected / n_seeds) ** 0.5
        assert np.var(counts) > 0

    def test_point_count_recorded(self, full_cluster):
        cable = cable_approximation(full_cluster, 3.0, seed=4, intensity=0.3, prune=False)
        assert cable.point_count == cable.network.n_vertices
        assert cable.kept_count == 64

    def test_saturated_sample_uses_every_site(self, line_cluster):
        cable = cable_approximation(line_cluster, 2.0, intensity=50.0, prune=False)
        assert cable.point_count > 20
        assert cable.network.n_vertices == 20

    def test_eps_too_small(self, line_cluster):
        with pytest.raises(ArgumentError):
            cable_approximation(line_cluster, 1.5)

    def test_resistance_between_sites(self, line_cluster):
        cable = cable_approximation(line_cluster, 2.0, intensity=50.0, prune=False)
        assert cable_resistance_between_sites(cable, _line_site(2), _line_site(7)) == pytest.approx(5.0)
        assert cable_resistance_between_sites(cable, _line_site(4), _line_site(4)) == 0.0


class TestFiles:
    def test_cluster_roundtrip(self, tmp_path):
        cluster = largest_cluster(sample_percolation(16, 0.6, seed=1))
        snapshot = parse_cluster(format_cluster(cluster, 0.6, 1))
        assert snapshot.cluster == cluster
        assert (snapshot.p, snapshot.seed) == (0.6, 1)
        path = write_cluster(cluster, 0.6, 1, tmp_path / "c" / "a.cluster")
        assert read_cluster(path).cluster == cluster

    def test_cluster_header(self):
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v2 4 0.5 0 1\n0 0\n")
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v1 4 0.5 0 2\n0 0\n")

    def test_cable_roundtrip(self, tmp_path, full_cluster):
        cable = cable_approximation(full_cluster, 3.0, seed=2, intensity=0.5, mode="merged")
        parsed = parse_cable(format_cable(cable), full_cluster)
        assert parsed == cable
        assert networks_equal(parsed.network, cable.network)
        path = write_cable(cable, tmp_path / "cable.net")
        assert read_cable(path) == cable

    def test_cable_needs_parameters(self):
        with pytest.raises(ArgumentError):
            parse_cable("NET v1 1 0\n5\n")

    def test_malformed_cluster_lines(self):
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v1 four 0.5 0 1\n0 0\n")
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v1 4 0.5 0\n0 0\n")
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v1 4 0.5 0 1\n0 x\n")
        with pytest.raises(ArgumentError):
            parse_cluster("CLUSTER v1 0 0.5 0 0\n")

    def test_malformed_cable_sections(self, full_cluster):
        text = format_cable(cable_approximation(full_cluster, 3.0, seed=2, intensity=0.5))
        with pytest.raises(ArgumentError):
            parse_cable(text.replace("mode=direct", "mode=diagonal"))
        with pytest.raises(ArgumentError):
            parse_cable(text.replace("side=8", "side=eight"))
        with pytest.raises(ArgumentError):
            parse_cable(text.replace("# coords\n", "# coords\n1 2\n"))
        with pytest.raises(ArgumentError):
            parse_cable(text.replace("# removed", "# removed\nnot-a-site"))
