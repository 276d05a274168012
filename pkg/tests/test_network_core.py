"""Tests for effective resistance, traces, gluing and conductance recovery."""

from __future__ import annotations

import math

import numpy as np
import pytest

from gasket_resistance.commands.verify import (
    energy_minimizing_resistance,
    random_network,
    small_connected_graphs,
)
from gasket_resistance.errors import (
    ArgumentError,
    DisconnectedError,
    NotAResistanceMetricError,
    PreconditionError,
)
from gasket_resistance.models.network import Network, PotentialFunction, ResistanceMatrix
from gasket_resistance.network_core import (
    contract_pair,
    contraction_bound_holds,
    contraction_slack,
    dirichlet_energy,
    effective_resistance,
    format_network,
    glue_at_cut_point,
    glue_overlapping,
    harmonic_extension,
    holder_bound,
    markov_clamp,
    parallel_law_bound,
    parse_network,
    reachable_avoiding,
    read_network,
    resistance_matrix,
    separates,
    series_decompose,
    trace_network,
    trace_weights_by_polarization,
    weights_from_resistance,
    write_network,
)
from gasket_resistance.network_core.io import networks_equal
from gasket_resistance.utils.rng import Stream, make_rng


class TestEffectiveResistance:
    def test_single_edge(self, edge):
        assert effective_resistance(edge, 0, 1) == pytest.approx(1.0)

    def test_triangle(self, triangle):
        assert effective_resistance(triangle, 0, 1) == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_series_path(self, path3):
        assert effective_resistance(path3, 0, 2) == pytest.approx(2.0, abs=1e-10)

    def test_weighted_path(self, weighted_path):
        assert effective_resistance(weighted_path, 0, 2) == pytest.approx(1.5, abs=1e-10)

    def test_same_vertex_is_zero(self, triangle):
        assert effective_resistance(triangle, 1, 1) == 0.0

    def test_disconnected_is_infinite(self, disconnected):
        assert math.isinf(effective_resistance(disconnected, 0, 3))

    def test_unknown_vertex(self, edge):
        with pytest.raises(ArgumentError):
            effective_resistance(edge, 0, 7)

    def test_scaling_conductances_scales_resistance(self, triangle):
        assert effective_resistance(triangle.scaled(4.0), 0, 1) == pytest.approx(1.0 / 6.0)


class TestResistanceMatrix:
    def test_matches_pairwise_solves(self, two_triangles):
        Rm = resistance_matrix(two_triangles, two_triangles.vertex_ids)
        for x in two_triangles.vertex_ids:
            for y in two_triangles.vertex_ids:
                assert Rm.value(x, y) == pytest.approx(effective_resistance(two_triangles, x, y), abs=1e-10)

    def test_metric_on_random_networks(self):
        rng = make_rng(3, 0, Stream.FIXTURES)
        for _ in range(10):
            net = random_network(rng, 7)
            assert resistance_matrix(net, net.vertex_ids).is_metric()

    def test_components_give_infinite_entries(self, disconnected):
        Rm = resistance_matrix(disconnected, [0, 1, 2])
        assert Rm.value(0, 1) == pytest.approx(1.0)
        assert math.isinf(Rm.value(1, 2))

    def test_duplicate_subset_rejected(self, triangle):
        with pytest.raises(ArgumentError):
            resistance_matrix(triangle, [0, 0, 1])

    def test_rayleigh_monotonicity(self):
        rng = make_rng(23, 0, Stream.FIXTURES)
        for _ in range(20):
            net = random_network(rng, 6)
            u, v = sorted(int(x) for x in rng.choice(net.vertex_ids, size=2, replace=False))
            stronger = net.with_weight(u, v, net.weight(u, v) + 1.0)
            before = resistance_matrix(net, net.vertex_ids).R
            after = resistance_matrix(stronger, net.vertex_ids).R
            assert np.all(after <= before + 1e-12)


class TestBruteForceOracle:
    def test_graph_enumeration(self):
        graphs = small_connected_graphs(5)
        # connected graphs on 2, 3, 4 and 5 vertices: 1 + 2 + 6 + 21
        assert len(graphs) == 30
        assert all(net.is_connected() for net in graphs)

    def test_energy_minimisation_matches_solver(self):
        for net in small_connected_graphs(5):
            for x in net.vertex_ids:
                for y in net.vertex_ids:
                    if x < y:
                        assert energy_minimizing_resistance(net, x, y) == pytest.approx(
                            effective_resistance(net, x, y), abs=1e-6
                        )

    def test_single_edge(self, edge):
        assert energy_minimizing_resistance(edge, 0, 1) == pytest.approx(1.0)


class TestEnergy:
    def test_constant_has_zero_energy(self, triangle):
        assert dirichlet_energy(triangle, PotentialFunction.constant(triangle.vertex_ids, 3.0)) == 0.0

    def test_markov_clamp_does_not_increase_energy(self, path3):
        f = PotentialFunction(values={0: -1.0, 1: 0.5, 2: 2.0})
        assert dirichlet_energy(path3, markov_clamp(f)) <= dirichlet_energy(path3, f)

    def test_holder_bound(self, star):
        f = PotentialFunction(values={0: 0.2, 1: 1.0, 2: -0.5, 3: 0.0, 4: 0.3})
        lhs, rhs = holder_bound(star, f, 1, 2)
        assert lhs <= rhs + 1e-12

    def test_energy_metric_duality(self, two_triangles):
        for x, y in ((0, 4), (1, 3), (0, 2)):
            f = harmonic_extension(two_triangles, [x, y], PotentialFunction(values={x: 1.0, y: 0.0}))
            product = effective_resistance(two_triangles, x, y) * dirichlet_energy(two_triangles, f)
            assert product == pytest.approx(1.0, abs=1e-10)

    def test_markov_clamp_on_random_networks(self):
        rng = make_rng(21, 0, Stream.FIXTURES)
        for _ in range(20):
            net = random_network(rng, 6)
            f = PotentialFunction.from_array(net.vertex_ids, rng.uniform(-1.0, 2.0, size=6))
            assert dirichlet_energy(net, markov_clamp(f)) <= dirichlet_energy(net, f) + 1e-12

    def test_holder_bound_all_pairs(self):
        rng = make_rng(22, 0, Stream.FIXTURES)
        net = random_network(rng, 7)
        f = PotentialFunction.from_array(net.vertex_ids, rng.normal(size=7))
        for x in net.vertex_ids:
            for y in net.vertex_ids:
                lhs, rhs = holder_bound(net, f, x, y)
                assert lhs <= rhs + 1e-12


class TestTrace:
    def test_path_onto_endpoints(self, path3):
        traced = trace_network(path3, [0, 2])
        assert traced.vertex_ids == (0, 2)
        assert traced.weight(0, 2) == pytest.approx(0.5, abs=1e-12)

    def test_star_onto_leaves_is_complete(self, star):
        traced = trace_network(star, [1, 2, 3, 4])
        assert traced.n_edges == 6
        for u, v, w in traced.edges():
            assert w == pytest.approx(0.25, abs=1e-12)

    def test_preserves_resistance(self, two_triangles):
        traced = trace_network(two_triangles, [0, 3, 4])
        for x, y in ((0, 3), (0, 4), (3, 4)):
            assert effective_resistance(traced, x, y) == pytest.approx(
                effective_resistance(two_triangles, x, y), abs=1e-9
            )

    def test_polarization_agrees_with_schur(self, two_triangles):
        schur = trace_network(two_triangles, [0, 1, 4])
        polar = trace_weights_by_polarization(two_triangles, [0, 1, 4])
        for x, y in ((0, 1), (0, 4), (1, 4)):
            assert polar.weight(x, y) == pytest.approx(schur.weight(x, y), abs=1e-9)

    def test_empty_set_rejected(self, triangle):
        with pytest.raises(ArgumentError):
            trace_network(triangle, [])


class TestHarmonicExtension:
    def test_path_midpoint(self, path3):
        h = harmonic_extension(path3, [0, 2], PotentialFunction(values={0: 1.0, 2: 0.0}))
        assert h[1] == pytest.approx(0.5)

    def test_weighted_midpoint(self, weighted_path):
        h = harmonic_extension(weighted_path, [0, 2], PotentialFunction(values={0: 1.0, 2: 0.0}))
        assert h[1] == pytest.approx(2.0 / 3.0)

    def test_unreachable_interior(self, disconnected):
        with pytest.raises(DisconnectedError):
            harmonic_extension(disconnected, [0, 1], PotentialFunction(values={0: 1.0, 1: 0.0}))

    def test_maximum_principle(self):
        rng = make_rng(24, 0, Stream.FIXTURES)
        for _ in range(20):
            net = random_network(rng, 7)
            B = [int(v) for v in rng.choice(net.vertex_ids, size=3, replace=False)]
            g = PotentialFunction(values={v: float(rng.normal()) for v in B})
            h = harmonic_extension(net, B, g).on(net.vertex_ids)
            assert h.min() >= min(g.values.values()) - 1e-12
            assert h.max() <= max(g.values.values()) + 1e-12


class TestGluing:
    def test_cut_point_series(self, triangle):
        other = Network.from_edges([2, 3, 4], [(2, 3, 1.0), (3, 4, 1.0), (2, 4, 1.0)])
        glued = glue_at_cut_point(triangle, other, 2)
        assert effective_resistance(glued, 0, 4) == pytest.approx(4.0 / 3.0, abs=1e-10)
        assert series_decompose(glued, 0, 2, 4)

    def test_overlap_adds_conductances(self, edge):
        glued = glue_overlapping(edge, Network.from_edges([0, 1, 2], [(0, 1, 2.0), (1, 2, 1.0)]), {0, 1})
        assert glued.weight(0, 1) == pytest.approx(3.0)
        assert glued.weight(1, 2) == pytest.approx(1.0)

    def test_overlap_then_trace(self, edge):
        detour = Network.from_edges([0, 1, 2], [(0, 2, 1.0), (2, 1, 1.0)])
        glued = glue_overlapping(edge, detour, {0, 1})
        assert trace_network(glued, [0, 1]).weight(0, 1) == pytest.approx(1.5, abs=1e-12)

    def test_overlap_must_match(self, edge, triangle):
        with pytest.raises(ArgumentError):
            glue_overlapping(edge, triangle, {0})

    def test_series_requires_cut_point(self, triangle):
        assert not series_decompose(triangle, 0, 1, 2)

    def test_separates(self, two_triangles):
        assert separates(two_triangles, 0, 4, [2])
        assert not separates(two_triangles, 0, 4, [1])

    def test_separator_containing_endpoint(self, two_triangles):
        assert not separates(two_triangles, 0, 4, [0])

    def test_reachable_avoiding(self, two_triangles):
        assert reachable_avoiding(two_triangles, 0) == {0, 1, 2, 3, 4}
        assert reachable_avoiding(two_triangles, 0, [2]) == {0, 1}
        assert reachable_avoiding(two_triangles, 3, [2]) == {3, 4}

    def test_zero_conductance_is_not_a_path(self):
        net = Network(vertex_ids=(0, 1, 2), conductance={(0, 1): 1.0, (1, 2): 0.0})
        assert reachable_avoiding(net, 0) == {0, 1}
        assert separates(net, 0, 2, [])

    def test_unknown_vertex(self, triangle):
        with pytest.raises(ArgumentError):
            reachable_avoiding(triangle, 9)


class TestContraction:
    def test_contract_pair_merges_edges(self, triangle):
        merged = contract_pair(triangle, 0, 1)
        assert merged.vertex_ids == (0, 2)
        assert merged.weight(0, 2) == pytest.approx(2.0)

    def test_path_is_tight(self, path3):
        assert contraction_slack(path3, 0, 1) == pytest.approx(0.0, abs=1e-10)

    def test_random_networks(self):
        rng = make_rng(5, 0, Stream.FIXTURES)
        for _ in range(10):
            net = random_network(rng, 6)
            x0, y0 = next(iter(net.conductance))
            assert contraction_bound_holds(net, x0, y0)

    def test_self_contraction_rejected(self, triangle):
        with pytest.raises(ArgumentError):
            contract_pair(triangle, 1, 1)


class TestParallelLaw:
    def test_cut_point(self, two_triangles):
        bound = parallel_law_bound(two_triangles, 0, 4, [2])
        assert bound.lhs == pytest.approx(0.75)
        assert bound.rhs == pytest.approx(1.5)
        assert bound.holds

    def test_not_separating(self, two_triangles):
        with pytest.raises(PreconditionError):
            parallel_law_bound(two_triangles, 0, 4, [1])

    def test_theta_graph(self):
        # two disjoint unit paths 0-1-3 and 0-2-3
        theta = Network.from_edges(range(4), [(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0)])
        bound = parallel_law_bound(theta, 0, 3, [1, 2])
        assert bound.lhs == pytest.approx(1.0)
        assert bound.rhs == pytest.approx(2.0)
        assert bound.holds


class TestRecovery:
    def test_triangle_from_resistances(self):
        Rm = ResistanceMatrix(vertex_ids=(0, 1, 2), R=np.full((3, 3), 2.0 / 3.0) - np.eye(3) * 2.0 / 3.0)
        net = weights_from_resistance(Rm)
        for u, v in ((0, 1), (1, 2), (0, 2)):
            assert net.weight(u, v) == pytest.approx(1.0, abs=1e-9)

    def test_roundtrip_random(self):
        rng = make_rng(11, 0, Stream.FIXTURES)
        for _ in range(10):
            net = random_network(rng, 6)
            recovered = weights_from_resistance(resistance_matrix(net, net.vertex_ids))
            for edge in set(net.conductance) | set(recovered.conductance):
                assert recovered.weight(*edge) == pytest.approx(net.weight(*edge), abs=1e-8)

    def test_non_metric_rejected(self):
        R = [[0.0, 1.0, 1.0], [1.0, 0.0, 2.5], [1.0, 2.5, 0.0]]
        with pytest.raises(NotAResistanceMetricError):
            weights_from_resistance(ResistanceMatrix(vertex_ids=(0, 1, 2), R=R))

    def test_single_vertex(self):
        net = weights_from_resistance(ResistanceMatrix(vertex_ids=(4,), R=[[0.0]]))
        assert net.vertex_ids == (4,)
        assert net.n_edges == 0

    def test_series_metric_has_no_chord(self, path3):
        R = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
        net = weights_from_resistance(ResistanceMatrix(vertex_ids=(0, 1, 2), R=R))
        assert net.weight(0, 2) == 0.0
        assert networks_equal(net, path3)

    def test_ill_conditioned_path(self):
        # conductances spanning ten decades; cond(G) is about 6e10
        net = Network.from_edges(range(4), [(0, 1, 1e-5), (1, 2, 1e5), (2, 3, 1.0)])
        recovered = weights_from_resistance(resistance_matrix(net, net.vertex_ids))
        assert set(recovered.conductance) == {(0, 1), (1, 2), (2, 3)}
        assert recovered.weight(1, 2) == pytest.approx(1e5, rel=1e-4)
        assert recovered.weight(2, 3) == pytest.approx(1.0, rel=1e-4)
        # entries of the inverse carry absolute errors near 1e-6 at this conditioning
        assert recovered.weight(0, 1) == pytest.approx(1e-5, rel=0.5)

    def test_limit_stability(self):
        rng = make_rng(25, 0, Stream.FIXTURES)
        net = random_network(rng, 6, extra_edges=1.0)
        Rm = resistance_matrix(net, net.vertex_ids)
        noise = np.triu(rng.uniform(-1.0, 1.0, size=Rm.R.shape), 1)
        noise = noise + noise.T
        gaps = []
        for delta in (1e-3, 1e-5, 1e-7):
            moved = weights_from_resistance(ResistanceMatrix(vertex_ids=Rm.vertex_ids, R=Rm.R + delta * noise))
            gaps.append(max(abs(moved.weight(*e) - net.weight(*e)) for e in net.conductance))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] <= 1e-4


class TestNetworkFiles:
    def test_text_roundtrip(self, two_triangles):
        assert networks_equal(parse_network(format_network(two_triangles)), two_triangles)

    def test_exact_floats(self):
        net = Network.from_edges([0, 1], [(0, 1, 0.1 + 0.2)])
        assert parse_network(format_network(net)).weight(0, 1) == 0.1 + 0.2

    def test_file_roundtrip(self, tmp_path, weighted_path):
        path = write_network(weighted_path, tmp_path / "nets" / "w.net")
        assert networks_equal(read_network(path), weighted_path)

    def test_bad_header(self):
        with pytest.raises(ArgumentError):
            parse_network("GRAPH 2 1\n0\n1\n0 1 1.0\n")

    def test_truncated(self):
        with pytest.raises(ArgumentError):
            parse_network("NET v1 2 1\n0\n1\n")

    @pytest.mark.parametrize(
        "text",
        [
            "NET v1 x 1\n0\n1\n0 1 1.0\n",
            "NET v1 2\n0\n1\n",
            "NET v1 -1 0\n",
            "NET v1 2 1\nzero\n1\n0 1 1.0\n",
            "NET v1 2 1\n0\n1\n0 1\n",
            "NET v1 2 1\n0\n1\n0 1 heavy\n",
            "NET v1 2 1\n0\n1\n0 1 -2.0\n",
            "NET v1 2 1\n0\n0\n0 1 1.0\n",
            "NET v1 2 1\n0\n1\n0 7 1.0\n",
        ],
    )
    def test_malformed_input(self, text):
        with pytest.raises(ArgumentError):
            parse_network(text)
