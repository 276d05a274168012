"""Command that runs the randomized property suite of every module."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import networkx as nx
import numpy as np
from scipy import optimize
from scipy.sparse import csgraph

from gasket_resistance.commands.base import RunRecorder, error_response
from gasket_resistance.config.schema import Config, VerifyConfig
from gasket_resistance.diffusion.heat_kernel import detailed_balance_deviation, return_probability
from gasket_resistance.diffusion.hitting import (
    chain_hitting_identity,
    commute_time_estimate,
    hitting_probability_mc,
    hitting_probability_solve,
)
from gasket_resistance.diffusion.walk import simulate_walk, trace_walk, transition_counts
from gasket_resistance.errors import ExitCode, GasketError
from gasket_resistance.exponents.annulus import alpha_from_samples, median_normalizer
from gasket_resistance.exponents.fitting import fit_power_law
from gasket_resistance.exponents.theory import theory_constants
from gasket_resistance.gasket_gen.cable import cable_approximation, verify_cable
from gasket_resistance.gasket_gen.io import format_cable, format_cluster, parse_cable, parse_cluster
from gasket_resistance.gasket_gen.lattice import (
    crossing_probability,
    extract_clusters,
    largest_cluster,
    sample_percolation,
)
from gasket_resistance.gasket_gen.pruning import dead_end_prune
from gasket_resistance.models.diffusion import HittingQuery, SpeedMeasure
from gasket_resistance.models.network import Network, PotentialFunction, ResistanceMatrix, Tolerances
from gasket_resistance.models.run import CheckResult, CheckStatus, VerifyReport
from gasket_resistance.network_core.gluing import (
    contraction_slack,
    glue_at_cut_point,
    glue_overlapping,
    parallel_law_bound,
)
from gasket_resistance.network_core.io import format_network, networks_equal, parse_network
from gasket_resistance.network_core.recovery import weights_from_resistance
from gasket_resistance.network_core.resistance import (
    dirichlet_energy,
    effective_resistance,
    holder_bound,
    markov_clamp,
    resistance_matrix,
)
from gasket_resistance.network_core.trace import harmonic_extension, trace_network
from gasket_resistance.utils.csvio import write_json
from gasket_resistance.utils.rng import Stream, make_rng

logger = logging.getLogger(__name__)

# Resistance matrix violating the triangle inequality
NON_METRIC_R = ((0.0, 1.0, 1.0), (1.0, 0.0, 2.5), (1.0, 2.5, 0.0))
# Metric perturbation sizes of the limit-stability check, decreasing
PERTURBATIONS = (1e-3, 1e-5, 1e-7)
INTENSITY_SEEDS = 200


def random_network(
    rng: np.random.Generator,
    n: int,
    extra_edges: float = 0.4,
    weight_range: tuple[float, float] = (0.5, 2.0),
    first_label: int = 0,
) -> Network:
    """Connected random network: a random spanning tree plus random chords."""
    labels = list(range(first_label, first_label + n))
    edges = []
    for i in range(1, n):
        edges.append((labels[i], labels[int(rng.integers(i))], float(rng.uniform(*weight_range))))
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < extra_edges:
            edges.append((labels[i], labels[j], float(rng.uniform(*weight_range))))
    return Network.from_edges(labels, edges)


def glued_k3_chain(rng: np.random.Generator, blocks: int) -> tuple[Network, list[int]]:
    """Triangles (2i, 2i+1, 2i+2) with random weights; the even labels form a cut-point chain."""
    edges = []
    for i in range(blocks):
        a, b, c = 2 * i, 2 * i + 1, 2 * i + 2
        for u, v in ((a, b), (b, c), (a, c)):
            edges.append((u, v, float(rng.uniform(0.5, 2.0))))
    net = Network.from_edges(range(2 * blocks + 1), edges)
    return net, list(range(0, 2 * blocks + 1, 2))


def small_connected_graphs(max_vertices: int) -> list[Network]:
    """Every connected unit-conductance graph on 2..max_vertices vertices, up to isomorphism."""
    return [
        Network.from_edges(g.nodes, [(u, v, 1.0) for u, v in g.edges])
        for g in nx.graph_atlas_g()
        if 2 <= g.number_of_nodes() <= max_vertices and nx.is_connected(g)
    ]


def energy_minimizing_resistance(net: Network, x: int, y: int) -> float:
    """R(x, y) as 1 / min E(f, f) over f with f(x) = 1, f(y) = 0, by conjugate gradients."""
    free = [v for v in net.vertex_ids if v not in (x, y)]
    index = [net.position(v) for v in free]
    L = net.laplacian

    def full(values: np.ndarray) -> np.ndarray:
        f = np.zeros(net.n_vertices)
        f[net.position(x)] = 1.0
        f[index] = values
        return f

    def energy(values: np.ndarray) -> float:
        return dirichlet_energy(net, PotentialFunction.from_array(net.vertex_ids, full(values)))

    def gradient(values: np.ndarray) -> np.ndarray:
        return np.asarray(2.0 * (L @ full(values))[index])

    if not free:
        return 1.0 / energy(np.zeros(0))
    result = optimize.minimize(
        energy, np.full(len(free), 0.5), jac=gradient, method="CG", options={"gtol": 1e-12}
    )
    return 1.0 / float(result.fun)


@dataclass
class SuiteContext:
    params: VerifyConfig
    tol: Tolerances
    seed: int

    def rng(self, index: int) -> np.random.Generator:
        return make_rng(self.seed, index, Stream.FIXTURES)

    def size(self, rng: np.random.Generator, low: int = 3) -> int:
        return int(rng.integers(low, max(low, self.params.max_vertices) + 1))


CheckFn = Callable[[SuiteContext, np.random.Generator], tuple[float, bool, str]]

# Registered checks in execution order: (name, module, slow, function)
_CHECKS: list[tuple[str, str, bool, CheckFn]] = []


def check(name: str, module: str, slow: bool = False) -> Callable[[CheckFn], CheckFn]:
    def register(fn: CheckFn) -> CheckFn:
        _CHECKS.append((name, module, slow, fn))
        return fn

    return register


@check("k3_resistance", "network_core")
def _k3(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    net = Network.from_edges([0, 1, 2], [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    deviation = abs(effective_resistance(net, 0, 1, ctx.tol) - 2.0 / 3.0)
    return deviation, deviation <= 1e-10, "unit K3 gives R = 2/3"


@check("series_and_trace_of_path", "network_core")
def _path(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    path = Network.from_edges([0, 1, 2], [(0, 1, 1.0), (1, 2, 1.0)])
    series = abs(effective_resistance(path, 0, 2, ctx.tol) - 2.0)
    traced = abs(trace_network(path, [0, 2], ctx.tol).weight(0, 2) - 0.5)
    deviation = max(series, traced)
    return deviation, deviation <= 1e-10, "path a-b-c: R = 2, trace onto ends w = 1/2"


@check("resistance_roundtrip", "network_core")
def _roundtrip(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        recovered = weights_from_resistance(resistance_matrix(net, net.vertex_ids, ctx.tol), ctx.tol)
        edges = set(net.conductance) | set(recovered.conductance)
        worst = max(worst, max(abs(net.weight(*e) - recovered.weight(*e)) for e in edges))
    if ctx.params.inject_non_metric:
        weights_from_resistance(ResistanceMatrix(vertex_ids=(0, 1, 2), R=NON_METRIC_R), ctx.tol)
    return worst, worst < 1e-8, f"w -> R -> w on {ctx.params.fixtures} random networks"


@check("triangle_inequality", "network_core")
def _metric(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        worst = max(worst, resistance_matrix(net, net.vertex_ids, ctx.tol).triangle_violation())
    return worst, worst <= ctx.tol.assert_tol, "R(x,z) <= R(x,y) + R(y,z)"


@check("trace_preserves_resistance", "network_core")
def _trace(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng, 4))
        k = int(rng.integers(2, net.n_vertices))
        B = sorted(rng.choice(net.vertex_ids, size=k, replace=False).tolist())
        traced = trace_network(net, B, ctx.tol)
        for x, y in itertools.combinations(B, 2):
            worst = max(
                worst,
                abs(effective_resistance(traced, x, y, ctx.tol) - effective_resistance(net, x, y, ctx.tol)),
            )
    return worst, worst <= ctx.tol.assert_tol, "R on trace_network(net, B) equals R on net"


@check("cut_point_additivity", "network_core")
def _cut_point(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        n1, n2 = ctx.size(rng), ctx.size(rng)
        net1 = random_network(rng, n1)
        z = n1 - 1
        net2 = random_network(rng, n2, first_label=z)
        glued = glue_at_cut_point(net1, net2, z)
        x = int(rng.integers(z))
        y = int(rng.integers(z + 1, z + n2))
        lhs = effective_resistance(glued, x, y, ctx.tol)
        rhs = effective_resistance(net1, x, z, ctx.tol) + effective_resistance(net2, z, y, ctx.tol)
        worst = max(worst, abs(lhs - rhs))
    return worst, worst <= ctx.tol.assert_tol, "R(x,y) = R1(x,z) + R2(z,y) at a cut point"


@check("gluing_adds_conductances", "network_core")
def _gluing(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net1 = random_network(rng, ctx.size(rng))
        net2 = random_network(rng, ctx.size(rng), first_label=net1.n_vertices - 2)
        shared = set(net1.vertex_ids) & set(net2.vertex_ids)
        glued = glue_overlapping(net1, net2, shared)
        for u, v, w in glued.edges():
            expected = (net1.weight(u, v) if u in net1 and v in net1 else 0.0) + (
                net2.weight(u, v) if u in net2 and v in net2 else 0.0
            )
            worst = max(worst, abs(w - expected))
    return worst, worst <= ctx.tol.assert_tol, "shared edges combine in parallel, others are kept"


@check("contraction_inequality", "network_core")
def _contraction(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        x0, y0 = list(net.conductance)[int(rng.integers(net.n_edges))]
        worst = max(worst, contraction_slack(net, x0, y0, ctx.tol))
    return worst, worst <= ctx.tol.assert_tol, "R(x,y) <= R'(x,y) + 1/w(x0,y0)"


@check("parallel_law", "network_core")
def _parallel(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        n1 = ctx.size(rng, 4)
        net1 = random_network(rng, n1)
        separators = [n1 - 2, n1 - 1]
        net2 = random_network(rng, ctx.size(rng, 3), first_label=n1 - 2)
        net = glue_overlapping(net1, net2, separators)
        y = net.vertex_ids[-1]
        bound = parallel_law_bound(net, 0, y, separators, ctx.tol)
        worst = max(worst, bound.lhs - bound.rhs)
    return worst, worst <= ctx.tol.assert_tol, "1/R(x,y) <= sum_z 1/R_Kx(x,z)"


@check("energy_metric_duality", "network_core")
def _duality(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        x, y = (int(v) for v in rng.choice(net.vertex_ids, size=2, replace=False))
        f = harmonic_extension(net, [x, y], PotentialFunction(values={x: 1.0, y: 0.0}), ctx.tol)
        product = effective_resistance(net, x, y, ctx.tol) * dirichlet_energy(net, f)
        worst = max(worst, abs(product - 1.0))
    return worst, worst <= ctx.tol.assert_tol, "R(x,y) E(f_xy, f_xy) = 1 for the harmonic f_xy"


@check("markov_clamp", "network_core")
def _clamp(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        f = PotentialFunction.from_array(net.vertex_ids, rng.uniform(-1.0, 2.0, size=net.n_vertices))
        worst = max(worst, dirichlet_energy(net, markov_clamp(f)) - dirichlet_energy(net, f))
    return worst, worst <= ctx.tol.assert_tol, "clamping f to [0, 1] never increases E(f, f)"


@check("holder_bound", "network_core")
def _holder(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        f = PotentialFunction.from_array(net.vertex_ids, rng.normal(size=net.n_vertices))
        for x, y in itertools.combinations(net.vertex_ids, 2):
            lhs, rhs = holder_bound(net, f, x, y, ctx.tol)
            worst = max(worst, lhs - rhs)
    return worst, worst <= ctx.tol.assert_tol, "|f(x) - f(y)|^2 <= E(f, f) R(x, y)"


@check("rayleigh_monotonicity", "network_core")
def _rayleigh(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        u, v = sorted(int(x) for x in rng.choice(net.vertex_ids, size=2, replace=False))
        stronger = net.with_weight(u, v, net.weight(u, v) + float(rng.uniform(0.1, 5.0)))
        before = resistance_matrix(net, net.vertex_ids, ctx.tol).R
        after = resistance_matrix(stronger, net.vertex_ids, ctx.tol).R
        worst = max(worst, float(np.max(after - before)))
    return worst, worst <= ctx.tol.assert_tol, "raising one conductance lowers every resistance"


@check("recovery_limit_stability", "network_core")
def _limit(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    ok = True
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng), extra_edges=1.0)
        Rm = resistance_matrix(net, net.vertex_ids, ctx.tol)
        base = weights_from_resistance(Rm, ctx.tol)
        noise = np.triu(rng.uniform(-1.0, 1.0, size=Rm.R.shape), 1)
        noise = noise + noise.T
        gaps = []
        for delta in PERTURBATIONS:
            moved = weights_from_resistance(
                ResistanceMatrix(vertex_ids=Rm.vertex_ids, R=Rm.R + delta * noise), ctx.tol
            )
            gaps.append(max(abs(moved.weight(*e) - base.weight(*e)) for e in base.conductance))
        worst = max(worst, gaps[-1])
        ok &= all(a > b for a, b in zip(gaps, gaps[1:])) and gaps[-1] <= 1e-4
    return worst, ok, "recovered weights converge as the metric perturbation vanishes"


@check("maximum_principle", "network_core")
def _maximum(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = -math.inf
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        k = int(rng.integers(2, net.n_vertices + 1))
        B = [int(v) for v in rng.choice(net.vertex_ids, size=k, replace=False)]
        g = PotentialFunction(values={v: float(rng.normal()) for v in B})
        h = harmonic_extension(net, B, g, ctx.tol).on(net.vertex_ids)
        low, high = min(g.values.values()), max(g.values.values())
        worst = max(worst, float(np.max(h)) - high, low - float(np.min(h)))
    return worst, worst <= ctx.tol.assert_tol, "harmonic extension stays within [min g, max g]"


@check("brute_force_oracle", "network_core")
def _oracle(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    graphs = small_connected_graphs(5)
    for net in graphs:
        for x, y in itertools.combinations(net.vertex_ids, 2):
            exact = effective_resistance(net, x, y, ctx.tol)
            worst = max(worst, abs(energy_minimizing_resistance(net, x, y) - exact))
    return worst, worst <= 1e-6, f"energy minimisation on {len(graphs)} unit graphs with <= 5 vertices"


def _small_cluster(ctx: SuiteContext, rng: np.random.Generator, side: int = 16, p: float = 0.65) -> Any:
    for replica in range(100):
        cluster = largest_cluster(sample_percolation(side, p, ctx.seed, replica))
        if cluster is not None and cluster.size >= 10:
            return cluster, replica
    raise GasketError("no percolation fixture with ten sites found")


@check("pruning_is_monotone", "gasket_gen")
def _pruning(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, _ = _small_cluster(ctx, rng)
    violations = 0
    previous = None
    for s in (0.0, 1.0, 2.0, 4.0, 8.0, 16.0):
        kept = dead_end_prune(cluster, s).kept
        if previous is not None:
            violations += len(kept - previous)
        previous = kept
    return float(violations), violations == 0, "kept sites shrink as the dead-end scale grows"


@check("cable_invariants", "gasket_gen")
def _cable(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, replica = _small_cluster(ctx, rng)
    problems = []
    for mode in ("direct", "merged"):
        cable = cable_approximation(cluster, 3.0, seed=ctx.seed, replica=replica, mode=mode, intensity=0.5)
        problems += verify_cable(cable, ctx.tol.assert_tol)
    detail = problems[0] if problems else "close pairs joined by cables of chemical length"
    return float(len(problems)), not problems, detail


@check("cluster_partition", "gasket_gen")
def _partition(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    problems = 0
    for replica in range(min(ctx.params.fixtures, 20)):
        cfg = sample_percolation(16, float(rng.uniform(0.3, 0.8)), ctx.seed, replica)
        clusters = extract_clusters(cfg)
        sites = np.concatenate([c.site_ids for c in clusters]) if clusters else np.zeros(0, dtype=np.int64)
        problems += len(sites) != len(np.unique(sites))
        problems += not np.array_equal(np.sort(sites), cfg.open_sites())
        problems += extract_clusters(cfg) != clusters
    return float(problems), problems == 0, "clusters partition the open sites and re-extract identically"


@check("chem_dist_vs_floyd_warshall", "gasket_gen")
def _chem_dist(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, _ = _small_cluster(ctx, rng, side=10)
    oracle = csgraph.floyd_warshall(cluster.adjacency, directed=False, unweighted=True)
    worst = 0.0
    for x in cluster.site_ids.tolist():
        worst = max(worst, float(np.max(np.abs(cluster.distances_from(x) - oracle[cluster.position(x)]))))
    return worst, worst == 0.0, f"BFS distances equal Floyd-Warshall on {cluster.size} sites"


@check("cable_determinism", "gasket_gen")
def _cable_determinism(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, replica = _small_cluster(ctx, rng)
    mismatches = 0
    for mode in ("direct", "merged"):
        first = cable_approximation(cluster, 3.0, seed=ctx.seed, replica=replica, mode=mode, intensity=0.5)
        again = cable_approximation(cluster, 3.0, seed=ctx.seed, replica=replica, mode=mode, intensity=0.5)
        mismatches += first != again
    return float(mismatches), mismatches == 0, "same cluster, parameters and seed give the same cable"


@check("cable_vertex_intensity", "gasket_gen")
def _intensity(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, _ = _small_cluster(ctx, rng)
    lam = 0.3
    counts = [
        cable_approximation(cluster, 2.0, seed=ctx.seed, replica=k, intensity=lam, prune=False).network.n_vertices
        for k in range(INTENSITY_SEEDS)
    ]
    expected = lam * cluster.size
    z = (float(np.mean(counts)) - expected) / math.sqrt(expected / INTENSITY_SEEDS)
    return abs(z), abs(z) <= ctx.params.sigmas, f"mean vertex count over {INTENSITY_SEEDS} seeds is lambda |kept|"


@check("cable_edge_lengths", "gasket_gen")
def _edge_lengths(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, replica = _small_cluster(ctx, rng)
    cable = cable_approximation(cluster, 4.0, seed=ctx.seed, replica=replica, intensity=0.5)
    worst = 0.0
    for u, v, w in cable.network.edges():
        worst = max(worst, abs(1.0 / w - cluster.chem_dist(u, v)))
    return worst, worst <= ctx.tol.assert_tol, "direct cable resistance equals the chemical distance"


@check("file_roundtrip", "cli")
def _files(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    cluster, replica = _small_cluster(ctx, rng)
    net = random_network(rng, ctx.size(rng))
    cable = cable_approximation(cluster, 3.0, seed=ctx.seed, replica=replica, intensity=0.5)
    mismatches = 0
    mismatches += not networks_equal(parse_network(format_network(net)), net)
    mismatches += parse_cluster(format_cluster(cluster, 0.65, ctx.seed)).cluster != cluster
    mismatches += parse_cable(format_cable(cable), cluster) != cable
    return float(mismatches), mismatches == 0, "NET, CLUSTER and cable files re-parse to equal values"


@check("hitting_solve_vs_monte_carlo", "diffusion")
def _hitting(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    ok = True
    n_samples = ctx.params.mc_samples
    for i in range(min(ctx.params.fixtures, 50)):
        net = random_network(rng, ctx.size(rng))
        start, a, b = (int(v) for v in rng.choice(net.vertex_ids, size=3, replace=False))
        q = HittingQuery(start=start, target_a=frozenset({a}), target_b=frozenset({b}))
        exact = hitting_probability_solve(net, q, ctx.tol)
        estimate = hitting_probability_mc(net, SpeedMeasure.counting(net), q, n_samples, ctx.seed, i)
        stderr = math.sqrt(exact * (1.0 - exact) / n_samples)
        deviation = abs(estimate.value - exact)
        worst = max(worst, deviation)
        ok &= deviation <= ctx.params.sigmas * stderr + 1.0 / n_samples
    return worst, ok, f"Monte Carlo within {ctx.params.sigmas:g} standard errors of the harmonic solve"


@check("chain_hitting_identity", "diffusion")
def _chain(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net, chain = glued_k3_chain(rng, int(rng.integers(2, 5)))
        for item in chain_hitting_identity(net, chain, ctx.tol):
            worst = max(worst, abs(item.probability - item.ratio))
    return worst, worst <= ctx.tol.assert_tol, "P_z[x before y] = R(z,y)/R(x,y) at cut points"


@check("commute_time_identity", "diffusion")
def _commute(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    ok = True
    n_samples = max(ctx.params.mc_samples // 4, 10)
    for i in range(min(ctx.params.fixtures, 20)):
        net = random_network(rng, int(rng.integers(2, 6)))
        x, y = (int(v) for v in rng.choice(net.vertex_ids, size=2, replace=False))
        estimate = commute_time_estimate(net, SpeedMeasure.degree(net), x, y, n_samples, ctx.seed, i, ctx.tol)
        deviation = abs(estimate.value - estimate.expected)
        worst = max(worst, deviation / estimate.expected)
        ok &= deviation <= ctx.params.sigmas * estimate.stderr
    return worst, ok, "E_x[sigma_y] + E_y[sigma_x] = R(x,y) mu0(V)"


@check("trace_walk_matches_trace_network", "diffusion")
def _trace_walk(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    leaves = [1, 2, 3, 4]
    net = Network.from_edges(range(5), [(0, leaf, float(rng.uniform(0.5, 2.0))) for leaf in leaves])
    B = leaves[:3]
    traced_net = trace_network(net, B, ctx.tol)
    path = simulate_walk(net, SpeedMeasure.counting(net), 1, 2.0 * ctx.params.mc_samples, ctx.seed)
    counts = transition_counts(trace_walk(path, B))
    worst = 0.0
    ok = True
    for i in B:
        n_i = sum(counts[(i, j)] for j in B)
        total = sum(traced_net.weight(i, j) for j in B)
        for j in B:
            if j == i or n_i == 0:
                continue
            p = traced_net.weight(i, j) / total
            deviation = abs(counts[(i, j)] / n_i - p)
            worst = max(worst, deviation)
            ok &= deviation <= ctx.params.sigmas * math.sqrt(p * (1.0 - p) / n_i) + 1.0 / n_i
    return worst, ok, "traced jump chain follows the conductances of trace_network"


@check("heat_kernel_detailed_balance", "diffusion")
def _balance(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, int(rng.integers(2, 7)))
        mu = SpeedMeasure(mu={v: float(rng.uniform(0.5, 2.0)) for v in net.vertex_ids})
        worst = max(worst, detailed_balance_deviation(net, mu, [0.1, 1.0, 10.0]))
    return worst, worst <= 1e-9, "mu(x) P_t(x,y) = mu(y) P_t(y,x)"


@check("return_probability_shape", "diffusion")
def _return_shape(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    times = np.linspace(0.0, 5.0, 21).tolist()
    for _ in range(ctx.params.fixtures):
        net = random_network(rng, ctx.size(rng))
        mu = SpeedMeasure.counting(net)
        p = np.array(return_probability(net, mu, net.vertex_ids[0], times, "eigen"))
        increase = float(np.max(np.diff(p), initial=0.0))
        concavity = float(np.max(-np.diff(p, 2), initial=0.0))
        worst = max(worst, increase, concavity)
    return worst, worst <= 1e-12, "p(t,x,x) is nonincreasing and convex"


@check("theory_bracket", "exponents")
def _bracket(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    grid = np.linspace(4.0, 8.0, 102)[1:-1]
    gaps = [c.d_double - c.d_sle for c in (theory_constants(k) for k in grid)]
    worst = max(gaps)
    return worst, worst < 0, "d_double < d_sle for kappa' in (4, 8)"


@check("exact_power_law_fit", "exponents")
def _power_law(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    exponent = float(rng.uniform(0.5, 2.5))
    scales = [2.0, 4.0, 8.0, 16.0, 32.0]
    fit = fit_power_law(scales, [3.0 * s**exponent for s in scales])
    deviation = abs(fit.slope - exponent)
    return deviation, deviation <= 1e-10, "OLS recovers an exact exponent"


@check("alpha_scale_invariance", "exponents")
def _alpha_scale(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    scales = [4.0, 8.0, 16.0, 32.0]
    samples = {s: (s**1.1 * rng.lognormal(0.0, 0.3, size=12)).tolist() for s in scales}
    factor = float(rng.uniform(0.1, 10.0))
    base, _ = alpha_from_samples(samples)
    scaled, _ = alpha_from_samples({s: [factor * v for v in vs] for s, vs in samples.items()})
    deviation = abs(base.slope - scaled.slope)
    return deviation, deviation <= 1e-10, "alpha slope unchanged by rescaling all resistances"


@check("median_permutation_invariance", "exponents")
def _median(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    values = rng.lognormal(0.0, 1.0, size=25).tolist()
    shuffled = rng.permutation(values).tolist()
    deviation = abs(median_normalizer(values) - median_normalizer(shuffled))
    return deviation, deviation == 0.0, "median ignores sample order"


@check("crossing_probability", "gasket_gen", slow=True)
def _crossing(ctx: SuiteContext, rng: np.random.Generator) -> tuple[float, bool, str]:
    worst = 0.0
    ok = True
    for side in ctx.params.crossing_sizes:
        estimate = crossing_probability(side, 0.5, ctx.params.crossing_samples, ctx.seed)
        worst = max(worst, abs(estimate.value - 0.5))
        stderr = math.sqrt(0.25 / ctx.params.crossing_samples)
        ok &= abs(estimate.value - 0.5) <= ctx.params.sigmas * stderr
    return worst, ok, "rhombus crossing probability at p = 1/2 is 1/2"


def run_suite(params: VerifyConfig, tol: Tolerances, seed: int) -> VerifyReport:
    """Run every registered check; a check that raises is reported as failed."""
    ctx = SuiteContext(params=params, tol=tol, seed=seed)
    results = []
    for index, (name, module, slow, fn) in enumerate(_CHECKS):
        if slow and not params.slow:
            continue
        try:
            deviation, passed, detail = fn(ctx, ctx.rng(index))
        except GasketError as exc:
            deviation, passed, detail = math.inf, False, f"{type(exc).__name__}: {exc}"
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        logger.info("%s/%s: %s (worst deviation %.3g)", module, name, status.value, deviation)
        results.append(
            CheckResult(name=name, module=module, status=status, worst_deviation=deviation, detail=detail)
        )
    return VerifyReport.from_checks(seed, results)


def cmd_verify(cfg: Config) -> dict[str, Any]:
    """Run the property suite and write `report.json`.

    Failures are report content: the response status is `fail` and carries
    the verification exit code.

    Args:
        cfg: Resolved configuration; the [verify] and [run] sections apply

    Returns:
        Response dict summarising every check
    """
    try:
        recorder = RunRecorder("verify", cfg, "verify")
        report = run_suite(cfg.verify, cfg.tolerances.to_tolerances(), cfg.run.seed)
        recorder.record(write_json(recorder.path("report.json"), report.model_dump(mode="json")))
        manifest = recorder.finish()
        response: dict[str, Any] = {
            "status": report.status.value,
            "checks": [
                {
                    "name": c.name,
                    "module": c.module,
                    "status": c.status.value,
                    "worst_deviation": c.worst_deviation,
                }
                for c in report.checks
            ],
            "output_dir": str(recorder.root),
            "files": sorted(manifest.outputs),
        }
        if report.failures:
            response["exit_code"] = int(ExitCode.VERIFICATION_FAILED)
            response["failed"] = [f"{c.module}/{c.name}: {c.detail}" for c in report.failures]
        return response
    except GasketError as exc:
        return error_response(exc)
