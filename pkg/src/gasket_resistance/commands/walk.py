"""Command that simulates the jump process and its return probability."""

from __future__ import annotations

import logging
from functools import partial
from pathlib import Path
from typing import Any

from gasket_resistance.commands.base import RunRecorder, error_response
from gasket_resistance.config.schema import Config, WalkConfig
from gasket_resistance.diffusion.heat_kernel import return_probability
from gasket_resistance.diffusion.walk import occupation_fractions, simulate_walk
from gasket_resistance.errors import ConfigError, GasketError
from gasket_resistance.gasket_gen.io import parse_cable
from gasket_resistance.models.diffusion import SpeedMeasure, Trajectory, WalkStatistics
from gasket_resistance.models.network import Network
from gasket_resistance.network_core.io import parse_network, read_text
from gasket_resistance.utils.csvio import write_csv
from gasket_resistance.utils.pool import run_tasks

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ("t", "vertex")
RETURN_HEADER = ("t", "p")
MAX_REPORTED_VERTICES = 20


def load_walk_network(path: Path) -> Network:
    """Network of a NET file or of a cable file."""
    text = read_text(path)
    if any(line.startswith("# cable") for line in text.splitlines()):
        return parse_cable(text).network
    return parse_network(text)


def _walk_replica(
    replica: int, net: Network, mu: SpeedMeasure, start: int, params: WalkConfig, seed: int
) -> Trajectory | WalkStatistics:
    if params.store:
        return simulate_walk(net, mu, start, params.tmax, seed, replica, store=True)
    return simulate_walk(net, mu, start, params.tmax, seed, replica, store=False)


def cmd_walk(cfg: Config) -> dict[str, Any]:
    """Simulate replicas of the walk and evaluate p(t, x, x) at its start.

    The walk runs on the component of the start vertex. Each replica is
    keyed by (seed, replica); with `store` set its path is written to
    `trajectories/replica_<r>.csv`. The return probability goes to
    `return_probability.csv`.

    Args:
        cfg: Resolved configuration; the [walk] and [run] sections apply

    Returns:
        Response dict with jump counts and mean occupation fractions
    """
    params = cfg.walk
    seed = cfg.run.seed
    try:
        if params.network is None:
            raise ConfigError(
                "no network to walk on", hint="set [walk].network to a NET or cable file"
            )
        full = load_walk_network(Path(params.network))
        if full.n_vertices == 0:
            raise ConfigError(f"{params.network}: the network has no vertices")
        start = params.start if params.start is not None else min(full.vertex_ids)
        labels = full.component_labels
        label = labels[full.position(start)]
        net = full.subnetwork(v for v, lab in zip(full.vertex_ids, labels.tolist()) if lab == label)
        if net.n_vertices < 2:
            raise ConfigError(f"start vertex {start} is isolated; the walk cannot move")
        mu = SpeedMeasure.for_rule(net, params.mu)

        recorder = RunRecorder("walk", cfg, "walk")
        worker = partial(_walk_replica, net=net, mu=mu, start=start, params=params, seed=seed)
        results = run_tasks(worker, list(range(params.replicas)), cfg.run.threads)
        totals: dict[int, float] = {}
        jumps = []
        for replica, result in enumerate(results):
            if isinstance(result, Trajectory):
                rows = zip(result.times.tolist(), result.states.tolist())
                path = recorder.path(f"trajectories/replica_{replica}.csv")
                recorder.record(write_csv(path, TRAJECTORY_HEADER, rows), (seed, replica))
            else:
                recorder.manifest.replica_seeds.append([seed, replica])
            jumps.append(result.n_jumps)
            for vertex, fraction in occupation_fractions(result).items():
                totals[vertex] = totals.get(vertex, 0.0) + fraction / params.replicas

        p = return_probability(
            net, mu, start, params.times, params.method, params.mc_samples, seed
        )
        path = recorder.path("return_probability.csv")
        recorder.record(write_csv(path, RETURN_HEADER, zip(params.times, p)))
        manifest = recorder.finish()

        expected = {v: mu.mu[v] / mu.total for v in net.vertex_ids}
        occupation = [
            {"vertex": v, "fraction": totals.get(v, 0.0), "mu_share": expected[v]}
            for v in sorted(net.vertex_ids)[:MAX_REPORTED_VERTICES]
        ]
        return {
            "status": "success",
            "walk": {
                "start": start,
                "vertices": net.n_vertices,
                "replicas": params.replicas,
                "mean_jumps": sum(jumps) / len(jumps),
            },
            "occupation": occupation,
            "return_probability": [{"t": t, "p": value} for t, value in zip(params.times, p)],
            "output_dir": str(recorder.root),
            "files": sorted(manifest.outputs),
        }
    except GasketError as exc:
        return error_response(exc)
