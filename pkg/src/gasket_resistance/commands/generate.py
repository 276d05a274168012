"""Command that samples percolation clusters and their cable networks."""

from __future__ import annotations

import logging
from functools import partial
from typing import Any, NamedTuple

from gasket_resistance.commands.base import RunRecorder, error_response
from gasket_resistance.config.schema import Config, GenerateConfig
from gasket_resistance.errors import GasketError
from gasket_resistance.gasket_gen.cable import cable_approximation
from gasket_resistance.gasket_gen.io import write_cable, write_cluster
from gasket_resistance.gasket_gen.lattice import crossing_probability, largest_cluster, sample_percolation
from gasket_resistance.models.lattice import CableNetwork, ClusterGraph
from gasket_resistance.utils.pool import run_tasks

logger = logging.getLogger(__name__)


class GeneratedReplica(NamedTuple):
    side: int
    replica: int
    cluster: ClusterGraph | None
    cables: list[CableNetwork]


def cluster_name(side: int, replica: int) -> str:
    return f"clusters/L{side}_r{replica}.cluster"


def cable_name(side: int, replica: int, eps: float) -> str:
    return f"cables/L{side}_r{replica}_eps{eps:g}.net"


def _generate_replica(task: tuple[int, int], params: GenerateConfig, seed: int) -> GeneratedReplica:
    side, replica = task
    cluster = largest_cluster(sample_percolation(side, params.p, seed, replica))
    cables = []
    if cluster is not None:
        for eps in params.eps:
            cables.append(
                cable_approximation(
                    cluster,
                    eps,
                    c0=params.c0,
                    a0=params.a0,
                    seed=seed,
                    replica=replica,
                    mode=params.mode,
                    edge_mode=params.edge_mode,
                    intensity=params.intensity,
                    prune=params.prune,
                )
            )
    return GeneratedReplica(side, replica, cluster, cables)


def cmd_generate(cfg: Config) -> dict[str, Any]:
    """Sample the largest cluster of each (size, replica) and its cable networks.

    Writes one CLUSTER v1 snapshot per replica and one cable file per eps,
    all keyed by (seed, replica), so reruns are byte-identical.

    Args:
        cfg: Resolved configuration; the [generate] and [run] sections apply

    Returns:
        Response dict with the written files and per-replica cluster sizes
    """
    params = cfg.generate
    seed = cfg.run.seed
    try:
        recorder = RunRecorder("generate", cfg, "generate")
        tasks = [(side, replica) for side in params.sizes for replica in range(params.replicas)]
        worker = partial(_generate_replica, params=params, seed=seed)
        rows = []
        for result in run_tasks(worker, tasks, cfg.run.threads):
            key = (seed, result.replica)
            if result.cluster is None:
                logger.warning("L=%d replica %d has no open site", result.side, result.replica)
                rows.append({"L": result.side, "replica": result.replica, "sites": 0, "cables": 0})
                continue
            path = recorder.path(cluster_name(result.side, result.replica))
            recorder.record(write_cluster(result.cluster, params.p, seed, path), key)
            for eps, cable in zip(params.eps, result.cables):
                path = recorder.path(cable_name(result.side, result.replica, eps))
                recorder.record(write_cable(cable, path), key)
            rows.append(
                {
                    "L": result.side,
                    "replica": result.replica,
                    "sites": result.cluster.size,
                    "cables": len(result.cables),
                }
            )

        response: dict[str, Any] = {"status": "success", "clusters": rows}
        if params.crossing_samples:
            crossing = []
            for side in params.sizes:
                estimate = crossing_probability(
                    side, params.p, params.crossing_samples, seed, cfg.run.threads
                )
                crossing.append({"L": side, "p_hat": estimate.value, "stderr": estimate.stderr})
            response["crossing"] = crossing
        manifest = recorder.finish()
        response["output_dir"] = str(recorder.root)
        response["files"] = sorted(manifest.outputs)
        return response
    except GasketError as exc:
        return error_response(exc)
