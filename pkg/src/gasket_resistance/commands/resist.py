"""Command that computes effective resistances of networks and annuli."""

from __future__ import annotations

import logging
from functools import partial
from itertools import combinations
from pathlib import Path
from typing import Any

from gasket_resistance.commands.base import RunRecorder, error_response
from gasket_resistance.config.schema import Config
from gasket_resistance.errors import ConfigError, GasketError, InsufficientDataError
from gasket_resistance.exponents.annulus import collect_annuli, default_eps_rule, median_normalizer
from gasket_resistance.gasket_gen.io import read_cluster
from gasket_resistance.models.exponents import AnnulusStatus
from gasket_resistance.network_core.io import read_network
from gasket_resistance.network_core.resistance import resistance_matrix
from gasket_resistance.utils.csvio import write_csv

logger = logging.getLogger(__name__)

ANNULUS_HEADER = ("scale", "center_q", "center_r", "resistance", "status")
PAIR_HEADER = ("x", "y", "resistance")


def fixed_eps(eps: float, scale: float) -> float:
    return eps


def _snapshot_paths(cfg: Config) -> list[Path]:
    if cfg.resist.snapshots:
        return [Path(p) for p in cfg.resist.snapshots]
    generated = Path(cfg.run.output_dir) / "generate" / "clusters"
    return sorted(generated.glob("*.cluster"))


def cmd_resist(cfg: Config) -> dict[str, Any]:
    """Resistance tables for network files and annulus resistances for cluster snapshots.

    Every NET file in [resist].networks gives `resistances/<stem>.csv` with
    one row per vertex pair. The cluster snapshots (by default those written
    by `generate`) give `annuli.csv` with one row per annulus.

    Args:
        cfg: Resolved configuration; the [resist] and [run] sections apply

    Returns:
        Response dict with per-network and per-scale summaries
    """
    params = cfg.resist
    tol = cfg.tolerances.to_tolerances()
    seed = cfg.run.seed
    try:
        snapshots = _snapshot_paths(cfg)
        if not params.networks and not snapshots:
            raise ConfigError(
                "nothing to solve: no network files and no cluster snapshots",
                hint="set [resist].networks or snapshots, or run `gasket generate` first",
            )
        recorder = RunRecorder("resist", cfg, "resist")
        response: dict[str, Any] = {"status": "success"}

        tables = []
        for path in params.networks:
            net = read_network(Path(path))
            subset = params.subset or list(net.vertex_ids)
            Rm = resistance_matrix(net, subset, tol)
            rows = [(x, y, Rm.value(x, y)) for x, y in combinations(Rm.vertex_ids, 2)]
            out = recorder.path(f"resistances/{Path(path).stem}.csv")
            recorder.record(write_csv(out, PAIR_HEADER, rows))
            tables.append({"network": str(path), "vertices": net.n_vertices, "pairs": len(rows)})
        if tables:
            response["networks"] = tables

        if snapshots:
            clusters = [read_cluster(path).cluster for path in snapshots]
            eps_rule = partial(fixed_eps, params.eps) if params.eps is not None else default_eps_rule
            pooled = collect_annuli(
                clusters,
                params.scales,
                eps_rule,
                seeds=[seed],
                n_centers=params.n_centers,
                mode=params.mode,
                edge_mode=params.edge_mode,
                metric=params.metric,
                prune=params.prune,
                intensity=params.intensity,
                c0=params.c0,
                a0=params.a0,
                threads=cfg.run.threads,
                tol=tol,
            )
            annulus_rows = [sample.as_row() for scale in sorted(pooled) for sample in pooled[scale]]
            recorder.record(write_csv(recorder.path("annuli.csv"), ANNULUS_HEADER, annulus_rows))
            for replica in range(len(clusters)):
                recorder.manifest.replica_seeds.append([seed, replica])
            summary = []
            for scale in sorted(pooled):
                ok = [s for s in pooled[scale] if s.status is AnnulusStatus.OK]
                try:
                    median: float | None = median_normalizer(ok, min_samples=1)
                except InsufficientDataError:
                    median = None
                summary.append(
                    {"scale": scale, "annuli": len(pooled[scale]), "ok": len(ok), "median": median}
                )
            response["annuli"] = summary

        manifest = recorder.finish()
        response["output_dir"] = str(recorder.root)
        response["files"] = sorted(manifest.outputs)
        return response
    except GasketError as exc:
        return error_response(exc)
