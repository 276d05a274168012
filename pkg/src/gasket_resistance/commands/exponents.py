"""Command that estimates the gasket dimension, resistance exponent and spectral dimension."""

from __future__ import annotations

import logging
from functools import partial
from typing import Any

from gasket_resistance.commands.base import RunRecorder, error_response
from gasket_resistance.config.schema import Config, ExponentsConfig
from gasket_resistance.errors import ArgumentError, GasketError, InsufficientDataError
from gasket_resistance.exponents.annulus import (
    alpha_from_samples,
    collect_annuli,
    default_eps_rule,
    median_ratios,
)
from gasket_resistance.exponents.fitting import bracket_flags, fit_dimension
from gasket_resistance.exponents.spectral import (
    estimate_spectral_dimension,
    predicted_spectral_dimension,
    spectral_dimension,
)
from gasket_resistance.exponents.theory import theory_constants
from gasket_resistance.gasket_gen.cable import cable_approximation
from gasket_resistance.gasket_gen.cluster import volume_profile
from gasket_resistance.gasket_gen.lattice import CRITICAL_P, largest_cluster, sample_percolation
from gasket_resistance.models.diffusion import MeasureRule
from gasket_resistance.models.exponents import ExponentFit
from gasket_resistance.models.lattice import ClusterGraph, VolumeProfile
from gasket_resistance.utils.csvio import write_csv, write_json
from gasket_resistance.utils.pool import run_tasks

logger = logging.getLogger(__name__)

FIT_HEADER = ("scale", "value")


def _critical_cluster(
    task: tuple[int, int], params: ExponentsConfig, seed: int
) -> tuple[ClusterGraph | None, VolumeProfile | None]:
    side, replica = task
    cluster = largest_cluster(sample_percolation(side, CRITICAL_P, seed, replica))
    if cluster is None:
        return None, None
    return cluster, volume_profile(cluster, params.radii, params.volume_centers, seed, replica)


def _within(value: float, band: tuple[float, float]) -> bool:
    return band[0] <= value <= band[1]


def cmd_exponents(cfg: Config) -> dict[str, Any]:
    """Fit d, alpha and d_s on critical clusters and compare them with theory.

    Writes `exponents.json` ({constants, fits, flags}) and one
    `fits/<name>.csv` per fit. A fit without enough data is skipped with a
    warning; the flags it would feed are then null.

    Args:
        cfg: Resolved configuration; the [exponents] and [run] sections apply

    Returns:
        Response dict with the fits and acceptance flags
    """
    params = cfg.exponents
    seed = cfg.run.seed
    tol = cfg.tolerances.to_tolerances()
    try:
        theory = theory_constants(params.kappa)
        recorder = RunRecorder("exponents", cfg, "exponents")
        tasks = [(side, replica) for side in params.sizes for replica in range(params.replicas)]
        worker = partial(_critical_cluster, params=params, seed=seed)
        results = run_tasks(worker, tasks, cfg.run.threads)
        clusters = [cluster for cluster, _ in results if cluster is not None]
        profiles = [profile for _, profile in results if profile is not None]
        for index in range(len(clusters)):
            recorder.manifest.replica_seeds.append([seed, index])

        fits: list[ExponentFit] = []
        warnings: list[str] = []
        flags: dict[str, bool | None] = {
            "dimension_in_band": None,
            "alpha_in_bracket": None,
            "alpha_in_loose_band": None,
            "ratios_in_band": None,
            "spectral_consistent": None,
        }

        dimension: ExponentFit | None = None
        try:
            dimension = fit_dimension(profiles, None, theory)
            fits.append(dimension)
            flags["dimension_in_band"] = _within(dimension.slope, params.dimension_band)
        except (ArgumentError, InsufficientDataError) as exc:
            warnings.append(f"dimension: {exc}")

        alpha: ExponentFit | None = None
        ratios: dict[float, float] = {}
        try:
            pooled = collect_annuli(
                clusters,
                params.scales,
                default_eps_rule,
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
            alpha, medians = alpha_from_samples(pooled, params.min_samples)
            fits.append(alpha)
            in_bracket = bracket_flags(alpha, theory, params.alpha_band)
            flags["alpha_in_bracket"] = in_bracket["in_bracket"]
            flags["alpha_in_loose_band"] = in_bracket["in_loose_band"]
            ratios = median_ratios(medians)
            if ratios:
                flags["ratios_in_band"] = all(_within(r, params.ratio_band) for r in ratios.values())
        except InsufficientDataError as exc:
            warnings.append(f"alpha: {exc}")

        spectral: ExponentFit | None = None
        if params.spectral and clusters:
            nets = [
                cable_approximation(
                    cluster,
                    params.spectral_eps,
                    c0=params.c0,
                    a0=params.a0,
                    seed=seed,
                    replica=index,
                    mode=params.mode,
                    edge_mode=params.edge_mode,
                    intensity=params.intensity,
                    prune=params.prune,
                )
                for index, cluster in enumerate(clusters)
            ]
            try:
                spectral = estimate_spectral_dimension(
                    nets, MeasureRule.COUNT, params.t_range, [seed], params.n_starts
                )
                fits.append(spectral)
            except (ArgumentError, InsufficientDataError) as exc:
                warnings.append(f"spectral: {exc}")
            if spectral is not None and dimension is not None and alpha is not None:
                d_s = spectral_dimension(spectral).value
                predicted = predicted_spectral_dimension(dimension.slope, alpha.slope)
                flags["spectral_consistent"] = abs(d_s - predicted) <= params.spectral_tolerance

        for fit in fits:
            warnings.extend(f"{fit.name}: {note}" for note in fit.warnings)
            path = recorder.path(f"fits/{fit.name}.csv")
            recorder.record(write_csv(path, FIT_HEADER, zip(fit.scales, fit.values)))
        document: dict[str, Any] = {
            "constants": theory.model_dump(),
            "fits": [fit.as_row() for fit in fits],
            "flags": flags,
            "median_ratios": [{"scale": s, "ratio": r} for s, r in sorted(ratios.items())],
            "warnings": warnings,
        }
        if spectral is not None:
            document["spectral_dimension"] = spectral_dimension(spectral)._asdict()
        recorder.record(write_json(recorder.path("exponents.json"), document))
        manifest = recorder.finish()
        return {
            "status": "success",
            "constants": theory.model_dump(),
            "fits": [
                {"name": fit.name, "slope": fit.slope, "stderr": fit.stderr, "r2": fit.r_squared}
                for fit in fits
            ],
            "flags": flags,
            "warnings": warnings,
            "output_dir": str(recorder.root),
            "files": sorted(manifest.outputs),
        }
    except GasketError as exc:
        return error_response(exc)
