"""Command-line front end of the `gasket` command."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from gasket_resistance.commands import (
    cmd_exponents,
    cmd_generate,
    cmd_resist,
    cmd_verify,
    cmd_walk,
    error_response,
    verify_manifest,
)
from gasket_resistance.config import Config, load_config
from gasket_resistance.errors import ExitCode, GasketError
from gasket_resistance.utils.toon import encode_toon

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

COMMANDS: dict[str, Callable[[Config], dict[str, Any]]] = {
    "generate": cmd_generate,
    "resist": cmd_resist,
    "walk": cmd_walk,
    "exponents": cmd_exponents,
    "verify": cmd_verify,
}


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gasket",
        description="Effective resistance, percolation gasket cables and diffusion exponents.",
    )
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument("--output-dir", help="Directory receiving one folder per command")
    parser.add_argument("--seed", type=int, help="Global seed")
    parser.add_argument("--threads", type=int, help="Worker threads")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output (repeatable)")
    parser.add_argument("--quiet", action="store_true", help="Only log errors")
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="Sample clusters and cable networks")
    generate.add_argument("--size", type=_int_list, dest="sizes", help="Lattice sides, e.g. 64,128")
    generate.add_argument("--p", type=float, help="Site-open probability")
    generate.add_argument("--eps", type=_float_list, help="Cable scales, e.g. 2,4,8")
    generate.add_argument("--c0", type=float, help="Intensity exponent offset")
    generate.add_argument("--a0", type=float, help="Dead-end scale exponent")
    generate.add_argument("--replicas", type=int, help="Clusters per size")
    generate.add_argument("--crossing-samples", type=int, help="Also estimate crossing probabilities")

    resist = sub.add_parser("resist", help="Resistance tables and annulus resistances")
    resist.add_argument("--network", action="append", dest="networks", help="NET file (repeatable)")
    resist.add_argument("--snapshot", action="append", dest="snapshots", help="CLUSTER file (repeatable)")
    resist.add_argument("--scales", type=_float_list, help="Annulus inner radii")
    resist.add_argument("--eps", type=float, help="Fixed cable scale for every annulus")
    resist.add_argument("--metric", choices=["chemical", "euclidean"], help="Annulus shell metric")
    resist.add_argument("--c0", type=float, help="Intensity exponent offset")
    resist.add_argument("--a0", type=float, help="Dead-end scale exponent")

    walk = sub.add_parser("walk", help="Simulate the jump process")
    walk.add_argument("--network", help="NET or cable file")
    walk.add_argument("--start", type=int, help="Start vertex")
    walk.add_argument("--tmax", type=float, help="Trajectory length")
    walk.add_argument("--replicas", type=int, help="Independent trajectories")
    walk.add_argument("--mu", choices=["count", "degree"], help="Speed measure")
    walk.add_argument("--times", type=_float_list, help="Return-probability times")
    walk.add_argument("--method", choices=["auto", "eigen", "mc"], help="Heat-kernel method")

    exponents = sub.add_parser("exponents", help="Fit d, alpha and d_s on critical clusters")
    exponents.add_argument("--kappa", type=float, help="CLE parameter kappa' in (4, 8)")
    exponents.add_argument("--sizes", type=_int_list, help="Lattice sides")
    exponents.add_argument("--scales", type=_float_list, help="Dyadic annulus radii")
    exponents.add_argument("--replicas", type=int, help="Clusters per size")
    exponents.add_argument("--c0", type=float, help="Intensity exponent offset")
    exponents.add_argument("--a0", type=float, help="Dead-end scale exponent")
    exponents.add_argument(
        "--no-spectral", dest="spectral", action="store_false", default=None, help="Skip the walk fit"
    )

    verify = sub.add_parser("verify", help="Run the property suite")
    verify.add_argument(
        "--inject-non-metric",
        action="store_true",
        default=None,
        help="Add a non-metric resistance fixture; the suite must fail",
    )
    verify.add_argument("--slow", action="store_true", default=None, help="Include the crossing check")
    verify.add_argument("--fixtures", type=int, help="Random fixtures per property")
    verify.add_argument("--manifest", help="Re-hash the outputs listed in this manifest instead")
    return parser


def configure_logging(verbosity: int, quiet: bool) -> None:
    """Route log records to stderr; stdout carries only the summary."""
    if quiet:
        level = logging.ERROR
    elif verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def overrides_from_args(args: argparse.Namespace) -> dict[str, dict[str, Any]]:
    """Per-section config overrides from the parsed flags (None means unset)."""
    overrides: dict[str, dict[str, Any]] = {
        "run": {"output_dir": args.output_dir, "seed": args.seed, "threads": args.threads},
    }
    section: dict[str, Any] = {}
    if args.command == "generate":
        section = {
            "sizes": args.sizes,
            "p": args.p,
            "eps": args.eps,
            "c0": args.c0,
            "a0": args.a0,
            "replicas": args.replicas,
            "crossing_samples": args.crossing_samples,
        }
    elif args.command == "resist":
        section = {
            "networks": args.networks,
            "snapshots": args.snapshots,
            "scales": args.scales,
            "eps": args.eps,
            "metric": args.metric,
            "c0": args.c0,
            "a0": args.a0,
        }
    elif args.command == "walk":
        section = {
            "network": args.network,
            "start": args.start,
            "tmax": args.tmax,
            "replicas": args.replicas,
            "mu": args.mu,
            "times": args.times,
            "method": args.method,
        }
    elif args.command == "exponents":
        section = {
            "kappa": args.kappa,
            "sizes": args.sizes,
            "scales": args.scales,
            "replicas": args.replicas,
            "c0": args.c0,
            "a0": args.a0,
            "spectral": args.spectral,
        }
    elif args.command == "verify":
        section = {
            "inject_non_metric": args.inject_non_metric,
            "slow": args.slow,
            "fixtures": args.fixtures,
        }
    overrides[args.command] = section
    return overrides


def emit(response: dict[str, Any]) -> int:
    """Print the TOON summary and return the exit code it carries."""
    code = int(response.pop("exit_code", ExitCode.SUCCESS))
    if response.get("status") == "error":
        logger.error("%s", response.get("error"))
    print(encode_toon(response))
    return code


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, load the configuration and dispatch one command."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    if args.command == "verify" and args.manifest:
        return emit(verify_manifest(args.manifest))
    try:
        cfg = load_config(force_reload=True, path=args.config, overrides=overrides_from_args(args))
    except GasketError as exc:
        return emit(error_response(exc))
    logger.info("running %s with seed %d", args.command, cfg.run.seed)
    return emit(COMMANDS[args.command](cfg))
