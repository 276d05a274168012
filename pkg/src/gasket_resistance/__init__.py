"""Effective-resistance calculus, percolation gasket cable graphs and diffusion exponents."""

from __future__ import annotations

from collections.abc import Sequence

__version__ = "0.1.0"


def main(argv: Sequence[str] | None = None) -> int:
    """Run the `gasket` command."""
    from gasket_resistance.cli import run

    return run(argv)


__all__ = ["__version__", "main"]
