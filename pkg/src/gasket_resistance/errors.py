"""Exception hierarchy and process exit codes."""

from __future__ import annotations

import math
from enum import IntEnum
from pathlib import Path

# Effective resistance between vertices in different components.
INFINITE_RESISTANCE = math.inf


class ExitCode(IntEnum):
    """Stable exit codes of the `gasket` command."""

    SUCCESS = 0
    CONFIG_ERROR = 2
    IO_ERROR = 3
    VERIFICATION_FAILED = 4


class GasketError(Exception):
    """Base class for all library errors."""

    hint: str | None = None

    def __init__(self, message: str, hint: str | None = None) -> None:
        super().__init__(message)
        if hint is not None:
            self.hint = hint


class ArgumentError(GasketError, ValueError):
    """An argument is outside the operation's domain."""


class DomainMismatchError(GasketError, KeyError):
    """A function is missing values on vertices of its network."""

    def __str__(self) -> str:
        return str(self.args[0])


class DisconnectedError(GasketError):
    """A vertex cannot reach the set it must be connected to."""

    def __init__(self, vertex: int, message: str | None = None) -> None:
        super().__init__(message or f"vertex {vertex} is disconnected from the boundary set")
        self.vertex = vertex


class PreconditionError(GasketError):
    """A structural precondition (e.g. separation) does not hold."""


class NotAResistanceMetricError(GasketError):
    """Recovered conductances are negative beyond tolerance."""

    hint = "the input matrix violates the resistance-metric axioms"


class NumericalError(GasketError):
    """A linear solve failed or a matrix is singular."""


class InsufficientDataError(GasketError):
    """Too few samples to produce an estimate."""


class ConfigError(GasketError):
    """Configuration could not be parsed or validated."""

    hint = "check the configuration file and command-line flags"


class OutputError(GasketError, OSError):
    """An output or input file could not be accessed."""

    def __init__(self, path: Path | str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = Path(path)

    def __str__(self) -> str:
        return str(self.args[0])
