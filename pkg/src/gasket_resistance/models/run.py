"""Models for run manifests and verification reports."""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    """Outcome of a single property check."""

    PASS = "pass"
    FAIL = "fail"


class RunManifest(BaseModel):
    """Provenance record written next to every command's outputs.

    The manifest is written before any result file; `outputs` is filled in
    once every file has been written.
    """

    command: str = Field(..., description="Subcommand that produced the run")
    version: str = Field(..., description="Package version string")
    seed: int = Field(..., ge=0, description="Global seed of the run")
    replica_seeds: list[list[int]] = Field(
        default_factory=list, description="(seed, replica) key of every replica"
    )
    config: dict[str, Any] = Field(default_factory=dict, description="Resolved configuration snapshot")
    started_at: str = Field(..., description="UTC start time, ISO 8601")
    finished_at: str | None = Field(default=None, description="UTC finish time, ISO 8601")
    status: str = Field(default="running", description="running, success or error")
    outputs: dict[str, str] = Field(
        default_factory=dict, description="sha256 per output file, keyed by relative path"
    )


class CheckResult(BaseModel):
    """One verified property."""

    name: str = Field(..., description="Property name")
    module: str = Field(..., description="Module the property belongs to")
    status: CheckStatus = Field(..., description="pass or fail")
    worst_deviation: float = Field(..., description="Largest observed deviation from the property")
    detail: str = Field(default="", description="Human-readable summary")


class VerifyReport(BaseModel):
    """Report of a verification run."""

    status: CheckStatus = Field(..., description="pass iff every check passed")
    seed: int = Field(..., ge=0, description="Seed the randomized fixtures were drawn from")
    checks: list[CheckResult] = Field(default_factory=list, description="Per-property results")

    @classmethod
    def from_checks(cls, seed: int, checks: list[CheckResult]) -> VerifyReport:
        passed = all(check.status is CheckStatus.PASS for check in checks)
        return cls(status=CheckStatus.PASS if passed else CheckStatus.FAIL, seed=seed, checks=checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.status is CheckStatus.FAIL]
