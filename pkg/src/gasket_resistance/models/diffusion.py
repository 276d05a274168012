"""Models for the symmetric jump process on a network."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gasket_resistance.errors import ArgumentError, DomainMismatchError
from gasket_resistance.models.network import Network


class MeasureRule(str, Enum):
    """Speed measure choice for walk experiments."""

    COUNT = "count"
    DEGREE = "degree"


class SpeedMeasure(BaseModel):
    """A strictly positive finite measure on the vertices of a network."""

    model_config = ConfigDict(frozen=True)

    mu: dict[int, float] = Field(..., description="Mass per vertex label")

    @field_validator("mu")
    @classmethod
    def _positive(cls, value: dict[int, float]) -> dict[int, float]:
        for vertex, mass in value.items():
            if not (np.isfinite(mass) and mass > 0):
                raise ValueError(f"mass at vertex {vertex} must be finite and > 0, got {mass}")
        return value

    @classmethod
    def counting(cls, net: Network) -> SpeedMeasure:
        return cls(mu=dict.fromkeys(net.vertex_ids, 1.0))

    @classmethod
    def degree(cls, net: Network) -> SpeedMeasure:
        """mu_0(x) = sum_y w(x, y); every vertex must have an edge."""
        return cls(mu={v: float(d) for v, d in zip(net.vertex_ids, net.degree)})

    @classmethod
    def for_rule(cls, net: Network, rule: MeasureRule | str) -> SpeedMeasure:
        if MeasureRule(rule) is MeasureRule.DEGREE:
            return cls.degree(net)
        return cls.counting(net)

    @property
    def total(self) -> float:
        return float(sum(self.mu.values()))

    def on(self, vertex_ids: Iterable[int]) -> np.ndarray:
        ordered = list(vertex_ids)
        missing = [v for v in ordered if v not in self.mu]
        if missing:
            raise DomainMismatchError(f"speed measure is undefined on vertex {missing[0]}")
        return np.array([self.mu[v] for v in ordered], dtype=float)


def _frozen(value: Any, dtype: Any) -> np.ndarray:
    array = np.array(value, dtype=dtype).ravel()
    array.setflags(write=False)
    return array


class Trajectory(BaseModel):
    """A sample path: the walk sits at states[i] during [times[i], times[i+1])."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray = Field(..., description="Jump times, strictly increasing from 0")
    states: np.ndarray = Field(..., description="Vertex occupied from each jump time on")
    t_max: float = Field(..., ge=0, description="End of the observation window")
    seed: int = Field(default=0, ge=0, description="Seed the path was simulated with")

    @model_validator(mode="before")
    @classmethod
    def _coerce(cls, data: Any) -> Any:
        if isinstance(data, Mapping):
            data = dict(data)
            if "times" in data:
                data["times"] = _frozen(data["times"], float)
            if "states" in data:
                data["states"] = _frozen(data["states"], np.int64)
        return data

    @model_validator(mode="after")
    def _check(self) -> Trajectory:
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if len(self.times):
            if self.times[0] != 0:
                raise ValueError("trajectories start at time 0")
            if np.any(np.diff(self.times) <= 0):
                raise ValueError("jump times must be strictly increasing")
            if self.times[-1] > self.t_max:
                raise ValueError("jump times must not exceed t_max")
        return self

    @classmethod
    def empty(cls, t_max: float = 0.0, seed: int = 0) -> Trajectory:
        return cls(times=[], states=[], t_max=t_max, seed=seed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trajectory):
            return NotImplemented
        return (
            (self.t_max, self.seed) == (other.t_max, other.seed)
            and bool(np.array_equal(self.times, other.times))
            and bool(np.array_equal(self.states, other.states))
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_empty(self) -> bool:
        return len(self.states) == 0

    @property
    def n_jumps(self) -> int:
        return max(len(self.states) - 1, 0)

    def holding_times(self) -> np.ndarray:
        """Time spent in each visited state (the last one truncated at t_max)."""
        if self.is_empty:
            return np.zeros(0)
        return np.diff(np.append(self.times, self.t_max))

    def check_edges(self, net: Network) -> None:
        """Raise if two consecutive states are not joined by a positive conductance."""
        for u, v in zip(self.states[:-1].tolist(), self.states[1:].tolist()):
            if net.weight(u, v) <= 0:
                raise ArgumentError(f"trajectory jumps along the non-edge ({u}, {v})")


class WalkStatistics(BaseModel):
    """Summary of a walk simulated without storing its path."""

    model_config = ConfigDict(frozen=True)

    n_jumps: int = Field(..., ge=0, description="Number of jumps before t_max")
    occupation: dict[int, float] = Field(..., description="Time spent at each visited vertex")
    final_state: int = Field(..., description="Vertex occupied at t_max")
    t_max: float = Field(..., gt=0, description="Length of the run")
    seed: int = Field(default=0, ge=0, description="Seed the walk was simulated with")

    def fractions(self) -> dict[int, float]:
        return {v: t / self.t_max for v, t in self.occupation.items()}


class HittingQuery(BaseModel):
    """Probability that a walk from `start` hits `target_a` before `target_b`."""

    model_config = ConfigDict(frozen=True)

    start: int = Field(..., description="Starting vertex")
    target_a: frozenset[int] = Field(..., description="Vertex set to hit first")
    target_b: frozenset[int] = Field(..., description="Competing vertex set")

    @model_validator(mode="after")
    def _check_targets(self) -> HittingQuery:
        if not self.target_a or not self.target_b:
            raise ValueError("both target sets must be nonempty")
        if self.target_a & self.target_b:
            raise ValueError("target sets must be disjoint")
        return self
