"""Counter-based random streams.

Every random draw in the package comes from a Philox generator keyed by
(global seed, replica index, stream id). Replicas can therefore run in any
order, on any worker, and still reproduce bit for bit.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from gasket_resistance.errors import ArgumentError


class Stream(IntEnum):
    """Independent stream ids, one per consumer of randomness."""

    LATTICE = 1
    POISSON = 2
    WALK = 3
    HITTING = 4
    CENTERS = 5
    COMMUTE = 6
    FIXTURES = 7


def make_rng(seed: int, replica: int = 0, stream: Stream = Stream.LATTICE) -> np.random.Generator:
    """Generator for one (seed, replica, stream) key."""
    if seed < 0 or replica < 0:
        raise ArgumentError(f"seed and replica must be non-negative (got {seed}, {replica})")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream), int(replica)))
    return np.random.Generator(np.random.Philox(sequence))


class UniformBuffer:
    """Pre-drawn block of uniforms and exponentials for tight simulation loops.

    Refills from the underlying generator when exhausted, so the sequence of
    values is identical to drawing one at a time in blocks of `size`.
    """

    def __init__(self, rng: np.random.Generator, size: int = 65536) -> None:
        self._rng = rng
        self._size = size
        self._uniform = rng.random(size)
        self._exponential = rng.standard_exponential(size)
        self._u = 0
        self._e = 0

    def uniform(self) -> float:
        if self._u == self._size:
            self._uniform = self._rng.random(self._size)
            self._u = 0
        value = self._uniform[self._u]
        self._u += 1
        return float(value)

    def exponential(self) -> float:
        """Standard exponential (rate 1) variate."""
        if self._e == self._size:
            self._exponential = self._rng.standard_exponential(self._size)
            self._e = 0
        value = self._exponential[self._e]
        self._e += 1
        return float(value)
