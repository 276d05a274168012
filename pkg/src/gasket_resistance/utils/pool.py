"""Bounded worker pool for independent replica tasks."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def run_tasks(fn: Callable[[T], R], tasks: Sequence[T], threads: int = 1) -> list[R]:
    """Apply `fn` to every task, returning results in task order.

    With threads > 1 the tasks run in a process pool of that size; `fn` and
    the tasks must then be picklable. Results never depend on scheduling
    because every task carries its own RNG key.
    """
    if threads <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    workers = min(threads, len(tasks))
    logger.debug("running %d tasks on %d workers", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, tasks))
