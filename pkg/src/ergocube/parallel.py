"""Deterministic worker-pool mapping.

Results are collected in task order, never completion order, so any
experiment built on :func:`ordered_map` produces identical output for any
worker count.  Workers must be top-level functions with picklable arguments.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence


def ordered_map(fn: Callable, tasks: Sequence, workers: int = 1) -> list:
    """Map ``fn`` over ``tasks``, preserving task order in the result."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))
