"""
Shared runtime helpers.
This module avoids circular imports by keeping the worker pool separate
from the services that use it.
"""
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List


class _SerialPool:
    """In-process stand-in used when a single job is requested."""

    def map(self, fn: Callable, items: Iterable) -> List:
        return [fn(item) for item in items]


class _ProcessPool:
    def __init__(self, executor: ProcessPoolExecutor):
        self._executor = executor

    def map(self, fn: Callable, items: Iterable) -> List:
        # Executor.map yields in submission order
        return list(self._executor.map(fn, items))


@contextmanager
def worker_pool(jobs: int = 1) -> Iterator:
    """
    Open a worker pool with an order-preserving ``map``.

    Args:
        jobs: Number of worker processes; 1 runs everything in-process

    Yields:
        Object with ``map(fn, items) -> list``
    """
    if jobs is None or jobs <= 1:
        yield _SerialPool()
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield _ProcessPool(executor)
