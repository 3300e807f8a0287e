"""Define runtime management."""
from __future__ import annotations

import asyncio
from collections.abc import AsyncIterator, Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, TypeVar

from vwrt.const import LOGGER
from vwrt.helpers.typing import Mapper

T = TypeVar("T")

DEFAULT_CHUNKSIZE = 4


class Runtime:
    """Define the runtime manager.

    With more than one job, coloring evaluations are fanned out to a process pool
    through `mapper`; per-diagram work runs in the event loop's default executor.
    """

    def __init__(self, jobs: int = 1) -> None:
        """Initialize.

        Args:
            jobs: The parallelism degree.
        """
        self._executor: ProcessPoolExecutor | None = None
        self.jobs = jobs
        if jobs > 1:
            LOGGER.debug("Starting a process pool with %s workers", jobs)
            self._executor = ProcessPoolExecutor(max_workers=jobs)

    @property
    def mapper(self) -> Mapper:
        """Return an order-preserving map over the worker pool.

        Returns:
            The pool's map, or the builtin map without a pool.
        """
        if (executor := self._executor) is None:
            return map

        def pool_map(func: Callable[..., Any], items: Iterable[Any]) -> Iterator[Any]:
            """Map over the pool."""
            return executor.map(func, items, chunksize=DEFAULT_CHUNKSIZE)

        return pool_map

    async def async_stream(
        self, calls: Sequence[Callable[[], T]]
    ) -> AsyncIterator[T]:
        """Run blocking calls concurrently and yield results in input order.

        Args:
            calls: Zero-argument callables.

        Yields:
            Each call's result, as soon as it and every earlier call are done.
        """
        loop = asyncio.get_running_loop()
        futures = [loop.run_in_executor(None, call) for call in calls]
        try:
            for future in futures:
                yield await future
        finally:
            for future in futures:
                future.cancel()
            await asyncio.gather(*futures, return_exceptions=True)

    async def async_run_all(self, calls: Sequence[Callable[[], T]]) -> list[T]:
        """Run blocking calls concurrently and collect results in input order.

        Args:
            calls: Zero-argument callables.

        Returns:
            The results, ordered as the calls.
        """
        loop = asyncio.get_running_loop()
        return list(
            await asyncio.gather(*(loop.run_in_executor(None, call) for call in calls))
        )

    def stop(self) -> None:
        """Shut the worker pool down."""
        if self._executor is not None:
            LOGGER.debug("Stopping runtime")
            self._executor.shutdown(cancel_futures=True)
            self._executor = None
