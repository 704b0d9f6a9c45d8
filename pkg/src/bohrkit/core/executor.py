"""Parallel fan-out over family members."""

from __future__ import annotations

import asyncio
from collections.abc import Callable, Sequence
from typing import TypeVar

from bohrkit.logger import log
from bohrkit.models.config import NumericSettings

T = TypeVar("T")
R = TypeVar("R")


class FamilyExecutor:
    """Evaluate a task per family member, sequentially or on worker threads.

    Results keep the order of the inputs. Each task receives its index so it
    can derive its own seed; results never depend on scheduling.
    """

    def __init__(self, settings: NumericSettings | None = None):
        self._workers = settings.workers if settings else 1

    def map(self, task: Callable[[int, T], R], items: Sequence[T]) -> list[R]:
        """Run task(index, item) for every item and return results in order."""
        if self._workers <= 1 or len(items) <= 1:
            return [task(i, item) for i, item in enumerate(items)]
        return asyncio.run(self._run_parallel(task, items))

    async def _run_parallel(self, task: Callable[[int, T], R], items: Sequence[T]) -> list[R]:
        semaphore = asyncio.Semaphore(self._workers)

        async def run_one(index: int, item: T) -> R:
            async with semaphore:
                return await asyncio.to_thread(task, index, item)

        log.debug("Fanning out %d tasks over %d workers", len(items), self._workers)
        results = await asyncio.gather(
            *(run_one(i, item) for i, item in enumerate(items)),
            return_exceptions=True,
        )

        for index, result in enumerate(results):
            if isinstance(result, BaseException):
                log.error("Task %d failed: %s", index, result)
                raise result
        return list(results)
