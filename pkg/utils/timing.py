"""Wall-clock helpers for runtime budgets."""

from __future__ import annotations

import time


def perf_timestamp() -> float:
    """Return a high-resolution monotonic timestamp (seconds)."""
    return time.perf_counter()


class Stopwatch:
    """Context manager measuring elapsed seconds.

    ``elapsed`` is live while the block runs and frozen afterwards.
    """

    def __init__(self) -> None:
        self._start = 0.0
        self._stop: float | None = None

    def __enter__(self) -> "Stopwatch":
        self._start = perf_timestamp()
        self._stop = None
        return self

    def __exit__(self, *exc) -> None:
        self._stop = perf_timestamp()

    @property
    def elapsed(self) -> float:
        end = self._stop if self._stop is not None else perf_timestamp()
        return end - self._start
