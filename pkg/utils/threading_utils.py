"""Threading utilities shared by the sieve and the Euler-product layer."""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Hashable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class MemoCache:
    """Thread-safe memo for deterministic values.

    Two threads may compute the same key concurrently; the last write
    wins, which is harmless because both computed the same value.
    """

    def __init__(self) -> None:
        self._values: Dict[Hashable, object] = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key: Hashable, compute: Callable[[], T]) -> T:
        with self._lock:
            if key in self._values:
                return self._values[key]  # type: ignore[return-value]
        value = compute()
        with self._lock:
            self._values[key] = value
        return value

    def clear(self) -> None:
        with self._lock:
            self._values.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._values)


def run_in_threads(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Map ``func`` over ``items``, results in input order.

    ``workers == 1`` runs inline on the calling thread.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
