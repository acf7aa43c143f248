"""Odd-only prime sieve with an optional on-disk bitset cache.

Cache layout (little-endian)::

    bytes 0..7    magic b"CCPRIME1"
    bytes 8..15   u64 limit
    bytes 16..    bitset over odd integers, bit i <-> 2*i + 1, LSB first

A missing, truncated or foreign cache file is ignored and the sieve is
rebuilt.
"""

from __future__ import annotations

import logging
import threading
from math import isqrt
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from core.errors import CapacityError

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"CCPRIME1"
_HEADER_SIZE = 16
DEFAULT_MAX_LIMIT = 10**9


class PrimeTable:
    """Primality of every integer up to ``limit``, stored for odd integers only."""

    def __init__(self, limit: int, odd_mask: np.ndarray):
        self.limit = limit
        self._odd = odd_mask
        self._primes: Optional[np.ndarray] = None

    # --- Construction ---

    @classmethod
    def build(cls, limit: int, max_limit: int = DEFAULT_MAX_LIMIT) -> "PrimeTable":
        """Sieve of Eratosthenes over odd integers 1, 3, 5, ... <= limit."""
        if limit < 2:
            raise ValueError(f"prime sieve needs limit >= 2, got {limit}")
        if limit > max_limit:
            raise CapacityError(f"sieve limit {limit} exceeds capacity {max_limit}")
        try:
            n_odd = (limit + 1) // 2
            mask = np.ones(n_odd, dtype=bool)
            mask[0] = False  # 1 is not prime
            for i in range(1, (isqrt(limit) - 1) // 2 + 1):
                if mask[i]:
                    p = 2 * i + 1
                    mask[(p * p) // 2::p] = False
        except MemoryError as exc:
            raise CapacityError(f"not enough memory to sieve up to {limit}") from exc
        logger.debug("Sieved primes up to %d", limit)
        return cls(limit, mask)

    @classmethod
    def load(cls, path: Path) -> Optional["PrimeTable"]:
        """Read a CCPRIME1 cache; None if it is absent or unreadable."""
        try:
            raw = path.read_bytes()
        except OSError:
            return None
        if len(raw) < _HEADER_SIZE or raw[:8] != CACHE_MAGIC:
            logger.warning("Ignoring prime cache %s: bad header", path)
            return None
        limit = int(np.frombuffer(raw[8:16], dtype="<u8")[0])
        n_odd = (limit + 1) // 2
        bits = np.frombuffer(raw[_HEADER_SIZE:], dtype=np.uint8)
        if bits.size * 8 < n_odd:
            logger.warning("Ignoring prime cache %s: truncated", path)
            return None
        mask = np.unpackbits(bits, count=n_odd, bitorder="little").astype(bool)
        return cls(limit, mask)

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        header = CACHE_MAGIC + np.array([self.limit], dtype="<u8").tobytes()
        payload = np.packbits(self._odd, bitorder="little").tobytes()
        path.write_bytes(header + payload)
        logger.info("Prime cache written to %s (limit %d)", path, self.limit)

    # --- Queries ---

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise CapacityError(f"{n} is beyond the sieved range {self.limit}")
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        return bool(self._odd[n // 2])

    def primes(self, upto: Optional[int] = None) -> np.ndarray:
        """Ascending int64 array of primes <= upto (default: the whole table)."""
        if self._primes is None:
            odd = 2 * np.flatnonzero(self._odd).astype(np.int64) + 1
            self._primes = np.concatenate((np.array([2], dtype=np.int64), odd))
        if upto is None or upto >= self.limit:
            return self._primes
        return self._primes[: np.searchsorted(self._primes, upto, side="right")]

    def next_prime_after(self, n: int) -> int:
        """Smallest prime > n that lies inside the table."""
        primes = self.primes()
        idx = int(np.searchsorted(primes, n, side="right"))
        if idx >= primes.size:
            raise CapacityError(f"no prime after {n} within the sieved range {self.limit}")
        return int(primes[idx])


# --- Shared table ---

_shared: Optional[PrimeTable] = None
_shared_lock = threading.Lock()


def prime_table(
    limit: int,
    cache_path: str | Path | None = None,
    max_limit: int = DEFAULT_MAX_LIMIT,
) -> PrimeTable:
    """Return a shared read-only table covering at least ``limit``.

    The table only grows: a request below the current size reuses it.
    """
    global _shared
    with _shared_lock:
        if _shared is not None and _shared.limit >= limit:
            return _shared
        table = None
        path = Path(cache_path) if cache_path else None
        if path is not None:
            cached = PrimeTable.load(path)
            if cached is not None and cached.limit >= limit:
                table = cached
                logger.info("Prime cache %s loaded (limit %d)", path, cached.limit)
        if table is None:
            table = PrimeTable.build(limit, max_limit=max_limit)
            if path is not None:
                try:
                    table.save(path)
                except OSError as e:
                    logger.warning("Failed to write prime cache: %s", e)
        _shared = table
        return table


def primes_up_to(limit: int, cache_path: str | Path | None = None) -> np.ndarray:
    return prime_table(max(limit, 2), cache_path).primes(limit)


def prime_iterator(limit: int, cache_path: str | Path | None = None) -> Iterator[int]:
    """Ascending stream of the primes <= limit."""
    if limit < 2:
        raise ValueError(f"prime_iterator needs limit >= 2, got {limit}")
    for p in primes_up_to(limit, cache_path):
        yield int(p)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] for 0 <= n <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 4:
        for p in primes_up_to(isqrt(limit)):
            p = int(p)
            block = spf[p * p::p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf[:2] = 0
    return spf
