"""Multiplicative coefficient sieve for the explicit series.

Each constituent product gives a multiplicative stream b with
b(p^e) = c_e from its local factor. The sieve starts from b = 1 and
multiplies in, for each prime p <= X, the local coefficient at the
exact power of p dividing n. Primes with p^2 > X touch only their
multiples j*p with j < p, so they are handled in vectorised batches by
cofactor j instead of one slice per prime.

The index range can be cut into disjoint segments and sieved on a
thread pool; every segment is computed from the same prime data, so
the output does not depend on the number of workers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterator, List, Tuple

import numpy as np
from sympy import factorint

from arith.primes import primes_up_to
from core.errors import CapacityError, InvariantViolation
from utils.threading_utils import run_in_threads
from utils.timing import Stopwatch
from .spec import EulerFactor, LocalFactor, SeriesSpec

logger = logging.getLogger(__name__)

INT64_HEADROOM = 2**62
MIN_SEGMENT = 1 << 16


def _coeff(factor: LocalFactor, e: int) -> int:
    return factor[e] if e < len(factor) else 0


@dataclass
class _PrimeData:
    """Per-constituent local data for the primes <= X."""
    small: List[Tuple[int, LocalFactor]]     # p^2 <= X
    large: np.ndarray                         # p^2 > X, ascending
    large_c1: np.ndarray                      # b(p) for the large primes


def _prepare(factor: EulerFactor, limit: int, primes: np.ndarray) -> _PrimeData:
    root = isqrt(limit)
    split = int(np.searchsorted(primes, root, side="right"))
    small = [(int(p), factor.local_factor(int(p))) for p in primes[:split]]
    large = primes[split:]

    mask = factor.condition.mask(large)
    c1 = np.where(mask, _coeff(factor.generic, 1), _coeff(factor.otherwise, 1)).astype(np.int64)
    for p, coeffs in factor.special:
        idx = int(np.searchsorted(large, p))
        if idx < large.size and large[idx] == p:
            c1[idx] = _coeff(coeffs, 1)
    keep = c1 != 1
    return _PrimeData(small=small, large=large[keep], large_c1=c1[keep])


def _sieve_segment(data: _PrimeData, lo: int, hi: int) -> np.ndarray:
    """b(n) for lo <= n < hi."""
    seg = np.ones(hi - lo, dtype=np.int64)

    for p, coeffs in data.small:
        first = -(-lo // p) * p
        if first >= hi:
            continue
        count = (hi - 1 - first) // p + 1
        local = np.full(count, _coeff(coeffs, 1), dtype=np.int64)
        pe, e = p * p, 2
        while pe < hi:
            first_e = -(-lo // pe) * pe
            if first_e < hi:
                local[(first_e - first) // p::pe // p] = _coeff(coeffs, e)
            pe *= p
            e += 1
        seg[first - lo::p] *= local

    large, c1 = data.large, data.large_c1
    if large.size:
        p_min = int(large[0])
        for j in range(1, (hi - 1) // p_min + 1):
            # primes p with lo <= j*p < hi
            i0 = int(np.searchsorted(large, -(-lo // j)))
            i1 = int(np.searchsorted(large, (hi - 1) // j, side="right"))
            if i0 >= i1:
                continue
            seg[large[i0:i1] * j - lo] *= c1[i0:i1]
    return seg


def _segments(limit: int, workers: int) -> List[Tuple[int, int]]:
    if workers <= 1:
        return [(1, limit + 1)]
    size = max(MIN_SEGMENT, -(-limit // workers))
    return [(lo, min(lo + size, limit + 1)) for lo in range(1, limit + 1, size)]


def constituent_stream(factor: EulerFactor, limit: int, workers: int = 1) -> np.ndarray:
    """b(n) for 0 <= n <= limit as int64 (b(0) = 0)."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    primes = primes_up_to(limit) if limit >= 2 else np.zeros(0, dtype=np.int64)
    data = _prepare(factor, limit, primes)
    parts = run_in_threads(lambda seg: _sieve_segment(data, *seg), _segments(limit, workers), workers)
    return np.concatenate([np.zeros(1, dtype=np.int64), *parts])


def constituent_streams(spec: SeriesSpec, limit: int, workers: int = 1) -> List[np.ndarray]:
    return [constituent_stream(f, limit, workers) for f in spec.constituents]


class CoefficientStream:
    """a(n) for 1 <= n <= limit, stored as ``numerators / denominator``.

    Exact cases have denominator 1 and nonnegative integer coefficients.
    The main part of a non-exact case keeps its rational denominator and
    is never reported as a count.
    """

    def __init__(self, spec: SeriesSpec, limit: int, numerators: np.ndarray, denominator: int = 1):
        self.spec = spec
        self.limit = limit
        self._a = numerators
        self._a.flags.writeable = False
        self.denominator = denominator
        self._cumulative: np.ndarray | None = None

    @property
    def is_exact(self) -> bool:
        return self.spec.is_exact

    @property
    def values(self) -> np.ndarray:
        """Read-only numerators indexed 0..limit (index 0 unused)."""
        return self._a

    def __getitem__(self, n: int) -> int | Fraction:
        if not 1 <= n <= self.limit:
            raise IndexError(f"n={n} outside 1..{self.limit}")
        v = int(self._a[n])
        return v if self.denominator == 1 else Fraction(v, self.denominator)

    def nonzero(self) -> Iterator[Tuple[int, int]]:
        """(n, numerator) for every n with a(n) != 0, ascending."""
        for n in np.flatnonzero(self._a):
            yield int(n), int(self._a[n])

    def as_dict(self) -> dict:
        return {n: (v if self.denominator == 1 else Fraction(v, self.denominator))
                for n, v in self.nonzero()}

    def partial_sum(self, x: int) -> int | Fraction:
        """Sum of a(n) for n <= min(x, limit)."""
        if x < 1:
            return 0
        x = min(x, self.limit)
        if self._cumulative is None:
            peak = int(np.abs(self._a).max()) if self.limit else 0
            if peak * self.limit >= INT64_HEADROOM:
                raise CapacityError(f"partial sums up to {self.limit} may overflow int64")
            self._cumulative = np.cumsum(self._a)
        total = int(self._cumulative[x])
        return total if self.denominator == 1 else Fraction(total, self.denominator)

    def __len__(self) -> int:
        return self.limit


def coefficients(spec: SeriesSpec, limit: int, workers: int = 1) -> CoefficientStream:
    """Sieve each constituent and recombine with the rational weights.

    Raises:
        CapacityError: ``limit`` does not fit the int64 layout.
        InvariantViolation: an exact case produced a non-integer or
            negative coefficient, or a(1) != 0.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit >= INT64_HEADROOM // 64:
        raise CapacityError(f"limit {limit} exceeds the coefficient sieve capacity")

    with Stopwatch() as sw:
        try:
            streams = constituent_streams(spec, limit, workers)
        except MemoryError as exc:
            raise CapacityError(f"not enough memory to sieve coefficients up to {limit}") from exc
        weights = [f.weight for f in spec.constituents]
        den = lcm(*(w.denominator for w in weights), spec.constant.denominator)
        total = np.zeros(limit + 1, dtype=np.int64)
        for w, b in zip(weights, streams):
            total += (w.numerator * (den // w.denominator)) * b
        total[1] += spec.constant.numerator * (den // spec.constant.denominator)

    if spec.is_exact:
        if np.any(total % den):
            bad = int(np.flatnonzero(total % den)[0])
            raise InvariantViolation(
                f"{spec.case.value}: a({bad}) = {total[bad]}/{den} is not an integer"
            )
        a = total // den
        if a[1] != 0:
            raise InvariantViolation(f"{spec.case.value}: a(1) = {a[1]}, expected 0")
        if np.any(a < 0):
            bad = int(np.flatnonzero(a < 0)[0])
            raise InvariantViolation(f"{spec.case.value}: a({bad}) = {a[bad]} is negative")
        stream = CoefficientStream(spec, limit, a, 1)
    else:
        total[1] = 0
        g = int(np.gcd.reduce(np.append(total, den)))
        stream = CoefficientStream(spec, limit, total // g, den // g)

    logger.info(
        "Sieved %s coefficients up to %d in %.2fs (%d workers)",
        spec.case.value, limit, sw.elapsed, workers,
    )
    return stream


def in_support(spec: SeriesSpec, n: int) -> bool:
    """a(n) may be nonzero only if n = 3^e * m, 3^e | 9, m squarefree over generic primes."""
    lead = spec.constituents[0]
    for p, e in factorint(n).items():
        if p == 3:
            if e >= len(spec.l3_factor) or spec.l3_factor[e] == 0:
                return False
        elif e > 1 or not lead.condition.holds(p):
            return False
    return True

