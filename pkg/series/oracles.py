"""Direct field enumeration, independent of the series.

Pure cubic fields are Q(cbrt(m)) with m = a*b^2 cube-free, a and b
squarefree and coprime; {a*b^2, a^2*b} give the same field. Cyclic cubic
fields are counted per conductor from the classical description of the
conductors.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, List

import numpy as np
from sympy import factorint

from arith.primes import primes_up_to, smallest_prime_factors

logger = logging.getLogger(__name__)


def cube_free_parts(m: int) -> tuple[int, int]:
    """(a, b) with m / (cube) = a * b^2, a and b squarefree and coprime."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    a = b = 1
    for p, e in factorint(m).items():
        r = e % 3
        if r == 1:
            a *= p
        elif r == 2:
            b *= p
    return a, b


def pure_cubic_conductor(m: int) -> int:
    """Conductor f of Q(cbrt(m)), so that disc = -3 f^2.

    f = ab if a^2 = b^2 (mod 9), else 3ab.

    Raises:
        ValueError: m is a perfect cube (no cubic field).
    """
    a, b = cube_free_parts(m)
    if a * b == 1:
        raise ValueError(f"{m} is a perfect cube")
    f = a * b
    return f if (a * a - b * b) % 9 == 0 else 3 * f


def oracle_pure_cubic(limit: int) -> Dict[int, int]:
    """Number of pure cubic fields per conductor f <= limit.

    Each field corresponds to one squarefree n = ab > 1 together with an
    unordered split {a, b} of its prime factors. The conductor is n or
    3n, so n runs up to ``limit``; the unordered splits are enumerated by
    forcing the smallest prime of n into a.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    counts: Counter = Counter()
    if limit < 2:
        return {}
    spf = smallest_prime_factors(limit)
    for n in range(2, limit + 1):
        primes: List[int] = []
        x = n
        squarefree = True
        while x > 1:
            p = int(spf[x])
            x //= p
            if x % p == 0:
                squarefree = False
                break
            primes.append(p)
        if not squarefree:
            continue
        rest = primes[1:]
        for mask in range(1 << len(rest)):
            a = primes[0]
            for i, p in enumerate(rest):
                if mask >> i & 1:
                    a *= p
            b = n // a
            f = n if (a * a - b * b) % 9 == 0 else 3 * n
            if f <= limit:
                counts[f] += 1
    logger.debug("Pure cubic oracle: %d fields up to %d", sum(counts.values()), limit)
    return dict(sorted(counts.items()))


def cyclic_field_count(f: int) -> int:
    """Number of cyclic cubic fields of conductor f.

    f must be 9^d * (distinct primes = 1 mod 3), d in {0, 1}; the count
    is 2^(w-1) with w the number of prime factors, 9 counted once.
    """
    if f < 2:
        return 0
    omega = 0
    for p, e in factorint(f).items():
        if p == 3:
            if e != 2:
                return 0
        elif p % 3 != 1 or e != 1:
            return 0
        omega += 1
    return 1 << (omega - 1)


def oracle_cyclic(limit: int) -> Dict[int, int]:
    """Number of cyclic cubic fields per conductor f <= limit."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit < 7:
        return {}
    primes = primes_up_to(limit)
    split = [int(p) for p in primes[primes % 3 == 1]]
    counts: Dict[int, int] = {}

    # depth-first over products of distinct split primes
    stack = [(1, 0, 0)]  # (product, next index, omega)
    while stack:
        n, start, omega = stack.pop()
        for base, w in ((n, omega), (9 * n, omega + 1)):
            if base > 1 and base <= limit:
                counts[base] = 1 << (w - 1)
        for i in range(start, len(split)):
            m = n * split[i]
            if m > limit:
                break
            stack.append((m, i + 1, omega + 1))
    logger.debug("Cyclic oracle: %d fields up to %d", sum(counts.values()), limit)
    return dict(sorted(counts.items()))


def oracle_array(oracle: Dict[int, int], limit: int) -> np.ndarray:
    """Dense int64 view of an oracle map, indexed 0..limit."""
    out = np.zeros(limit + 1, dtype=np.int64)
    for f, c in oracle.items():
        if f <= limit:
            out[f] = c
    return out
