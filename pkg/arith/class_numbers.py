"""Class numbers of imaginary quadratic fields by reduced-form enumeration.

A primitive positive definite form (a, b, c) of discriminant D < 0 is
reduced when |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.
Each class holds exactly one reduced form.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Tuple

from core.errors import InvalidDiscriminantError
from .discriminants import is_fundamental

logger = logging.getLogger(__name__)

Form = Tuple[int, int, int]


def _check_negative_fundamental(d: int) -> None:
    if d >= 0:
        raise InvalidDiscriminantError(d, "class numbers are only enumerated for D < 0")
    if not is_fundamental(d):
        raise InvalidDiscriminantError(d)


def reduced_forms(d: int) -> Iterator[Form]:
    """Yield every reduced primitive form of discriminant d, looping over b first."""
    _check_negative_fundamental(d)
    b = d % 2
    bound = isqrt(-d // 3)
    while b <= bound:
        q = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= q:
            if q % a == 0:
                c = q // a
                if gcd(gcd(a, b), c) == 1:
                    yield a, b, c
                    if 0 < b < a < c:
                        yield a, -b, c
            a += 1
        b += 2


def _count_a_first(d: int) -> int:
    """Second counting order: loop over a, then over b in (-a, a]."""
    h = 0
    bound = isqrt(-d // 3)
    for a in range(1, bound + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                h += 1
    return h


@lru_cache(maxsize=4096)
def class_number(d: int) -> int:
    """h(D) for a negative fundamental discriminant D."""
    h = sum(1 for _ in reduced_forms(d))
    logger.debug("h(%d) = %d", d, h)
    return h


def class_number_a_first(d: int) -> int:
    """h(D) counted with the a-first loop order; must agree with class_number."""
    _check_negative_fundamental(d)
    return _count_a_first(d)


def units_count(d: int) -> int:
    """w(D): number of roots of unity in Q(sqrt(D)) for D < 0."""
    return {-3: 6, -4: 4}.get(d, 2)
