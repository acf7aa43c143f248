"""Fundamental quadratic discriminants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import sympy

from core.errors import InvalidDiscriminantError


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in sympy.factorint(n).values())


def is_fundamental(d: int) -> bool:
    """True iff d is a fundamental quadratic discriminant, or d == 1.

    d = 1 mod 4 and squarefree, or d = 4m with m = 2, 3 mod 4 squarefree.
    """
    if d == 0:
        raise ValueError("D must be nonzero")
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def prime_divisors(d: int) -> List[int]:
    """Distinct primes dividing d, ascending."""
    return sorted(sympy.primefactors(abs(d)))


def fundamental_discriminants(bound: int, sign: int = 0) -> List[int]:
    """Fundamental discriminants 1 < |D| <= bound, ordered by |D| then sign.

    ``sign`` restricts to negative (-1) or positive (+1) values.
    """
    out = []
    for a in range(2, bound + 1):
        for d in (-a, a):
            if sign and (d > 0) != (sign > 0):
                continue
            if is_fundamental(d):
                out.append(d)
    return out


@dataclass(frozen=True)
class Discriminant:
    """A fundamental discriminant D, or the degenerate D = 1 of cyclic cubics."""
    value: int

    def __post_init__(self):
        if self.value == 0 or not is_fundamental(self.value):
            raise InvalidDiscriminantError(self.value)

    @property
    def is_cyclic_case(self) -> bool:
        return self.value == 1

    @property
    def is_pure_cubic_case(self) -> bool:
        return self.value == -3

    @property
    def r2(self) -> int:
        """Number of complex places of Q(sqrt(D)): 1 iff D < 0."""
        return 1 if self.value < 0 else 0

    @classmethod
    def of(cls, d: "int | Discriminant") -> "Discriminant":
        return d if isinstance(d, Discriminant) else cls(int(d))

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)
