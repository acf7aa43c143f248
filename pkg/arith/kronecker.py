"""Kronecker symbol (D/n) and the real characters it defines."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from core.enums import Splitting


def _kronecker_two(d: int) -> int:
    """(d/2): 0 for even d, +1 for d = ±1 mod 8, -1 for d = ±3 mod 8."""
    if d % 2 == 0:
        return 0
    return 1 if d % 8 in (1, 7) else -1


def kronecker(d: int, n: int) -> int:
    """Return the Kronecker symbol (d/n) for a positive integer n.

    Completely multiplicative in n. Powers of two are stripped with the
    (d/2) convention above, the odd part goes through the binary Jacobi
    algorithm with quadratic reciprocity.
    """
    if n <= 0:
        raise ValueError(f"kronecker symbol needs n >= 1, got {n}")
    if n == 1:
        return 1

    result = 1
    twos = (n & -n).bit_length() - 1
    if twos:
        t = _kronecker_two(d)
        if t == 0:
            return 0
        if twos % 2 and t == -1:
            result = -result
        n >>= twos
    if n == 1:
        return result

    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=256)
def character_table(d: int) -> Tuple[int, ...]:
    """Values (d/a) for a = 0 .. |d|-1.

    For a fundamental discriminant d the character a -> (d/a) is
    primitive of period |d|, so the table determines it on all of Z>0.
    """
    q = abs(d)
    if q == 1:
        return (1,)
    return (0,) + tuple(kronecker(d, a) for a in range(1, q))


def character_values(d: int, n: np.ndarray) -> np.ndarray:
    """Vectorised (d/n) for positive n and fundamental d."""
    table = np.asarray(character_table(d), dtype=np.int8)
    return table[np.asarray(n, dtype=np.int64) % abs(d)]


@dataclass(frozen=True)
class PrimeSplitting:
    """How a rational prime decomposes in Q(sqrt(d)), read off (d/p)."""
    prime: int
    symbol: int

    def __post_init__(self):
        if self.symbol not in (-1, 0, 1):
            raise ValueError(f"splitting symbol must be -1, 0 or 1, got {self.symbol}")

    @classmethod
    def of(cls, d: int, p: int) -> "PrimeSplitting":
        return cls(p, kronecker(d, p))

    @property
    def splitting(self) -> Splitting:
        return Splitting.from_symbol(self.symbol)

    @property
    def local_degree_count(self) -> int:
        """a(p): copies of Q_p in Q(sqrt(d)) (x) Q_p, i.e. 2 iff p splits."""
        return 2 if self.symbol == 1 else 0
