"""Prime sums over p > P0 from logarithms of zeta and real L-functions.

For a completely multiplicative chi,

    sum_p chi(p) p^-s = sum_{m>=1} mu(m)/m * log L(chi^m, m s),

and the same holds with every Euler product stripped of its primes
p <= P0, which makes the m-series converge like P1^-(ms) with P1 the
first prime above P0. For a real character chi^m is chi for odd m and
the principal character mod |d| for even m. Log-weighted sums come from
differentiating in s:

    sum_p log(p) chi(p) p^-s = -sum_m mu(m) * (L'/L)_{>P0}(chi^m, m s).

Primes <= P0 are always handled exactly by the caller.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import mpmath
from sympy import factorint

from arith.conditions import PrimeCondition
from arith.discriminants import prime_divisors
from arith.kronecker import character_table, kronecker
from arith.primes import prime_table, primes_up_to
from core.enums import ConditionKind
from utils.threading_utils import MemoCache
from .precision import HighPrecReal

logger = logging.getLogger(__name__)

# Character selectors: (None, 0) all primes, ("chi", d), ("chi0", d)
Character = Tuple[Optional[str], int]
ALL_PRIMES: Character = (None, 0)


def mobius(m: int) -> int:
    if m == 1:
        return 1
    exps = factorint(m).values()
    if any(e > 1 for e in exps):
        return 0
    return -1 if len(exps) % 2 else 1


class PrimeZetaEngine:
    """Restricted prime zeta values at a fixed precision and cutoff P0.

    Every zeta and L value is memoised; one engine serves all constants
    evaluated with the same (bits, P0, guard).
    """

    def __init__(self, bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32):
        if prime_cutoff < 2:
            raise ValueError(f"prime cutoff must be >= 2, got {prime_cutoff}")
        self.bits = bits
        self.prime_cutoff = prime_cutoff
        self.guard_bits = guard_bits
        self.small_primes: List[int] = [int(p) for p in primes_up_to(prime_cutoff)]
        self.first_tail_prime = prime_table(2 * prime_cutoff + 2).next_prime_after(prime_cutoff)
        self._memo = MemoCache()

    @property
    def working_bits(self) -> int:
        return self.bits + self.guard_bits

    @property
    def eps(self) -> mpmath.mpf:
        return mpmath.ldexp(1, -self.working_bits)

    # --- Tail bounds for sums over p >= P1 ---

    def tail_bound(self, s: int) -> mpmath.mpf:
        """Upper bound for sum_{p >= P1} p^-s."""
        p1 = mpmath.mpf(self.first_tail_prime)
        return p1 ** -s * (1 + p1 / (s - 1))

    def log_tail_bound(self, s: int) -> mpmath.mpf:
        """Upper bound for sum_{p >= P1} log(p) p^-s."""
        p1 = mpmath.mpf(self.first_tail_prime)
        return p1 ** (1 - s) * (mpmath.log(p1) / (s - 1) + mpmath.mpf(1) / (s - 1) ** 2) \
            + mpmath.log(p1) * p1 ** -s

    # --- Stripped logarithms ---

    def _chi_list(self, d: int) -> List[int]:
        """chi_d(0), ..., chi_d(|d| - 1), the period mpmath.dirichlet expects."""
        return list(character_table(d))

    def log_zeta_tail(self, s: int) -> mpmath.mpf:
        """log zeta(s) + sum_{p <= P0} log(1 - p^-s)."""
        def compute():
            with mpmath.workprec(self.working_bits):
                v = mpmath.log(mpmath.zeta(s))
                for p in self.small_primes:
                    v += mpmath.log1p(-mpmath.mpf(p) ** -s)
                return v
        return self._memo.get_or_compute(("zeta", s), compute)

    def dlog_zeta_tail(self, s: int) -> mpmath.mpf:
        """d/ds of ``log_zeta_tail``."""
        def compute():
            with mpmath.workprec(self.working_bits):
                v = mpmath.zeta(s, 1, 1) / mpmath.zeta(s)
                for p in self.small_primes:
                    x = mpmath.mpf(p) ** -s
                    v += mpmath.log(p) * x / (1 - x)
                return v
        return self._memo.get_or_compute(("dzeta", s), compute)

    def log_l_tail(self, d: int, s: int) -> mpmath.mpf:
        """log L(chi_d, s) + sum_{p <= P0} log(1 - chi_d(p) p^-s)."""
        def compute():
            chi = self._chi_list(d)
            with mpmath.workprec(self.working_bits):
                if s == 1:
                    # dirichlet() perturbs s once per -1 entry here; use the limit form
                    q = len(chi)
                    value = -mpmath.fsum(chi[a] * mpmath.digamma(mpmath.mpf(a) / q)
                                         for a in range(1, q) if chi[a]) / q
                else:
                    value = mpmath.dirichlet(s, chi)
                v = mpmath.log(value)
                for p in self.small_primes:
                    c = kronecker(d, p)
                    if c:
                        v += mpmath.log1p(-c * mpmath.mpf(p) ** -s)
                return v
        return self._memo.get_or_compute(("L", d, s), compute)

    def dlog_l_tail(self, d: int, s: int) -> mpmath.mpf:
        def compute():
            chi = self._chi_list(d)
            with mpmath.workprec(self.working_bits):
                v = mpmath.dirichlet(s, chi, 1) / mpmath.dirichlet(s, chi)
                for p in self.small_primes:
                    c = kronecker(d, p)
                    if c:
                        x = c * mpmath.mpf(p) ** -s
                        v += mpmath.log(p) * x / (1 - x)
                return v
        return self._memo.get_or_compute(("dL", d, s), compute)

    def _large_divisors(self, d: int) -> List[int]:
        return [p for p in prime_divisors(d) if p > self.prime_cutoff]

    def log_principal_tail(self, d: int, s: int) -> mpmath.mpf:
        """Stripped log L(chi_0 mod |d|, s): zeta without the primes dividing d."""
        v = self.log_zeta_tail(s)
        for p in self._large_divisors(d):
            v += mpmath.log1p(-mpmath.mpf(p) ** -s)
        return v

    def dlog_principal_tail(self, d: int, s: int) -> mpmath.mpf:
        v = self.dlog_zeta_tail(s)
        for p in self._large_divisors(d):
            x = mpmath.mpf(p) ** -s
            v += mpmath.log(p) * x / (1 - x)
        return v

    def _stripped(self, character: Character, m: int, s: int, derivative: bool) -> mpmath.mpf:
        kind, d = character
        if kind is None:
            return self.dlog_zeta_tail(s) if derivative else self.log_zeta_tail(s)
        if kind == "chi" and m % 2 == 1:
            return self.dlog_l_tail(d, s) if derivative else self.log_l_tail(d, s)
        return self.dlog_principal_tail(d, s) if derivative else self.log_principal_tail(d, s)

    # --- Prime sums over p > P0 ---

    def prime_sum(self, k: int, character: Character = ALL_PRIMES) -> mpmath.mpf:
        """sum_{p > P0} chi(p) p^-k by Moebius inversion of stripped logs."""
        if k < 2:
            raise ValueError(f"prime sums need k >= 2, got {k}")

        def compute():
            with mpmath.workprec(self.working_bits):
                total = mpmath.mpf(0)
                m = 1
                while 2 * self.tail_bound(k * m) >= self.eps:
                    mu = mobius(m)
                    if mu:
                        total += mpmath.mpf(mu) / m * self._stripped(character, m, k * m, False)
                    m += 1
                return total
        return self._memo.get_or_compute(("sum", character, k), compute)

    def character_sum_at_one(self, d: int) -> mpmath.mpf:
        """sum_{p > P0} chi_d(p) / p for a non-principal chi_d.

        Only conditionally convergent; the m = 1 term of the inversion is
        the stripped log L(chi_d, 1) itself.
        """
        def compute():
            with mpmath.workprec(self.working_bits):
                total = self.log_l_tail(d, 1)
                m = 2
                while 2 * self.tail_bound(m) >= self.eps:
                    mu = mobius(m)
                    if mu:
                        total += mpmath.mpf(mu) / m * self._stripped(("chi", d), m, m, False)
                    m += 1
                return total
        return self._memo.get_or_compute(("sum1", d), compute)

    def log_weighted_sum(self, k: int, character: Character = ALL_PRIMES) -> mpmath.mpf:
        """sum_{p > P0} log(p) chi(p) p^-k."""
        if k < 2:
            raise ValueError(f"log-weighted prime sums need k >= 2, got {k}")

        def compute():
            with mpmath.workprec(self.working_bits):
                total = mpmath.mpf(0)
                m = 1
                while 2 * m * self.log_tail_bound(k * m) >= self.eps:
                    mu = mobius(m)
                    if mu:
                        total -= mu * self._stripped(character, m, k * m, True)
                    m += 1
                return total
        return self._memo.get_or_compute(("logsum", character, k), compute)

    # --- Conditions ---

    def conditional_sum(self, k: int, condition: PrimeCondition, log_weight: bool = False) -> mpmath.mpf:
        """Sum of p^-k (or log(p) p^-k) over p > P0 meeting ``condition``.

        Conditions must reduce to all primes or a quadratic character;
        ``p | d`` has no tail.
        """
        cond = condition.as_character_condition()
        if cond.kind is ConditionKind.DIVIDES:
            return mpmath.mpf(0)
        fn = self.log_weighted_sum if log_weight else self.prime_sum
        with mpmath.workprec(self.working_bits):
            if cond.kind is ConditionKind.ALL:
                total = fn(k)
            else:
                if cond.d % 4 not in (0, 1):
                    raise ValueError(f"kronecker({cond.d}, .) is not a character mod {abs(cond.d)}")
                total = (fn(k, ("chi0", cond.d)) + cond.value * fn(k, ("chi", cond.d))) / 2
            for p in cond.exclude:
                base = PrimeCondition(cond.kind, cond.d, cond.value)
                if p > self.prime_cutoff and base.holds(p):
                    term = mpmath.mpf(p) ** -k
                    total -= term * mpmath.log(p) if log_weight else term
        return total


_engines = MemoCache()


def engine_for(bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32) -> PrimeZetaEngine:
    """Shared engine per (bits, P0, guard)."""
    return _engines.get_or_compute(
        (bits, prime_cutoff, guard_bits),
        lambda: PrimeZetaEngine(bits, prime_cutoff, guard_bits),
    )


def restricted_prime_zeta(
    k: int,
    condition: PrimeCondition | None = None,
    bits: int = 256,
    prime_cutoff: int = 1000,
    guard_bits: int = 32,
) -> HighPrecReal:
    """sum of p^-k over all primes meeting ``condition`` (default: all primes)."""
    condition = condition or PrimeCondition.all_primes()
    if condition.kind is ConditionKind.DIVIDES:
        with mpmath.workprec(bits + guard_bits):
            value = mpmath.fsum(mpmath.mpf(p) ** -k for p in prime_divisors(condition.d)
                                if p not in condition.exclude)
        return HighPrecReal.from_value(value, bits)
    engine = engine_for(bits, prime_cutoff, guard_bits)
    with mpmath.workprec(engine.working_bits):
        small = mpmath.fsum(mpmath.mpf(p) ** -k for p in engine.small_primes if condition.holds(p))
        value = small + engine.conditional_sum(k, condition)
        error = 4 * engine.eps
    return HighPrecReal.from_value(value, bits, error=error)
