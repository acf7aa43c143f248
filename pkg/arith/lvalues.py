"""Closed forms for L(chi_D, 1) at real primitive characters.

D < 0:  L(1) = -(pi / |D|^(3/2)) * sum_{a<|D|} chi(a) a,   checked against
        the class number formula 2 pi h(D) / (w(D) sqrt|D|).
D > 0:  L(1) = -(1/sqrt D) * sum_{a<D} chi(a) log sin(pi a / D),   checked
        against the Euler product prod_p (1 - chi(p)/p)^-1, exact over
        p <= P0 and accelerated through stripped L-function logs above.

Regulators of real quadratic fields are never needed.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Tuple

import mpmath

from core.errors import InvalidDiscriminantError, InvariantViolation
from euler.precision import HighPrecReal
from euler.prime_zeta import engine_for
from .class_numbers import class_number, units_count
from .discriminants import is_fundamental
from .kronecker import character_table, kronecker

logger = logging.getLogger(__name__)


def _check(dprime: int) -> None:
    if dprime == 1 or dprime == 0 or not is_fundamental(dprime):
        raise InvalidDiscriminantError(dprime, "L(chi, 1) needs a fundamental discriminant != 1")


def euler_product_at_1(dprime: int, bits: int = 256, prime_cutoff: int = 1000,
                       guard_bits: int = 32) -> mpmath.mpf:
    """prod_p (1 - chi(p)/p)^-1 for chi = chi_D'.

    The tail over p > P0 is exp(sum_k S_k / k) with S_k the sum of
    chi(p)^k p^-k; S_1 comes from ``character_sum_at_one``, odd k >= 2
    from chi and even k from the principal character.
    """
    _check(dprime)
    engine = engine_for(bits, prime_cutoff, guard_bits)
    with mpmath.workprec(engine.working_bits):
        head = mpmath.mpf(1)
        for p in engine.small_primes:
            c = kronecker(dprime, p)
            if c:
                head /= 1 - mpmath.mpf(c) / p
        log_tail = engine.character_sum_at_one(dprime)
        k = 2
        while engine.tail_bound(k) >= engine.eps:
            character = ("chi", dprime) if k % 2 else ("chi0", dprime)
            log_tail += engine.prime_sum(k, character) / k
            k += 1
        return head * mpmath.exp(log_tail)


def l_value_routes(dprime: int, bits: int = 256, prime_cutoff: int = 1000,
                   guard_bits: int = 32) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """(closed form, independent second route) for L(chi_D', 1) at ``bits``."""
    _check(dprime)
    chi = character_table(dprime)
    q = abs(dprime)
    with mpmath.workprec(bits + 32):
        if dprime < 0:
            weighted = sum(chi[a] * a for a in range(1, q))  # exact
            closed = -mpmath.pi * weighted / (q * mpmath.sqrt(q))
            h = class_number(dprime)
            second = 2 * mpmath.pi * h / (units_count(dprime) * mpmath.sqrt(q))
        else:
            # chi is even, so a and q - a contribute the same log sin
            plus = mpmath.mpf(1)
            minus = mpmath.mpf(1)
            for a in range(1, (q + 1) // 2):
                if chi[a] == 1:
                    plus *= mpmath.sinpi(mpmath.mpf(a) / q)
                elif chi[a] == -1:
                    minus *= mpmath.sinpi(mpmath.mpf(a) / q)
            closed = -2 * mpmath.log(plus / minus) / mpmath.sqrt(q)
            second = euler_product_at_1(dprime, bits, prime_cutoff, guard_bits)
    return closed, second


@lru_cache(maxsize=1024)
def l_value_at_1(dprime: int, bits: int = 256, prime_cutoff: int = 1000,
                 guard_bits: int = 32) -> HighPrecReal:
    """L(chi_D', 1), cross-checked between two independent routes.

    Raises:
        InvariantViolation: the two routes disagree beyond rounding noise.
    """
    closed, second = l_value_routes(dprime, bits, prime_cutoff, guard_bits)
    q = abs(dprime)
    with mpmath.workprec(bits + 32):
        tolerance = q * mpmath.ldexp(1, -(bits - 8))
        delta = abs(closed - second)
    if delta > tolerance:
        raise InvariantViolation(
            f"L(chi_{dprime}, 1): closed form {mpmath.nstr(closed, 20)} "
            f"disagrees with second route {mpmath.nstr(second, 20)}"
        )
    logger.debug("L(chi_%d, 1) = %s", dprime, mpmath.nstr(closed, 15))
    return HighPrecReal.from_value(closed, bits, error=delta + tolerance)
