"""Euler's constant by the Brent-McMillan series.

With A_0 = -log n, B_0 = 1,

    B_k = B_{k-1} n^2 / k^2,    A_k = (A_{k-1} n^2 / k + B_k) / k,

gamma = sum A_k / sum B_k + O(pi exp(-4n)).
"""

from __future__ import annotations

import logging
from functools import lru_cache

import mpmath

from .precision import HighPrecReal

logger = logging.getLogger(__name__)

GAMMA_LITERAL = "0.5772156649015328606065120900824024310421593359399"


@lru_cache(maxsize=8)
def euler_gamma(bits: int = 256) -> HighPrecReal:
    n = int(bits * 0.6931471805599453 / 4) + 2
    with mpmath.workprec(bits + 64):
        eps = mpmath.ldexp(1, -(bits + 16))
        a = -mpmath.log(n)
        b = mpmath.mpf(1)
        u, v = a, b
        nn = n * n
        k = 1
        while True:
            b = b * nn / (k * k)
            a = (a * nn / k + b) / k
            u += a
            v += b
            if k > n and abs(a) < eps * abs(u) and b < eps * v:
                break
            k += 1
        gamma = u / v
        truncation = mpmath.pi * mpmath.exp(-4 * n)
    logger.debug("gamma: n=%d, %d terms", n, k)
    return HighPrecReal.from_value(gamma, bits, error=truncation)
