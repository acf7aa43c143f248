"""Series specifications: a case tag plus Euler-factor data, never code.

Every series is a constant plus a rational combination of products

    weight * prod_p F_p(p^-s)

where F_p is one of three local factors per constituent: an explicit
override for a few primes (the factor at 3), the ``generic`` factor for
primes meeting the condition, and ``otherwise`` for the rest. Local
factors are coefficient tuples (1, c1, c2, ...) in powers of p^-s.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from arith.conditions import PrimeCondition
from arith.discriminants import Discriminant
from core.enums import SeriesCase
from resolvent.mirror import MirrorData, mirror_data, scholz_gate

logger = logging.getLogger(__name__)

LocalFactor = Tuple[int, ...]

TRIVIAL_FACTOR: LocalFactor = (1,)


@dataclass(frozen=True)
class EulerFactor:
    """One constituent product of a series with its rational weight."""
    weight: Fraction
    condition: PrimeCondition
    generic: LocalFactor = (1, 2)
    otherwise: LocalFactor = TRIVIAL_FACTOR
    special: Tuple[Tuple[int, LocalFactor], ...] = ()

    def __post_init__(self):
        for coeffs in (self.generic, self.otherwise, *(c for _, c in self.special)):
            if not coeffs or coeffs[0] != 1:
                raise ValueError(f"local factor {coeffs} must start with 1")

    @property
    def special_map(self) -> Dict[int, LocalFactor]:
        return dict(self.special)

    def local_factor(self, p: int) -> LocalFactor:
        override = self.special_map.get(p)
        if override is not None:
            return override
        return self.generic if self.condition.holds(p) else self.otherwise

    def describe(self) -> str:
        parts = [f"{self.weight} * prod[{self.condition.describe()}] {_poly(self.generic)}"]
        if self.otherwise != TRIVIAL_FACTOR:
            parts.append(f"else {_poly(self.otherwise)}")
        for p, coeffs in self.special:
            parts.append(f"at {p}: {_poly(coeffs)}")
        return "; ".join(parts)


def _poly(coeffs: LocalFactor) -> str:
    terms = ["1"]
    for k, c in enumerate(coeffs[1:], start=1):
        if c:
            terms.append(f"{c:+d}x^{k}")
    return "(" + " ".join(terms) + ")"


@dataclass(frozen=True)
class SeriesSpec:
    case: SeriesCase
    D: Discriminant
    constant: Fraction
    constituents: Tuple[EulerFactor, ...]
    mirror: Optional[MirrorData] = None
    l3_factor: LocalFactor = field(default=TRIVIAL_FACTOR)

    @property
    def is_exact(self) -> bool:
        return self.case.is_exact

    @property
    def prime_condition(self) -> PrimeCondition:
        """Condition of the leading constituent."""
        return self.constituents[0].condition

    @property
    def resolvent_discriminant(self) -> int:
        """|d(K2)|: 1 for cyclic cubics, 3 for pure cubics, |D| otherwise."""
        if self.case is SeriesCase.CYCLIC:
            return 1
        return abs(self.D.value)

    def describe(self) -> str:
        body = " + ".join(f"[{c.describe()}]" for c in self.constituents)
        return f"{self.case.value}(D={self.D}): {self.constant} + {body}"


# --- Builders ---

def cyclic_spec() -> SeriesSpec:
    """-1/2 + (1/2)(1 + 2*9^-s) prod_{p = 1 (3)} (1 + 2p^-s)."""
    factor = EulerFactor(
        weight=Fraction(1, 2),
        condition=PrimeCondition.congruent(3, [1]),
        special=((3, (1, 0, 2)),),
    )
    return SeriesSpec(
        case=SeriesCase.CYCLIC,
        D=Discriminant(1),
        constant=Fraction(-1, 2),
        constituents=(factor,),
        mirror=mirror_data(1),
        l3_factor=(1, 0, 2),
    )


def pure_cubic_spec() -> SeriesSpec:
    """Series for K2 = Q(sqrt(-3)).

    -1/2 + (1/6)(1 + 2*3^-s + 6*9^-s) prod_{p != 3}(1 + 2p^-s)
         + (1/3) prod_{p = +-1 (9)}(1 + 2p^-s) prod_{other p, incl. 3}(1 - p^-s)
    """
    main = EulerFactor(
        weight=Fraction(1, 6),
        condition=PrimeCondition.all_primes(exclude=[3]),
        special=((3, (1, 2, 6)),),
    )
    twisted = EulerFactor(
        weight=Fraction(1, 3),
        condition=PrimeCondition.congruent(9, [1, 8]),
        otherwise=(1, -1),
    )
    return SeriesSpec(
        case=SeriesCase.PURE_CUBIC,
        D=Discriminant(-3),
        constant=Fraction(-1, 2),
        constituents=(main, twisted),
        l3_factor=(1, 2, 6),
    )


def mirror_spec(mirror: MirrorData, exact: bool) -> SeriesSpec:
    """L3(s) prod_{(D'/p) = 1, p != 3}(1 + 2p^-s), exact or main part only.

    The exact series (Scholz gate open) carries weight 1/2 and constant
    -1/2. Otherwise only the trivial-character part with weight
    3^r2(D)/6 is available.
    """
    l3 = mirror.l3_coefficients
    factor = EulerFactor(
        weight=Fraction(1, 2) if exact else Fraction(3 ** mirror.r2_D, 6),
        condition=PrimeCondition.kronecker_equals(mirror.Dprime, 1, exclude=[3]),
        special=((3, l3),),
    )
    return SeriesSpec(
        case=SeriesCase.EXACT_CASE5 if exact else SeriesCase.ASYMPTOTIC_ONLY,
        D=mirror.D,
        constant=Fraction(-1, 2) if exact else Fraction(0),
        constituents=(factor,),
        mirror=mirror,
        l3_factor=l3,
    )


def build_spec(d: "int | Discriminant") -> SeriesSpec:
    """Route D to its series.

    Raises:
        InvalidDiscriminantError: D is neither fundamental nor 1.
    """
    disc = Discriminant.of(d)
    if disc.is_cyclic_case:
        spec = cyclic_spec()
    elif disc.is_pure_cubic_case:
        spec = pure_cubic_spec()
    else:
        spec = mirror_spec(mirror_data(disc), exact=scholz_gate(disc))
    logger.debug("D=%d routed to %s", disc.value, spec.case.value)
    return spec
