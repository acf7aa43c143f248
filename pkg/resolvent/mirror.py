"""Mirror-field data for K2 = Q(sqrt(D)) and the Scholz exactness gate.

The mirror field is K2' = Q(sqrt(-3D)) with discriminant D' = -3D when
3 does not divide D and D' = -D/3 otherwise. The local factor at 3 and
the constants l3, c3 depend only on D mod 9 and on how 3 splits in K2'.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from arith.class_numbers import class_number
from arith.discriminants import Discriminant, is_fundamental
from arith.kronecker import PrimeSplitting
from core.enums import ResidueClass, Splitting
from core.errors import InvalidDiscriminantError, InvariantViolation, PureCubicCaseError

logger = logging.getLogger(__name__)

# L3(s) as coefficients of 3^(-ks), k = 0, 1, 2
L3_COEFFICIENTS = {
    ResidueClass.COPRIME_TO_3: (1, 0, 2),
    ResidueClass.THREE_MOD_9: (1, 2),
    ResidueClass.SIX_MOD_9: (1, 2, 6),
}

ELL3 = {
    ResidueClass.COPRIME_TO_3: Fraction(11, 9),
    ResidueClass.THREE_MOD_9: Fraction(5, 3),
    ResidueClass.SIX_MOD_9: Fraction(7, 5),
}

C3 = {
    Splitting.RAMIFIED: 11,
    Splitting.INERT: 15,
    Splitting.SPLIT: 21,
}


def l3_at_1(residue_class: ResidueClass) -> Fraction:
    """L3(1) as an exact rational."""
    return sum(
        (Fraction(c, 3**k) for k, c in enumerate(L3_COEFFICIENTS[residue_class])),
        Fraction(0),
    )


@dataclass(frozen=True)
class MirrorData:
    D: Discriminant
    Dprime: int
    r2_D: int
    r2_Kprime: int
    g: int
    ell3: Fraction
    c3: int
    split3: PrimeSplitting
    residue_class: ResidueClass

    @property
    def l3_coefficients(self) -> Tuple[int, ...]:
        return L3_COEFFICIENTS[self.residue_class]

    @property
    def l3_at_1(self) -> Fraction:
        return l3_at_1(self.residue_class)


def mirror_discriminant(d: int) -> int:
    return -3 * d if d % 3 else -(d // 3)


def mirror_data(d: "int | Discriminant") -> MirrorData:
    """Derive D', r2, g, l3, c3 and the splitting of 3 in K2'.

    D = 1 (cyclic cubics) gives D' = -3 and g = 3.

    Raises:
        InvalidDiscriminantError: D is not fundamental.
        PureCubicCaseError: D = -3.
    """
    disc = Discriminant.of(d)
    if disc.is_pure_cubic_case:
        raise PureCubicCaseError()

    dprime = mirror_discriminant(disc.value)
    if not is_fundamental(dprime):
        raise InvariantViolation(f"mirror discriminant {dprime} of D={disc.value} is not fundamental")

    residue = ResidueClass.of(disc.value)
    split3 = PrimeSplitting.of(dprime, 3)
    data = MirrorData(
        D=disc,
        Dprime=dprime,
        r2_D=disc.r2,
        r2_Kprime=1 if dprime < 0 else 0,
        g=3 if disc.is_cyclic_case else 1,
        ell3=ELL3[residue],
        c3=C3[split3.splitting],
        split3=split3,
        residue_class=residue,
    )
    if data.c3 != 9 * data.l3_at_1:
        raise InvariantViolation(
            f"D={disc.value}: c3={data.c3} does not match 9*L3(1)={9 * data.l3_at_1}"
        )
    return data


def theorem_prefactor(data: MirrorData) -> Fraction:
    """g * c3 / 3^(3 + r2(K2')), the rational factor in the product form of C."""
    return Fraction(data.g * data.c3, 3 ** (3 + data.r2_Kprime))


def proof_prefactor(data: MirrorData) -> Fraction:
    """g * 3^(r2(D) - 2) * L3(1), the same factor read off the residue computation."""
    return data.g * Fraction(3) ** (data.r2_D - 2) * data.l3_at_1


def scholz_gate(d: "int | Discriminant") -> bool:
    """True iff D < 0, D != -3 and 3 does not divide h(D).

    Under these conditions the non-trivial characters drop out and the
    explicit series for K2 = Q(sqrt(D)) is exact.
    """
    disc = Discriminant.of(d)
    if disc.value >= 0 or disc.is_pure_cubic_case:
        return False
    h = class_number(disc.value)
    gate = h % 3 != 0
    logger.debug("Scholz gate D=%d: h=%d -> %s", disc.value, h, gate)
    return gate
