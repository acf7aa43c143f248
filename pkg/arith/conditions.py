"""Prime predicates carried as data (never as code).

Both the coefficient sieve and the Euler-product evaluator consume these:
the sieve through the vectorised ``mask``, the evaluator through the
character decomposition of ``as_character_condition``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

import numpy as np

from core.enums import ConditionKind
from .kronecker import character_values, kronecker

# Residue classes mod m that one real character pins down: (m, residues) -> (d, value)
_CHARACTER_CLASSES = {
    (3, (1,)): (-3, 1),
    (3, (2,)): (-3, -1),
    (4, (1,)): (-4, 1),
    (4, (3,)): (-4, -1),
}


@dataclass(frozen=True)
class PrimeCondition:
    kind: ConditionKind = ConditionKind.ALL
    d: int = 0
    value: int = 1
    modulus: int = 0
    residues: Tuple[int, ...] = ()
    exclude: FrozenSet[int] = frozenset()

    # --- Constructors ---

    @classmethod
    def all_primes(cls, exclude: Iterable[int] = ()) -> "PrimeCondition":
        return cls(ConditionKind.ALL, exclude=frozenset(exclude))

    @classmethod
    def kronecker_equals(cls, d: int, value: int, exclude: Iterable[int] = ()) -> "PrimeCondition":
        if value not in (1, -1):
            raise ValueError("kronecker conditions select split (+1) or inert (-1) primes")
        return cls(ConditionKind.KRONECKER, d=d, value=value, exclude=frozenset(exclude))

    @classmethod
    def congruent(cls, modulus: int, residues: Iterable[int], exclude: Iterable[int] = ()) -> "PrimeCondition":
        res = tuple(sorted({r % modulus for r in residues}))
        return cls(ConditionKind.CONGRUENCE, modulus=modulus, residues=res, exclude=frozenset(exclude))

    @classmethod
    def divides(cls, d: int, exclude: Iterable[int] = ()) -> "PrimeCondition":
        return cls(ConditionKind.DIVIDES, d=d, exclude=frozenset(exclude))

    # --- Evaluation ---

    def holds(self, p: int) -> bool:
        if p in self.exclude:
            return False
        if self.kind is ConditionKind.ALL:
            return True
        if self.kind is ConditionKind.KRONECKER:
            return kronecker(self.d, p) == self.value
        if self.kind is ConditionKind.CONGRUENCE:
            return p % self.modulus in self.residues
        return self.d % p == 0

    def mask(self, primes: np.ndarray) -> np.ndarray:
        """Boolean mask over an int64 array of primes."""
        primes = np.asarray(primes, dtype=np.int64)
        if self.kind is ConditionKind.ALL:
            out = np.ones(primes.shape, dtype=bool)
        elif self.kind is ConditionKind.KRONECKER:
            out = character_values(self.d, primes) == self.value
        elif self.kind is ConditionKind.CONGRUENCE:
            out = np.isin(primes % self.modulus, self.residues)
        else:
            out = (abs(self.d) % primes) == 0
        if self.exclude:
            out &= ~np.isin(primes, sorted(self.exclude))
        return out

    def as_character_condition(self) -> "PrimeCondition":
        """Rewrite a congruence as a real-character condition where one exists.

        Prime sums over a residue class are only evaluated through
        quadratic characters, so other congruences are rejected.
        """
        if self.kind is not ConditionKind.CONGRUENCE:
            return self
        key = (self.modulus, self.residues)
        if key in _CHARACTER_CLASSES:
            d, value = _CHARACTER_CLASSES[key]
            return PrimeCondition.kronecker_equals(d, value, self.exclude)
        if self.modulus in (3, 4) and len(self.residues) == 2:
            # both unit classes: every prime not dividing the modulus
            return PrimeCondition.all_primes(self.exclude | {2 if self.modulus == 4 else 3})
        raise ValueError(f"no quadratic character selects p mod {self.modulus} in {self.residues}")

    def describe(self) -> str:
        if self.kind is ConditionKind.ALL:
            text = "all p"
        elif self.kind is ConditionKind.KRONECKER:
            text = f"kronecker({self.d}, p) = {self.value:+d}"
        elif self.kind is ConditionKind.CONGRUENCE:
            text = f"p mod {self.modulus} in {set(self.residues)}"
        else:
            text = f"p | {self.d}"
        if self.exclude:
            text += ", p not in " + str(sorted(self.exclude))
        return text
