"""Census configuration with validation and JSON snapshots."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import List, Tuple

PRIME_CACHE_ENV = "CUBIC_CENSUS_PRIME_CACHE"


@dataclass
class PrecisionSettings:
    """Working precision for the Euler-product layer."""
    bits: int = 256
    prime_cutoff: int = 1000     # P0: primes <= P0 are multiplied in exactly
    guard_bits: int = 32


@dataclass
class SieveSettings:
    """Coefficient and prime sieve parameters."""
    workers: int = 1
    max_limit: int = 10**9
    prime_cache: str = ""        # CCPRIME1 bitset file, empty = no cache


@dataclass
class VerifySettings:
    """Sizes of the acceptance battery (full run, then --quick run)."""
    oracle_limit: int = 10**6
    dual_route_bound: int = 500
    gated_count: int = 50
    integrality_limit: int = 10**5
    residual_checkpoints: Tuple[int, ...] = (10**4, 10**5, 10**6)
    dual_route_cutoff: int = 10**4
    dual_route_bits: int = 96

    quick_oracle_limit: int = 10**4
    quick_dual_route_bound: int = 40
    quick_gated_count: int = 10
    quick_integrality_limit: int = 10**4
    quick_residual_checkpoints: Tuple[int, ...] = (10**4,)

    # Runtime budgets in seconds; exceeding one is logged, not fatal
    cyclic_budget: float = 10.0
    pure_cubic_budget: float = 30.0
    oracle_budget: float = 60.0


@dataclass
class CensusConfig:
    """Top-level configuration. Flags override env, env overrides defaults."""
    precision: PrecisionSettings = field(default_factory=PrecisionSettings)
    sieve: SieveSettings = field(default_factory=SieveSettings)
    verify: VerifySettings = field(default_factory=VerifySettings)

    @classmethod
    def from_env(cls) -> "CensusConfig":
        """Defaults plus the optional prime-cache location from the environment."""
        config = cls()
        cache = os.environ.get(PRIME_CACHE_ENV, "")
        if cache:
            config.sieve.prime_cache = cache
        return config

    def validate(self) -> List[str]:
        """Return list of validation error strings (empty = valid)."""
        errors = []
        if self.precision.bits < 96:
            errors.append("Precision must be at least 96 bits.")
        if self.precision.prime_cutoff < 100:
            errors.append("Prime cutoff P0 must be >= 100.")
        if self.precision.guard_bits < 0:
            errors.append("Guard bits must be non-negative.")
        if self.sieve.workers < 1:
            errors.append("Sieve workers must be >= 1.")
        if self.sieve.max_limit < 2:
            errors.append("Sieve capacity must be >= 2.")
        if self.verify.dual_route_bits < 96:
            errors.append("Dual-route precision must be at least 96 bits.")
        if any(x < 1 for x in self.verify.residual_checkpoints):
            errors.append("Residual checkpoints must be positive.")
        return errors

    @property
    def working_bits(self) -> int:
        return self.precision.bits + self.precision.guard_bits

    def to_dict(self) -> dict:
        return asdict(self)

    def save(self, path: Path) -> None:
        """Save a config snapshot to a JSON file."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
