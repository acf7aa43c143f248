"""Shared fixtures; puts the package root on sys.path like main.py does."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

_ROOT = Path(__file__).resolve().parent.parent
if str(_ROOT) not in sys.path:
    sys.path.insert(0, str(_ROOT))

from config.settings import CensusConfig, PrecisionSettings  # noqa: E402

# Fast but still far beyond float precision
TEST_BITS = 128
TEST_CUTOFF = 1000


@pytest.fixture
def precision() -> PrecisionSettings:
    return PrecisionSettings(bits=TEST_BITS, prime_cutoff=TEST_CUTOFF)


@pytest.fixture
def config() -> CensusConfig:
    cfg = CensusConfig()
    cfg.precision.bits = TEST_BITS
    cfg.precision.prime_cutoff = TEST_CUTOFF
    return cfg


@pytest.fixture(scope="session")
def small_primes():
    from arith.primes import primes_up_to
    return primes_up_to(TEST_CUTOFF)
