"""Segmented prime sieve and prime power sums."""

import logging
import math
from typing import Iterator

import numpy as np

from charmax import config
from charmax.errors import BudgetExceededError, DomainError

logger = logging.getLogger(__name__)


def _simple_sieve(limit: int) -> np.ndarray:
    """Primes < limit by the sieve of Eratosthenes."""
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _segments(limit: int) -> Iterator[np.ndarray]:
    """Primes < limit, one array per sieve segment."""
    base = _simple_sieve(math.isqrt(limit) + 1)
    segment = config.PRIME_SEGMENT
    for lo in range(0, limit, segment):
        hi = min(lo + segment, limit)
        if hi <= 2:
            continue
        is_prime = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, (lo + p - 1) // p * p)
            is_prime[start - lo :: p] = False
        if lo < 2:
            is_prime[: 2 - lo] = False
        yield np.flatnonzero(is_prime).astype(np.int64) + lo


def _limit(x: float) -> int:
    if x > config.PRIME_SIEVE_LIMIT:
        raise BudgetExceededError(f"Sieve bound {x} exceeds the budget {config.PRIME_SIEVE_LIMIT}")
    return math.ceil(x)


def primes_below(x: float) -> np.ndarray:
    """All primes p < x."""
    limit = _limit(x)
    parts = list(_segments(limit))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def prime_sum(x: float, sigma: float) -> float:
    """Sum of p^-sigma over primes p < x, summed without rounding drift.

    Args:
        x: Bound, 2 <= x <= 10^9
        sigma: Exponent in [1/2, 1]

    Raises:
        DomainError: If x < 2
        BudgetExceededError: If x exceeds the sieve budget
    """
    if x < 2:
        raise DomainError(f"prime_sum needs x >= 2, got {x}")
    limit = _limit(x)
    partials = []
    count = 0
    for primes in _segments(limit):
        partials.append(math.fsum(np.power(primes.astype(np.float64), -sigma)))
        count += len(primes)
    logger.debug("prime_sum(x=%g, sigma=%g) over %d primes", x, sigma, count)
    return math.fsum(partials)
