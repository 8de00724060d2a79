"""Factored moduli and Euler's totient."""

import math
from dataclasses import dataclass
from typing import Tuple

import sympy

from charmax import config
from charmax.errors import DomainError


@dataclass(frozen=True)
class FactoredModulus:
    """A positive integer together with its prime factorisation.

    ``factors`` is sorted by prime; ``phi`` is Euler's totient.
    """

    q: int
    factors: Tuple[Tuple[int, int], ...]
    phi: int

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def radical(self) -> int:
        return math.prod(self.primes)

    def prime_powers(self) -> Tuple[int, ...]:
        """The prime power factors p^e, in ascending order of p."""
        return tuple(p**e for p, e in self.factors)


def factorize(n: int) -> FactoredModulus:
    """Factor n and compute phi(n).

    Args:
        n: Integer in [1, 2^63 - 1]

    Returns:
        FactoredModulus with ascending distinct primes

    Raises:
        DomainError: If n is not in range
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"Modulus must be an integer, got {n!r}")
    if n < 1 or n > config.MAX_FACTOR_INPUT:
        raise DomainError(f"Cannot factor {n}: expected 1 <= n <= {config.MAX_FACTOR_INPUT}")

    factors = tuple(sorted(sympy.factorint(n).items()))
    phi = 1
    for p, e in factors:
        phi *= p ** (e - 1) * (p - 1)

    return FactoredModulus(q=n, factors=tuple((int(p), int(e)) for p, e in factors), phi=phi)
