"""Prefix sums, maxima and interval sums of a single character."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
import sympy

from charmax import config
from charmax.arithmetic import (
    DirichletCharacter,
    Parity,
    character_values,
    conductor,
    conductor_modulus,
    parity,
)
from charmax.errors import DomainError

logger = logging.getLogger(__name__)

Endpoint = Union[Fraction, float, int]


@dataclass(frozen=True)
class CharExtremes:
    """Extremal data of the prefix sums of one nonprincipal character.

    Attributes:
        M: max over 1 <= t <= q of |S_chi(t)|
        N: smallest t attaining M
        S_half: S_chi(floor(q/2))
        parity: EVEN or ODD
        conductor: conductor of chi
    """

    M: float
    N: int
    S_half: complex
    parity: Parity
    conductor: int


def argmax_tolerance(q: int) -> float:
    """Accumulated rounding bound for a length-q complex prefix sum."""
    return q * config.FLOAT_ERROR_PER_TERM


def prefix_sums(chi: DirichletCharacter) -> np.ndarray:
    """S_chi(t) for t = 0..q (S_chi(0) = 0)."""
    q = chi.q
    values = character_values(chi)
    sums = np.empty(q + 1, dtype=np.complex128)
    sums[0] = 0
    np.cumsum(values[np.arange(1, q + 1) % q], out=sums[1:])
    return sums


def prefix_extremes(chi: DirichletCharacter) -> CharExtremes:
    """M(chi), its smallest argmax N, and the half-point sum, by a full scan.

    Raises:
        DomainError: If chi is principal
    """
    if chi.is_principal:
        raise DomainError(f"prefix_extremes needs a nonprincipal character, got {chi}")

    q = chi.q
    sums = prefix_sums(chi)
    magnitudes = np.abs(sums[1:])
    M = float(magnitudes.max())
    N = int(np.argmax(magnitudes >= M - argmax_tolerance(q))) + 1

    return CharExtremes(
        M=M,
        N=N,
        S_half=complex(sums[q // 2]),
        parity=parity(chi),
        conductor=conductor_modulus(chi),
    )


def half_point_sum(chi: DirichletCharacter) -> complex:
    """S_chi(floor(q/2))."""
    values = character_values(chi)
    return complex(np.sum(values[1 : chi.q // 2 + 1]))


def _floor_scaled(x: Endpoint, q: int) -> int:
    if not 0 <= x <= 1:
        raise DomainError(f"Interval endpoint must lie in [0, 1], got {x}")
    return math.floor(Fraction(x) * q)


def interval_sum(chi: DirichletCharacter, alpha: Endpoint, beta: Endpoint) -> complex:
    """Sum of chi(n) over integers alpha*q < n <= beta*q.

    Floats are taken at their exact binary value; pass Fractions for exact
    rational endpoints such as t/q.

    Raises:
        DomainError: If alpha > beta or an endpoint leaves [0, 1]
    """
    if alpha > beta:
        raise DomainError(f"Empty orientation: alpha={alpha} > beta={beta}")
    q = chi.q
    lo, hi = _floor_scaled(alpha, q), _floor_scaled(beta, q)
    sums = prefix_sums(chi)
    return complex(sums[hi] - sums[lo])


def fraction_point_sum(chi: DirichletCharacter, theta: Endpoint) -> complex:
    """S_chi(floor(theta*q)) for a fixed fraction theta of the period."""
    return complex(prefix_sums(chi)[_floor_scaled(theta, chi.q)])


def primitive_reduction(chi: DirichletCharacter, alpha: Endpoint, beta: Endpoint) -> complex:
    """Interval sum rebuilt from the primitive character chi* inducing chi.

    With r the product of the primes dividing q but not the conductor f,

        sum_{lo < n <= hi} chi(n) = sum_{d | r} mu(d) chi*(d) sum_{lo/d < m <= hi/d} chi*(m)

    where lo = floor(alpha q) and hi = floor(beta q).
    """
    if alpha > beta:
        raise DomainError(f"Empty orientation: alpha={alpha} > beta={beta}")
    q = chi.q
    lo, hi = _floor_scaled(alpha, q), _floor_scaled(beta, q)
    f, chi_star = conductor(chi)
    star_values = character_values(chi_star)

    stripped = [p for p in chi.group.modulus.primes if f % p != 0]
    logger.debug("Reducing mod %d to conductor %d over primes %s", q, f, stripped)

    total = 0j
    for d in sympy.divisors(math.prod(stripped)):
        mu = int(sympy.mobius(d))
        weight = mu * star_values[d % f]
        if weight == 0:
            continue
        m = np.arange(lo // d + 1, hi // d + 1)
        total += weight * np.sum(star_values[m % f])
    return complex(total)
