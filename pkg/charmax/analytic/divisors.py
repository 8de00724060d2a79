"""Divisor functions d_k and the series sum_n d_k(n)^2 / n^{2 sigma}.

The series is evaluated as an Euler product accelerated by zeta:

    sum_n d_k(n)^2 n^{-s} = zeta(s)^{k^2} prod_p L_p(p^{-s}) (1 - p^{-s})^{k^2},

where L_p(x) = sum_a C(k+a-1, a)^2 x^a. The corrected local factors are
1 - k^2 (k-1)^2 x^2 / 4 + O(k^6 x^3), so the product converges like sum_p p^{-2s}.
"""

import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from charmax import config
from charmax.analytic.primes import primes_below
from charmax.analytic.special import QuadratureResult
from charmax.arithmetic import factorize
from charmax.errors import DomainError, ToleranceUnreachableError

logger = logging.getLogger(__name__)

# Primes below this use the scalar series with its own tail bound
_SCALAR_PRIMES = 1000


def dk(n: int, k: int) -> int:
    """Number of ordered k-tuples of positive integers with product n."""
    if n < 1 or k < 1:
        raise DomainError(f"dk needs n >= 1 and k >= 1, got n={n}, k={k}")
    result = 1
    for _, a in factorize(n).factors:
        result *= math.comb(k + a - 1, a)
    return result


def dk_table(N: int, k: int) -> np.ndarray:
    """d_k(n) for n = 0..N (entry 0 unused) by repeated convolution with 1."""
    if N < 1 or k < 1:
        raise DomainError(f"dk_table needs N >= 1 and k >= 1, got N={N}, k={k}")
    table = np.ones(N + 1, dtype=np.int64)
    table[0] = 0
    for _ in range(k - 1):
        nxt = np.zeros(N + 1, dtype=np.int64)
        for d in range(1, N + 1):
            nxt[d::d] += table[d]
        table = nxt
    return table


def _check_sigma(sigma: float) -> None:
    if sigma <= 0.5:
        raise DomainError(f"sigma must exceed 1/2, got {sigma}")


def _local_factor(p: int, k: int, sigma: float, max_terms: int) -> float:
    x = float(p) ** (-2.0 * sigma)
    total = 1.0
    term = 1.0
    for a in range(1, max_terms + 1):
        term *= ((k + a - 1) / a) ** 2 * x
        total += term
        ratio = ((k + a) / (a + 1)) ** 2 * x
        if ratio < 1 and term * ratio / (1 - ratio) <= config.LOCAL_FACTOR_TAIL:
            return total
    raise ToleranceUnreachableError(
        f"Local factor at p={p}, k={k}, sigma={sigma} did not converge in {max_terms} terms"
    )


def local_factor_series(p: int, k: int, sigma: float, a_max: Optional[int] = None) -> float:
    """sum_{a >= 0} d_k(p^a)^2 / p^{2 a sigma}, with a geometric tail below 1e-12.

    Args:
        p: Prime
        k: Divisor order, k >= 0 (k = 0 gives 1)
        sigma: Exponent, sigma > 1/2
        a_max: Term ceiling (default: LOCAL_FACTOR_MAX_TERMS)

    Raises:
        DomainError: If sigma <= 1/2
        ToleranceUnreachableError: If the tail bound is not met within a_max terms
    """
    _check_sigma(sigma)
    if k == 0:
        return 1.0
    return _local_factor(p, k, sigma, a_max or config.LOCAL_FACTOR_MAX_TERMS)


def local_factor_integral(p: int, k: int, sigma: float) -> QuadratureResult:
    """int_0^1 |1 - e(theta)/p^sigma|^{-2k} d theta by adaptive quadrature."""
    _check_sigma(sigma)
    if k == 0:
        return QuadratureResult(value=1.0, est_error=0.0, scheme="exact", evaluations=0)
    x = float(p) ** (-sigma)

    def integrand(theta: float) -> float:
        return (1.0 - 2.0 * x * math.cos(2.0 * math.pi * theta) + x * x) ** (-k)

    value, error, info = integrate.quad(
        integrand, 0.0, 0.5, epsabs=1e-13, epsrel=1e-13, limit=200, full_output=1
    )
    return QuadratureResult(
        value=2.0 * value, est_error=2.0 * error, scheme="adaptive", evaluations=info["neval"]
    )


@dataclass(frozen=True)
class SeriesEstimate:
    """A series value with an absolute bound on the neglected Euler product tail."""

    value: float
    tail_bound: float
    prime_cutoff: int

    def __float__(self) -> float:
        return self.value


def _log_tail_bound(k: int, sigma: float, P: int) -> float:
    """Bound on sum_{p > P} |log corrected factor|, valid while k^2 P^{-2 sigma} <= 1/4."""
    return k**4 * float(P) ** (1.0 - 4.0 * sigma) / (4.0 * sigma - 1.0)


def _corrected_log_factors(primes: np.ndarray, k: int, sigma: float) -> float:
    """sum over the given primes of log(L_p(x) (1 - x)^{k^2}), x = p^{-2 sigma}."""
    x = primes.astype(np.float64) ** (-2.0 * sigma)
    excess = np.zeros_like(x)
    term = np.ones_like(x)
    for a in range(1, config.LOCAL_FACTOR_MAX_TERMS + 1):
        term *= ((k + a - 1) / a) ** 2 * x
        excess += term
        if term.max() <= 1e-18:
            break
    return math.fsum(np.log1p(excess) + k * k * np.log1p(-x))


@functools.lru_cache(maxsize=128)
def divisor_square_series(k: int, sigma: float, tol: float = 1e-10) -> SeriesEstimate:
    """sum_n d_k(n)^2 / n^{2 sigma} as a zeta-accelerated Euler product.

    The prime cutoff starts at max(PRIME_CUTOFF_MIN, PRIME_CUTOFF_FACTOR (2k)^{1/sigma})
    and doubles until the relative tail bound is at most tol.

    Raises:
        DomainError: If sigma <= 1/2 or k < 1
        ToleranceUnreachableError: If the cutoff would pass PRIME_CUTOFF_MAX
    """
    _check_sigma(sigma)
    if k < 1:
        raise DomainError(f"divisor_square_series needs k >= 1, got {k}")

    P = max(config.PRIME_CUTOFF_MIN, math.ceil(config.PRIME_CUTOFF_FACTOR * (2 * k) ** (1 / sigma)))
    while _log_tail_bound(k, sigma, P) > tol or k * k * float(P) ** (-2 * sigma) > 0.25:
        P *= 2
        if P > config.PRIME_CUTOFF_MAX:
            raise ToleranceUnreachableError(
                f"divisor_square_series(k={k}, sigma={sigma}) needs primes beyond "
                f"{config.PRIME_CUTOFF_MAX} for tol={tol}"
            )

    primes = primes_below(P + 1)
    small = primes[primes < _SCALAR_PRIMES]
    large = primes[primes >= _SCALAR_PRIMES]

    log_product = k * k * math.log(special.zeta(2 * sigma))
    log_product += math.fsum(
        math.log(_local_factor(int(p), k, sigma, config.LOCAL_FACTOR_MAX_TERMS))
        + k * k * math.log1p(-float(p) ** (-2 * sigma))
        for p in small
    )
    if len(large):
        log_product += _corrected_log_factors(large, k, sigma)

    value = math.exp(log_product)
    log_tail = _log_tail_bound(k, sigma, P)
    logger.debug("divisor_square_series(k=%d, sigma=%g): P=%d log-tail=%.3g", k, sigma, P, log_tail)
    return SeriesEstimate(value=value, tail_bound=value * math.expm1(log_tail), prime_cutoff=P)


def two_adic_factor(k: int) -> float:
    """sum_a d_k(2^a)^2 / 4^a, the p = 2 local factor at sigma = 1."""
    return local_factor_series(2, k, 1.0)


def halfpoint_limit_constant(k: int, tol: float = 1e-10) -> float:
    """Limit of (1/phi(q)) sum_{chi != chi_0} |S_chi(q/2)|^{2k} / q^k over primes q.

    Equals (2^{2k-1} / pi^{2k}) sum_{n odd} d_k(n)^2 / n^2; at k = 1 this is 1/4.
    """
    if k < 1:
        raise DomainError(f"halfpoint_limit_constant needs k >= 1, got {k}")
    odd_series = divisor_square_series(k, 1.0, tol).value / two_adic_factor(k)
    return 2.0 ** (2 * k - 1) / math.pi ** (2 * k) * odd_series
