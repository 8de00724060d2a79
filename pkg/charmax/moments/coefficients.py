"""Brute-force Dirichlet coefficients b(n) of (sum_{n <= q} chi(n) c(n))^k.

Two coefficient families are supported:

- interval: c(n) = e(alpha n)(1 - e((beta - alpha) n)) / n for gcd(n, q) = 1, else 0
- half-point: c(n) = 1/n for odd n, 0 for even n (multiples of q are kept)

b(n) is the sum over ordered k-tuples n_1 ... n_k = n with every n_j <= q of
prod c(n_j), so (sum_n chi(n) c(n))^k = sum_n chi(n) b(n).
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from charmax import config
from charmax.analytic import dk_table
from charmax.arithmetic import character_values, enumerate_characters, parity, unit_group
from charmax.arithmetic.characters import Parity
from charmax.errors import BudgetExceededError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BCoefficients:
    """b(n) for 1 <= n <= q^k; ``values[0]`` is unused."""

    q: int
    k: int
    alpha: float
    beta: float
    halfpoint: bool
    values: np.ndarray

    def __getitem__(self, n: int) -> complex:
        if 1 <= n < len(self.values):
            return complex(self.values[n])
        return 0j

    def residue_sums(self) -> np.ndarray:
        """sum_m b(a + mq) for a = 0..q-1 (index a = 0 collects the multiples of q)."""
        sums = np.zeros(self.q, dtype=self.values.dtype)
        n = np.arange(len(self.values))
        np.add.at(sums, n % self.q, self.values)
        return sums

    def bound_ratio(self) -> float:
        """max over n of |b(n)| / (2^k d_k(n) min(1/n, pi^k (beta - alpha)^k))."""
        N = len(self.values) - 1
        d = dk_table(N, self.k)[1:].astype(np.float64)
        n = np.arange(1, N + 1, dtype=np.float64)
        width = 0.5 if self.halfpoint else self.beta - self.alpha
        bound = 2.0**self.k * d * np.minimum(1 / n, (math.pi * width) ** self.k)
        magnitudes = np.abs(self.values[1:])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(bound > 0, magnitudes / bound, np.where(magnitudes > 0, np.inf, 0))
        return float(ratios.max()) if len(ratios) else 0.0


def _base_coefficients(q: int, alpha: float, beta: float, halfpoint: bool) -> np.ndarray:
    n = np.arange(1, q + 1)
    c = np.zeros(q + 1, dtype=np.float64 if halfpoint else np.complex128)
    if halfpoint:
        c[1:] = np.where(n % 2 == 1, 1.0 / n, 0.0)
    else:
        twist = np.exp(2j * np.pi * alpha * n) * (1 - np.exp(2j * np.pi * (beta - alpha) * n)) / n
        c[1:] = np.where(np.gcd(n, q) == 1, twist, 0)
    return c


def b_oracle(
    q: int, k: int, alpha: float = 0.0, beta: float = 0.5, halfpoint: bool = False
) -> BCoefficients:
    """Coefficients b(n), n <= q^k, by iterated multiplicative convolution.

    Args:
        q: Modulus
        k: Power
        alpha: Interval start in [0, 1] (interval family)
        beta: Interval end in [alpha, 1] (interval family)
        halfpoint: Use the half-point family instead

    Raises:
        DomainError: If the interval is invalid
        BudgetExceededError: If q^k exceeds B_ORACLE_BUDGET
    """
    if q < 2 or k < 1:
        raise DomainError(f"b_oracle needs q >= 2 and k >= 1, got q={q}, k={k}")
    if not 0 <= alpha <= beta <= 1:
        raise DomainError(f"Need 0 <= alpha <= beta <= 1, got alpha={alpha}, beta={beta}")
    size = q**k
    if size > config.B_ORACLE_BUDGET:
        raise BudgetExceededError(
            f"q^k = {size} exceeds the b-oracle budget {config.B_ORACLE_BUDGET}"
        )

    c = _base_coefficients(q, alpha, beta, halfpoint)
    b = c.copy()
    for level in range(2, k + 1):
        nxt = np.zeros(q**level + 1, dtype=c.dtype)
        support = np.flatnonzero(b)
        for m in np.flatnonzero(c):
            nxt[m * support] += b[support] * c[m]
        b = nxt

    logger.debug(
        "b_oracle(q=%d, k=%d, halfpoint=%s): %d nonzero", q, k, halfpoint, np.count_nonzero(b)
    )
    return BCoefficients(q=q, k=k, alpha=alpha, beta=beta, halfpoint=halfpoint, values=b)


def _residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def orthogonality_check(q: int, k: int) -> Tuple[float, float, float]:
    """Both sides of the odd-character orthogonality identity for the half-point sum.

        sum_{chi odd} |sum_{n <= q, n odd} chi(n)/n|^{2k}
            = (phi/2) sum_a |sum_m b(a + mq)|^2 - (phi/2) sum_a sum_{s,t} b(a + sq) b(q - a + tq)

    with a over the residues coprime to q and b from the half-point family.

    Returns:
        (lhs, rhs, residual) with residual = |lhs - rhs| / max(1, |lhs|)
    """
    g = unit_group(q)
    if not g.modulus.is_prime:
        raise DomainError(f"orthogonality_check needs a prime modulus, got {q}")

    n = np.arange(1, q + 1)
    weights = np.where(n % 2 == 1, 1.0 / n, 0.0)
    lhs_terms = []
    for chi in enumerate_characters(g):
        if parity(chi) is Parity.ODD:
            inner = np.sum(character_values(chi)[n % q] * weights)
            lhs_terms.append(abs(inner) ** (2 * k))
    lhs = math.fsum(lhs_terms)

    S = b_oracle(q, k, halfpoint=True).residue_sums()
    a = np.flatnonzero(np.gcd(np.arange(q), q) == 1)
    phi = g.modulus.phi
    rhs = phi / 2 * math.fsum(S[a] ** 2 - S[a] * S[(q - a) % q])

    return lhs, rhs, _residual(lhs, rhs)


def interval_orthogonality_check(
    q: int, k: int, alpha: float, beta: float
) -> Tuple[float, float, float]:
    """Both sides of the full-group orthogonality identity for interval coefficients.

        sum_chi |sum_{n <= q} chi(n) c(n)|^{2k} = phi(q) sum_{(a, q) = 1} |sum_m b(a + mq)|^2

    Returns:
        (lhs, rhs, residual)
    """
    g = unit_group(q)
    c = _base_coefficients(q, alpha, beta, halfpoint=False)
    n = np.arange(1, q + 1)
    lhs = math.fsum(
        abs(np.sum(character_values(chi)[n % q] * c[1:])) ** (2 * k)
        for chi in enumerate_characters(g)
    )

    S = b_oracle(q, k, alpha, beta).residue_sums()
    a = np.flatnonzero(np.gcd(np.arange(q), q) == 1)
    rhs = g.modulus.phi * math.fsum(np.abs(S[a]) ** 2)

    return lhs, rhs, _residual(lhs, rhs)
