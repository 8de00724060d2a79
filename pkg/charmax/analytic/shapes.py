"""Main-term shapes of the moment and tail estimates.

Every shape drops the O(.) terms of the estimate it comes from; the caveat on
each MainTermShape says which. Shapes are for trend plots and reports only.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from charmax import config
from charmax.analytic.special import cached_A
from charmax.errors import DomainError

SHAPES = (
    "C_k",
    "c_k",
    "theorem2b",
    "corollary2b",
    "theorem3_upper",
    "theorem3_lower",
    "interval_moment",
    "proposition",
)

EG_OVER_PI = math.exp(config.EULER_GAMMA) / math.pi


@dataclass(frozen=True)
class MainTermShape:
    """Logarithm of a main term, its parameters and what was dropped."""

    which: str
    params: Dict[str, float] = field(default_factory=dict)
    log_value: float = 0.0
    caveat: str = ""

    @property
    def value(self) -> float:
        """exp(log_value); may overflow to inf for large parameters."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def moment_upper_shape(k: float) -> MainTermShape:
    """log C(k) without O(k): 4k log log k + k log log log k."""
    _require(k >= 3, f"C(k) shape needs k >= 3, got {k}")
    loglog = math.log(math.log(k))
    return MainTermShape(
        which="C_k",
        params={"k": k},
        log_value=4 * k * loglog + k * math.log(loglog),
        caveat="O(k) in the exponent dropped; o(1) in C(k) + o(1) dropped",
    )


def moment_lower_shape(k: float) -> MainTermShape:
    """log c(k) without O(k): 2k log log k."""
    _require(k >= 2, f"c(k) shape needs k >= 2, got {k}")
    return MainTermShape(
        which="c_k",
        params={"k": k},
        log_value=2 * k * math.log(math.log(k)),
        caveat="O(k) in the exponent dropped; o(1) in c(k) + o(1) dropped",
    )


def theorem2b_main(k: int, q: int) -> MainTermShape:
    """Main term of the half-point moment over a prime modulus.

    (e^gamma/pi)^{2k} q^k (log k)^{2k} exp(2k A / log k)
    """
    _require(k >= 3, f"Half-point main term needs k >= 3, got {k}")
    _require(q >= 3, f"Modulus must be >= 3, got {q}")
    A = cached_A()
    log_k = math.log(k)
    log_value = (
        2 * k * math.log(EG_OVER_PI) + k * math.log(q) + 2 * k * math.log(log_k) + 2 * k * A / log_k
    )
    return MainTermShape(
        which="theorem2b",
        params={"k": k, "q": q, "A": A, "gamma": config.EULER_GAMMA},
        log_value=log_value,
        caveat="O(1/log k) inside exp(2k/log k (A + .)) dropped; O(q^{k-1+eps}) dropped",
    )


def corollary_shape(alpha: float) -> MainTermShape:
    """log g(alpha) ~ -2 e^{alpha - A - 1} / alpha."""
    _require(alpha > 0, f"alpha must be positive, got {alpha}")
    A = cached_A()
    return MainTermShape(
        which="corollary2b",
        params={"alpha": alpha, "A": A},
        log_value=-2 * math.exp(alpha - A - 1) / alpha,
        caveat="(1 + O(alpha^{-1/2})) factor dropped; limsup over primes, not a finite-q value",
    )


def _log_one_minus_exp(x: float) -> float:
    """log(1 - exp(-x)) for x > 0."""
    if x > 700:
        return -math.exp(-x)
    return math.log(-math.expm1(-x))


def tail_upper_shape(alpha: float) -> MainTermShape:
    """Upper bound on F(alpha): 1 - exp(-(2e^gamma/(pi alpha)) e^{pi alpha/e^gamma - A - 1})."""
    _require(alpha > 0, f"alpha must be positive, got {alpha}")
    A = cached_A()
    exponent = math.pi * alpha / math.exp(config.EULER_GAMMA) - A - 1
    if exponent > 700:
        x = math.inf
    else:
        x = 2 * math.exp(config.EULER_GAMMA) / (math.pi * alpha) * math.exp(exponent)
    return MainTermShape(
        which="theorem3_upper",
        params={"alpha": alpha, "A": A, "gamma": config.EULER_GAMMA},
        log_value=0.0 if math.isinf(x) else _log_one_minus_exp(x),
        caveat="(1 + O(alpha^{-1/2})) factor dropped; bound on the liminf F(alpha)",
    )


def tail_lower_shape(alpha: float, B: float) -> MainTermShape:
    """Refined lower bound on F(alpha) with a user-chosen B.

    1 - exp(-exp(B alpha^{1/2} / (log alpha)^{1/4}) (2 log log alpha / log alpha))
    """
    _require(alpha >= 3, f"Lower tail shape needs alpha >= 3, got {alpha}")
    _require(B > 0, f"B must be positive, got {B}")
    log_alpha = math.log(alpha)
    inner = B * math.sqrt(alpha) / log_alpha**0.25
    factor = 2 * math.log(log_alpha) / log_alpha
    x = math.inf if inner > 700 else math.exp(inner) * factor
    return MainTermShape(
        which="theorem3_lower",
        params={"alpha": alpha, "B": B},
        log_value=0.0 if math.isinf(x) else _log_one_minus_exp(x),
        caveat="O(1/log alpha) next to 2 log log alpha / log alpha dropped; B is not numeric",
    )


def tail_shapes(alpha: float, B: float) -> Tuple[MainTermShape, MainTermShape, MainTermShape]:
    """(upper, lower, corollary) main terms at alpha.

    Raises:
        DomainError: If alpha < 3 or B <= 0
    """
    _require(alpha >= 3, f"Tail shapes need alpha >= 3, got {alpha}")
    return tail_upper_shape(alpha), tail_lower_shape(alpha, B), corollary_shape(alpha)


def interval_moment_shape(k: float, q: int, width: float) -> MainTermShape:
    """Main term of the interval-sum moment per character, with C_1 = 1.

    q^k (beta - alpha)^{2k/log k} (log 2k)^{2k}
    """
    _require(k >= 2, f"Interval moment shape needs k >= 2, got {k}")
    _require(0 < width <= 1, f"Interval width must lie in (0, 1], got {width}")
    log_value = (
        k * math.log(q) + 2 * k / math.log(k) * math.log(width) + 2 * k * math.log(math.log(2 * k))
    )
    return MainTermShape(
        which="interval_moment",
        params={"k": k, "q": q, "width": width},
        log_value=log_value,
        caveat="absolute constant C_1^k set to 1; C_2(k, eps) q^{k-1+eps} term dropped",
    )


def proposition_bound(k: int, sigma: float) -> MainTermShape:
    """2k sigma log log (2k)^{1/sigma} + (2k)^{1/sigma} / (2 sigma - 1)."""
    _require(k >= 2, f"proposition_bound needs k >= 2, got {k}")
    _require(0.5 < sigma <= 1, f"sigma must lie in (1/2, 1], got {sigma}")
    root = (2 * k) ** (1 / sigma)
    return MainTermShape(
        which="proposition",
        params={"k": k, "sigma": sigma},
        log_value=2 * k * sigma * math.log(math.log(root)) + root / (2 * sigma - 1),
        caveat=(
            "O(k/(2 sigma - 1)) and O((2k)^{1/sigma}/log(3 (2k)^{1/sigma - 1})) dropped; "
            "compare with a fitted constant"
        ),
    )


def rankin_sigma(k: float) -> float:
    """sigma = 1 - 1/log k."""
    _require(k > math.e ** 2, f"rankin_sigma needs log k > 2 so that sigma > 1/2, got k={k}")
    return 1 - 1 / math.log(k)


def rankin_inequality(a: Sequence[float], X: float, sigma: float) -> Tuple[float, float]:
    """Both sides of Rankin's trick for coefficients a_1, a_2, ...

        X^{-2} sum_{n <= X} a_n^2 + sum_{n > X} a_n^2 / n^2
            <= X^{2 sigma - 2} sum_n a_n^2 / n^{2 sigma}

    Returns:
        (lhs, rhs)
    """
    _require(0 <= sigma <= 1, f"sigma must lie in [0, 1], got {sigma}")
    _require(X > 0, f"X must be positive, got {X}")
    sq = np.asarray(a, dtype=np.float64) ** 2
    n = np.arange(1, len(sq) + 1, dtype=np.float64)
    inside = n <= X
    lhs = math.fsum(sq[inside]) / X**2 + math.fsum(sq[~inside] / n[~inside] ** 2)
    rhs = X ** (2 * sigma - 2) * math.fsum(sq / n ** (2 * sigma))
    return lhs, rhs


def markov_k_choice(alpha: float, B: float) -> int:
    """k = ceil(exp(B alpha^{1/2} / (log alpha)^{1/4}))."""
    _require(alpha > 1, f"alpha must exceed 1, got {alpha}")
    _require(B > 0, f"B must be positive, got {B}")
    exponent = B * math.sqrt(alpha) / math.log(alpha) ** 0.25
    _require(exponent < 700, f"k = exp({exponent:.1f}) is out of range")
    return math.ceil(math.exp(exponent))
