"""Modified Bessel function I_0 and the constant A = int_0^2 log I_0(t) / t^2 dt."""

import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from charmax import config
from charmax.errors import DomainError, QuadratureDisagreementError

logger = logging.getLogger(__name__)

BESSEL_MAX_ARGUMENT = 700.0
_SERIES_EPS = 1e-17


@dataclass(frozen=True)
class QuadratureResult:
    """A numerically integrated value with its error estimate."""

    value: float
    est_error: float
    scheme: str
    evaluations: int


def _i0_series(t: float, skip_first: bool) -> float:
    x = t * t / 4.0
    term = 1.0
    total = 0.0 if skip_first else 1.0
    n = 0
    while True:
        n += 1
        term *= x / (n * n)
        total += term
        if term <= _SERIES_EPS * total:
            return total


def bessel_i0(t: float) -> float:
    """I_0(t) = sum_n (t/2)^{2n} / (n!)^2, summed to full double precision.

    Raises:
        DomainError: If |t| > 700 (the result would overflow)
    """
    t = abs(float(t))
    if t > BESSEL_MAX_ARGUMENT:
        raise DomainError(f"bessel_i0 argument {t} exceeds {BESSEL_MAX_ARGUMENT}")
    if t == 0.0:
        return 1.0
    return _i0_series(t, skip_first=False)


def log_bessel_i0(t: float) -> float:
    """log I_0(t), accurate for small t."""
    t = abs(float(t))
    if t > BESSEL_MAX_ARGUMENT:
        raise DomainError(f"log_bessel_i0 argument {t} exceeds {BESSEL_MAX_ARGUMENT}")
    if t == 0.0:
        return 0.0
    return math.log1p(_i0_series(t, skip_first=True))


def integrand_A(t: float) -> float:
    """log I_0(t) / t^2, continued to t = 0 by its limit 1/4."""
    if t < config.A_SERIES_CUTOFF:
        t2 = t * t
        return 0.25 - t2 / 64.0 + t2 * t2 / 576.0
    return log_bessel_i0(t) / (t * t)


def a_adaptive(tol: Optional[float] = None) -> QuadratureResult:
    """A by adaptive Gauss-Kronrod quadrature (QUADPACK)."""
    tol = config.A_DEFAULT_TOLERANCE if tol is None else tol
    value, error, info = integrate.quad(
        integrand_A, 0.0, 2.0, epsabs=tol / 10, epsrel=0.0, limit=200, full_output=1
    )
    return QuadratureResult(
        value=float(value), est_error=float(error), scheme="adaptive", evaluations=info["neval"]
    )


def _gauss_legendre(panels: int, nodes: int) -> float:
    x, w = np.polynomial.legendre.leggauss(nodes)
    width = 2.0 / panels
    total = 0.0
    for i in range(panels):
        a = i * width
        ts = a + (x + 1.0) * width / 2.0
        total += width / 2.0 * float(np.dot(w, [integrand_A(t) for t in ts]))
    return total


def a_gauss_legendre(
    panels: Optional[int] = None, nodes: Optional[int] = None
) -> QuadratureResult:
    """A by composite fixed-order Gauss-Legendre; error from doubling the panel count."""
    panels = config.GAUSS_LEGENDRE_PANELS if panels is None else panels
    nodes = config.GAUSS_LEGENDRE_NODES if nodes is None else nodes
    coarse = _gauss_legendre(panels, nodes)
    fine = _gauss_legendre(2 * panels, nodes)
    return QuadratureResult(
        value=fine,
        est_error=abs(fine - coarse),
        scheme="gauss-legendre",
        evaluations=3 * panels * nodes,
    )


@functools.lru_cache(maxsize=8)
def constant_A(tol: Optional[float] = None) -> QuadratureResult:
    """A = int_0^2 log I_0(t)/t^2 dt, confirmed by two independent schemes.

    Args:
        tol: Required agreement, at least 1e-12

    Returns:
        The adaptive result, its est_error widened to the scheme disagreement

    Raises:
        QuadratureDisagreementError: If the schemes differ by more than tol
    """
    tol = config.A_DEFAULT_TOLERANCE if tol is None else tol
    if tol < 1e-12:
        raise DomainError(f"constant_A tolerance must be >= 1e-12, got {tol}")

    adaptive = a_adaptive(tol)
    fixed = a_gauss_legendre()
    gap = abs(adaptive.value - fixed.value)
    logger.debug(
        "A: adaptive=%.17g gauss-legendre=%.17g gap=%.3g", adaptive.value, fixed.value, gap
    )

    if gap > tol:
        raise QuadratureDisagreementError(
            f"A: adaptive {adaptive.value!r} and Gauss-Legendre {fixed.value!r} "
            f"differ by {gap:.3g} > {tol:.3g}"
        )

    return QuadratureResult(
        value=adaptive.value,
        est_error=max(adaptive.est_error, fixed.est_error, gap),
        scheme="adaptive+gauss-legendre",
        evaluations=adaptive.evaluations + fixed.evaluations,
    )


def cached_A() -> float:
    """A at the default tolerance (computed once per process)."""
    return constant_A().value
