"""
Named verification suites.

Each suite checks one exact statement numerically and reports every residual
against its tolerance:

- gauss: |tau(chi)| = sqrt(q) for primitive chi
- polya: full Polya expansion against the direct prefix sum
- dyadic: dyadic block reconstruction of S_chi(N)
- orthogonality: odd-character and interval orthogonality identities
- bessel: Euler local factor as a series and as an integral; I_0 bounds
- primesum: sum of p^-sigma against sigma log log x
- proposition: divisor series against its main-term bound with a fitted constant
- lfun: S_chi(q/2) against (2 - conj(chi(2))) tau(chi)/(pi i) L(1, conj(chi))
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from charmax import config
from charmax.analytic import (
    bessel_i0,
    divisor_square_series,
    halfpoint_from_l_one,
    local_factor_integral,
    local_factor_series,
    prime_sum,
    proposition_bound,
)
from charmax.arithmetic import (
    Parity,
    enumerate_characters,
    exact_character_sum,
    gauss_sum,
    is_primitive,
    parity,
    root_table,
    unit_group,
)
from charmax.charsums import (
    dyadic_path,
    dyadic_reconstruct,
    half_point_sum,
    polya_expansion_grid,
    prefix_sums,
)
from charmax.errors import DomainError
from charmax.moments import interval_orthogonality_check, orthogonality_check

logger = logging.getLogger(__name__)

POLYA_ENVELOPE = 10.0  # |expansion - direct| <= POLYA_ENVELOPE * log q
POLYA_GRID = 64
BESSEL_PRIMES = (3, 5, 13, 101)
BESSEL_KS = (1, 2, 3, 5)
BESSEL_SIGMAS = (0.6, 0.8, 1.0)
PRIMESUM_XS = (10**3, 10**4, 10**5, 10**6, 10**7)
PRIMESUM_SIGMAS = (0.6, 0.8, 1.0)
DYADIC_SEED = 20240101
PROPOSITION_KS = tuple(range(2, 17))
PROPOSITION_SIGMAS = (0.8, 0.85, 0.9, 0.95, 1.0)
PROPOSITION_SERIES_TOL = 1e-6
PROPOSITION_SLACK = 0.25  # per unit of k, for the held-out odd k
LFUN_TOL = 1e-8


@dataclass
class CheckResult:
    """One residual compared with its tolerance."""

    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SuiteResult:
    """All checks of one suite run."""

    suite: str
    params: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def add(self, name: str, residual: float, tolerance: float, **detail: Any) -> CheckResult:
        check = CheckResult(
            name=name,
            residual=float(residual),
            tolerance=float(tolerance),
            passed=bool(residual <= tolerance),
            detail=detail,
        )
        if not check.passed:
            logger.warning(
                "%s/%s failed: residual %.3g > %.3g", self.suite, name, residual, tolerance
            )
        self.checks.append(check)
        return check

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _primitive_characters(q: int):
    return [chi for chi in enumerate_characters(unit_group(q)) if is_primitive(chi)]


def suite_gauss(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    q = modulus or 101
    result = SuiteResult("gauss", {"modulus": q})
    root = math.sqrt(q)
    for chi in _primitive_characters(q):
        tau = gauss_sum(chi)
        result.add(repr(chi), abs(abs(tau) - root) / root, 1e-6)
    return result


def suite_polya(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    q = modulus or 101
    result = SuiteResult("polya", {"modulus": q, "grid": POLYA_GRID})
    ts = (np.arange(POLYA_GRID) + 0.5) * q / POLYA_GRID
    floors = np.floor(ts).astype(np.int64)
    bound = POLYA_ENVELOPE * math.log(q)
    for chi in _primitive_characters(q):
        if chi.is_principal:
            continue
        expansion, _ = polya_expansion_grid(chi, ts, q)
        direct = prefix_sums(chi)[floors]
        result.add(repr(chi), float(np.max(np.abs(expansion - direct))), bound)
    return result


def suite_dyadic(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    """Random (chi, N, L) cases; reconstruction must be exact and the gap small.

    Draws ``cases`` cases (default VERIFY_DYADIC_CASES), two checks each.
    """
    q = modulus or 1009
    cases = config.VERIFY_DYADIC_CASES if cases is None else cases
    if cases < 1:
        raise DomainError(f"Dyadic suite needs at least one case, got {cases}")
    g = unit_group(q)
    characters = [chi for chi in enumerate_characters(g) if not chi.is_principal]
    rng = np.random.default_rng(DYADIC_SEED)
    result = SuiteResult("dyadic", {"modulus": q, "cases": cases, "seed": DYADIC_SEED})
    roots = root_table(g.exponent)

    for case in range(cases):
        chi = characters[int(rng.integers(len(characters)))]
        N = int(rng.integers(1, q))
        L = int(rng.integers(1, 21))
        path = dyadic_path(N, q, L)
        blocksum, gap = dyadic_reconstruct(chi, path)

        truncated = complex(np.dot(exact_character_sum(chi, 0, path.truncation), roots))
        result.add(f"case {case} exact", 0.0 if blocksum == truncated else math.inf, 0.0)

        S_N = prefix_sums(chi)[N]
        result.add(
            f"case {case} gap",
            abs(S_N - blocksum),
            q / 2**L + 1,
            N=N,
            L=L,
            gap=gap,
        )
    return result


def suite_orthogonality(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    q = modulus or 7
    k = k or 2
    result = SuiteResult("orthogonality", {"modulus": q, "k": k})
    if unit_group(q).modulus.is_prime:
        lhs, rhs, residual = orthogonality_check(q, k)
        result.add("odd half-point", residual, 1e-9, lhs=lhs, rhs=rhs)
    for alpha, beta in ((0.0, 0.5), (0.25, 0.75)):
        lhs, rhs, residual = interval_orthogonality_check(q, k, alpha, beta)
        result.add(f"interval [{alpha}, {beta}]", residual, 1e-9, lhs=lhs, rhs=rhs)
    return result


def suite_bessel(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    primes = (modulus,) if modulus else BESSEL_PRIMES
    ks = (k,) if k else BESSEL_KS
    result = SuiteResult("bessel", {"primes": primes, "ks": ks, "sigmas": BESSEL_SIGMAS})
    for p in primes:
        for kk in ks:
            for sigma in BESSEL_SIGMAS:
                series = local_factor_series(p, kk, sigma)
                integral = local_factor_integral(p, kk, sigma).value
                result.add(
                    f"p={p} k={kk} sigma={sigma}",
                    abs(series - integral) / max(1.0, abs(series)),
                    1e-8,
                    series=series,
                    integral=integral,
                )

    t = np.linspace(0.05, 20.0, 400)
    i0 = np.array([bessel_i0(x) for x in t])
    excess = i0 - np.minimum(np.exp(t), np.exp(t * t))
    result.add("I0(t) < min(e^t, e^t^2)", 0.0 if np.all(excess < 0) else float(excess.max()), 0.0)
    return result


def suite_primesum(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    """Ratio of the error to x^{1-sigma}/log(3x^{1-sigma}) must stay bounded.

    A check fails when the ratio at the largest x exceeds twice its value at
    the smallest x.
    """
    result = SuiteResult("primesum", {"xs": PRIMESUM_XS, "sigmas": PRIMESUM_SIGMAS})
    for sigma in PRIMESUM_SIGMAS:
        ratios = []
        for x in PRIMESUM_XS:
            scale = x ** (1 - sigma)
            error = abs(prime_sum(x, sigma) - sigma * math.log(math.log(x)))
            ratios.append(error / (scale / math.log(3 * scale)))
        growth = ratios[-1] / ratios[0] if ratios[0] > 0 else math.inf
        result.add(f"sigma={sigma}", growth, 2.0, ratios=ratios)
    return result


def suite_proposition(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    """log sum_n d_k(n)^2 / n^{2 sigma} <= proposition_bound(k, sigma) + C k.

    C is fitted as the largest (log series - bound) / k over even k. Odd k are
    held out of the fit and must meet the inequality with C + PROPOSITION_SLACK.
    """
    gaps: Dict[Tuple[int, float], float] = {}
    for kk in PROPOSITION_KS:
        for sigma in PROPOSITION_SIGMAS:
            series = divisor_square_series(kk, sigma, PROPOSITION_SERIES_TOL)
            bound = proposition_bound(kk, sigma).log_value
            gaps[(kk, sigma)] = (math.log(series.value) - bound) / kk

    fitted = max(gap for (kk, _), gap in gaps.items() if kk % 2 == 0)
    result = SuiteResult(
        "proposition",
        {"ks": PROPOSITION_KS, "sigmas": PROPOSITION_SIGMAS, "C": fitted},
    )
    for (kk, sigma), gap in gaps.items():
        held_out = kk % 2 == 1
        slack = PROPOSITION_SLACK if held_out else 0.0
        result.add(
            f"k={kk} sigma={sigma}",
            max(0.0, (gap - fitted) * kk),
            slack * kk,
            gap=gap,
            held_out=held_out,
        )
    return result


def suite_lfun(
    modulus: Optional[int] = None, k: Optional[int] = None, cases: Optional[int] = None
) -> SuiteResult:
    q = modulus or 101
    result = SuiteResult("lfun", {"modulus": q, "tol": LFUN_TOL})
    for chi in _primitive_characters(q):
        if chi.is_principal or parity(chi) is not Parity.ODD:
            continue
        direct = half_point_sum(chi)
        relation = halfpoint_from_l_one(chi, LFUN_TOL)
        allowance = relation.tail_bound + 1e-9 * max(1.0, abs(direct))
        result.add(repr(chi), abs(direct - relation.value), allowance)
    return result


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "gauss": suite_gauss,
    "polya": suite_polya,
    "dyadic": suite_dyadic,
    "orthogonality": suite_orthogonality,
    "bessel": suite_bessel,
    "primesum": suite_primesum,
    "proposition": suite_proposition,
    "lfun": suite_lfun,
}


def run_suite(
    name: str,
    modulus: Optional[int] = None,
    k: Optional[int] = None,
    cases: Optional[int] = None,
) -> SuiteResult:
    """Run one suite by name.

    Raises:
        DomainError: If the suite is unknown
    """
    if name not in SUITES:
        raise DomainError(f"Unknown suite {name!r}; expected one of {sorted(SUITES)}")
    result = SUITES[name](modulus=modulus, k=k, cases=cases)
    logger.info(
        "Suite %s: %s (%d checks, max residual %.3g)",
        name,
        "PASS" if result.passed else "FAIL",
        len(result.checks),
        result.max_residual,
    )
    return result
