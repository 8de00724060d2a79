"""Empirical moments and tail fractions over sweep tables."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from charmax import config
from charmax.analytic import (
    MainTermShape,
    corollary_shape,
    halfpoint_limit_constant,
    moment_lower_shape,
    moment_upper_shape,
    tail_upper_shape,
    theorem2b_main,
)
from charmax.charsums import SweepTable
from charmax.errors import CoverageGapError, DomainError, IncompleteTableError

logger = logging.getLogger(__name__)

STATISTICS = ("M", "S_half")


@dataclass
class MomentReport:
    """(1/phi(q)) sum over nonprincipal chi of |statistic|^{2k}, raw and over q^k."""

    q: int
    k: int
    statistic: str
    raw: float
    normalized: float
    comparison: Optional[float] = None  # limit constant on the normalized scale
    shapes: List[MainTermShape] = field(default_factory=list)


@dataclass
class TailReport:
    """Tail fractions on an alpha grid.

    ``counts`` holds the numerators behind F_q (or g_q) and ``total`` the
    common denominator phi(q) - 1.
    """

    q: int
    alphas: np.ndarray
    total: int
    counts: np.ndarray
    F_q: Optional[np.ndarray] = None
    g_q: Optional[np.ndarray] = None
    comparisons: List[Optional[MainTermShape]] = field(default_factory=list)


def _require_complete(table: SweepTable) -> None:
    if not table.complete or not table.is_full():
        raise IncompleteTableError(
            f"Table for q={table.q} holds {len(table)} of {table.modulus.phi - 1} rows"
        )


def _statistic(table: SweepTable, statistic: str) -> np.ndarray:
    if statistic == "M":
        return table.M
    if statistic == "S_half":
        return np.abs(table.S_half)
    raise DomainError(f"Unknown statistic {statistic!r}; expected one of {STATISTICS}")


def empirical_moment(table: SweepTable, k: int, statistic: str = "M") -> MomentReport:
    """Average of |statistic|^{2k} over the nonprincipal rows, divided by phi(q).

    Terms are taken on the normalized scale (x^2/q)^k and summed with fsum.

    Raises:
        DomainError: If the table is empty or k < 1
        IncompleteTableError: If the table is partial
    """
    if len(table) == 0:
        raise DomainError(f"Empty table for q={table.q}")
    if k < 1:
        raise DomainError(f"Moment order k must be >= 1, got {k}")
    _require_complete(table)

    q = table.q
    x = _statistic(table, statistic)
    normalized = math.fsum((x * x / q) ** k) / table.modulus.phi
    report = MomentReport(
        q=q, k=k, statistic=statistic, raw=normalized * float(q) ** k, normalized=normalized
    )

    if statistic == "S_half":
        if table.modulus.is_prime:
            report.comparison = halfpoint_limit_constant(k)
        if k >= 3:
            report.shapes.append(theorem2b_main(k, q))
    else:
        if k >= 2:
            report.shapes.append(moment_lower_shape(k))
        if k >= 3:
            report.shapes.append(moment_upper_shape(k))
    return report


def tail_F(table: SweepTable, alphas: Sequence[float]) -> TailReport:
    """F_q(alpha) = #{chi != chi_0 : M(chi) <= alpha sqrt(q)} / (phi(q) - 1)."""
    _require_complete(table)
    alphas = np.asarray(alphas, dtype=np.float64)
    ordered = np.sort(table.M)
    thresholds = alphas * math.sqrt(table.q)
    counts = np.searchsorted(ordered, thresholds, side="right")
    total = len(table)
    return TailReport(
        q=table.q,
        alphas=alphas,
        total=total,
        counts=counts,
        F_q=counts / total,
        comparisons=[tail_upper_shape(a) if a >= 3 else None for a in alphas],
    )


def tail_g(table: SweepTable, alphas: Sequence[float]) -> TailReport:
    """g_q(alpha) = #{chi != chi_0 : |S_half| >= (e^gamma/pi) alpha sqrt(q)} / (phi(q) - 1).

    Thresholds below ZERO_TOLERANCE are raised to it, so even characters
    (S_half = 0) never count.

    Raises:
        DomainError: If q is not prime
    """
    if not table.modulus.is_prime:
        raise DomainError(f"tail_g is defined for prime moduli, got q={table.q}")
    _require_complete(table)
    alphas = np.asarray(alphas, dtype=np.float64)
    ordered = np.sort(np.abs(table.S_half))
    scale = math.exp(config.EULER_GAMMA) / math.pi * math.sqrt(table.q)
    thresholds = np.maximum(scale * alphas, config.ZERO_TOLERANCE)
    counts = len(ordered) - np.searchsorted(ordered, thresholds, side="left")
    total = len(table)
    return TailReport(
        q=table.q,
        alphas=alphas,
        total=total,
        counts=counts,
        g_q=counts / total,
        comparisons=[corollary_shape(a) if a > 0 else None for a in alphas],
    )


def markov_tail_bound(table: SweepTable, alpha: float, k: int) -> Tuple[float, float]:
    """Observed 1 - F_q(alpha) and the Markov bound sum M^{2k} / (alpha^{2k} q^k (phi - 1))."""
    _require_complete(table)
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    q = table.q
    total = len(table)
    observed = float(np.count_nonzero(table.M > alpha * math.sqrt(q))) / total
    bound = math.fsum((table.M**2 / (alpha * alpha * q)) ** k) / total
    return observed, bound


def gn_breakdown(tables: Sequence[SweepTable], alpha: float) -> Dict[int, Tuple[int, int]]:
    """Per modulus: (#{M <= alpha sqrt(q)}, number of nonprincipal rows)."""
    breakdown: Dict[int, Tuple[int, int]] = {}
    for table in tables:
        _require_complete(table)
        if table.q in breakdown:
            raise DomainError(f"Modulus {table.q} appears twice")
        count = int(np.count_nonzero(table.M <= alpha * math.sqrt(table.q)))
        breakdown[table.q] = (count, len(table))
    return breakdown


def aggregate_GN(tables: Sequence[SweepTable], alpha: float, prime_only: bool = False) -> float:
    """Pooled fraction of characters with M <= alpha sqrt(q) over all q <= N.

    N is the largest modulus pooled. Without ``prime_only`` every q in [3, N]
    must be covered; with it only prime moduli are pooled and every prime in
    [3, N] must be present.

    Raises:
        CoverageGapError: If a required modulus is missing
    """
    if prime_only:
        tables = [t for t in tables if t.modulus.is_prime]
    if not tables:
        raise DomainError("aggregate_GN needs at least one table")
    breakdown = gn_breakdown(tables, alpha)
    N = max(breakdown)

    required = sympy.primerange(3, N + 1) if prime_only else range(3, N + 1)
    missing = [q for q in required if q not in breakdown]
    if missing:
        raise CoverageGapError(
            f"G_N for N={N} is missing {len(missing)} moduli, first {missing[:5]}"
        )

    count = sum(c for c, _ in breakdown.values())
    total = sum(t for _, t in breakdown.values())
    logger.info(
        "G_N(alpha=%g) over %d moduli up to %d: %d/%d", alpha, len(breakdown), N, count, total
    )
    return count / total
