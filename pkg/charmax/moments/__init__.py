"""Moment and tail statistics over sweep tables, and the b(n) coefficient oracle."""

from charmax.moments.coefficients import (
    BCoefficients,
    b_oracle,
    interval_orthogonality_check,
    orthogonality_check,
)
from charmax.moments.statistics import (
    STATISTICS,
    MomentReport,
    TailReport,
    aggregate_GN,
    empirical_moment,
    gn_breakdown,
    markov_tail_bound,
    tail_F,
    tail_g,
)

__all__ = [
    "BCoefficients",
    "b_oracle",
    "orthogonality_check",
    "interval_orthogonality_check",
    "STATISTICS",
    "MomentReport",
    "TailReport",
    "empirical_moment",
    "tail_F",
    "tail_g",
    "markov_tail_bound",
    "gn_breakdown",
    "aggregate_GN",
]
