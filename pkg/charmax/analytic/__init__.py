"""Special functions, divisor series, prime sums, L(1, chi) and main-term shapes."""

from charmax.analytic.divisors import (
    SeriesEstimate,
    divisor_square_series,
    dk,
    dk_table,
    halfpoint_limit_constant,
    local_factor_integral,
    local_factor_series,
    two_adic_factor,
)
from charmax.analytic.lfunction import LValue, halfpoint_from_l_one, l_one, l_one_exact
from charmax.analytic.primes import prime_sum, primes_below
from charmax.analytic.shapes import (
    SHAPES,
    MainTermShape,
    corollary_shape,
    interval_moment_shape,
    markov_k_choice,
    moment_lower_shape,
    moment_upper_shape,
    proposition_bound,
    rankin_inequality,
    rankin_sigma,
    tail_lower_shape,
    tail_shapes,
    tail_upper_shape,
    theorem2b_main,
)
from charmax.analytic.special import (
    QuadratureResult,
    a_adaptive,
    a_gauss_legendre,
    bessel_i0,
    cached_A,
    constant_A,
    integrand_A,
    log_bessel_i0,
)

__all__ = [
    "QuadratureResult",
    "bessel_i0",
    "log_bessel_i0",
    "integrand_A",
    "a_adaptive",
    "a_gauss_legendre",
    "constant_A",
    "cached_A",
    "primes_below",
    "prime_sum",
    "dk",
    "dk_table",
    "local_factor_series",
    "local_factor_integral",
    "SeriesEstimate",
    "divisor_square_series",
    "two_adic_factor",
    "halfpoint_limit_constant",
    "LValue",
    "l_one",
    "l_one_exact",
    "halfpoint_from_l_one",
    "SHAPES",
    "MainTermShape",
    "moment_upper_shape",
    "moment_lower_shape",
    "theorem2b_main",
    "corollary_shape",
    "tail_upper_shape",
    "tail_lower_shape",
    "tail_shapes",
    "interval_moment_shape",
    "proposition_bound",
    "rankin_sigma",
    "rankin_inequality",
    "markov_k_choice",
]
