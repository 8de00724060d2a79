import math

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import special

from charmax import config
from charmax.analytic import (
    a_adaptive,
    a_gauss_legendre,
    bessel_i0,
    constant_A,
    divisor_square_series,
    dk,
    dk_table,
    halfpoint_from_l_one,
    halfpoint_limit_constant,
    integrand_A,
    l_one,
    l_one_exact,
    local_factor_integral,
    local_factor_series,
    log_bessel_i0,
    prime_sum,
    primes_below,
    two_adic_factor,
)
from charmax.arithmetic import (
    Parity,
    character_from_index,
    enumerate_characters,
    is_primitive,
    order,
    parity,
    unit_group,
)
from charmax.charsums import half_point_sum
from charmax.errors import BudgetExceededError, DomainError


class TestBessel:
    @pytest.mark.parametrize("t", [0.0, 1e-6, 0.3, 1.0, 2.0, 7.5, 30.0, 150.0])
    def test_matches_scipy(self, t):
        assert bessel_i0(t) == pytest.approx(special.i0(t), rel=1e-13)
        assert bessel_i0(-t) == bessel_i0(t)

    def test_log_is_accurate_near_zero(self):
        t = 1e-5
        assert log_bessel_i0(t) == pytest.approx(t * t / 4, rel=1e-9)
        assert log_bessel_i0(0.0) == 0.0

    def test_overflow_guard(self):
        with pytest.raises(DomainError):
            bessel_i0(701.0)
        with pytest.raises(DomainError):
            log_bessel_i0(-800.0)


class TestConstantA:
    def test_integrand_limit(self):
        assert integrand_A(0.0) == 0.25
        assert integrand_A(1e-4) == pytest.approx(0.25, abs=1e-8)
        below = integrand_A(config.A_SERIES_CUTOFF * 0.999)
        above = integrand_A(config.A_SERIES_CUTOFF * 1.001)
        assert below == pytest.approx(above, abs=1e-9)

    def test_schemes_agree(self):
        adaptive = a_adaptive(1e-11)
        fixed = a_gauss_legendre()
        assert abs(adaptive.value - fixed.value) < 1e-10
        assert fixed.est_error < 1e-10

    def test_value(self):
        A = constant_A()
        assert 0.45 < A.value < 0.48
        assert A.est_error < 1e-10
        assert A.scheme == "adaptive+gauss-legendre"

    @pytest.mark.parametrize("panels", [1, 2, 4, 8])
    def test_gauss_legendre_stable_under_refinement(self, panels):
        coarse = a_gauss_legendre(panels=panels)
        fine = a_gauss_legendre(panels=2 * panels)
        assert abs(fine.value - coarse.value) <= 1e-12
        assert abs(fine.value - a_adaptive().value) <= 1e-10

    def test_tolerance_floor(self):
        with pytest.raises(DomainError):
            constant_A(1e-13)


class TestDivisors:
    def test_dk(self):
        assert dk(1, 5) == 1
        assert dk(12, 2) == 6
        assert dk(12, 3) == 18
        with pytest.raises(DomainError):
            dk(0, 2)

    @given(
        st.integers(min_value=1, max_value=10**5),
        st.integers(min_value=1, max_value=10**5),
        st.integers(min_value=1, max_value=8),
    )
    @settings(max_examples=300, deadline=None)
    def test_dk_multiplicative(self, m, n, k):
        assume(math.gcd(m, n) == 1)
        assert dk(m * n, k) == dk(m, k) * dk(n, k)

    def test_dk_multiplicative_on_random_pairs(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 10**4:
            m, n = (int(x) for x in rng.integers(1, 10**4, size=2))
            if math.gcd(m, n) != 1:
                continue
            k = int(rng.integers(1, 9))
            assert dk(m * n, k) == dk(m, k) * dk(n, k)
            checked += 1

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_table_matches_dk(self, k):
        table = dk_table(60, k)
        assert [int(x) for x in table[1:]] == [dk(n, k) for n in range(1, 61)]

    def test_divisor_count(self):
        table = dk_table(100, 2)
        assert [int(x) for x in table[1:]] == [int(sympy.divisor_count(n)) for n in range(1, 101)]

    def test_local_factor_anchor(self):
        assert local_factor_series(3, 2, 1.0) == pytest.approx(1.58203125, rel=1e-12)
        assert local_factor_series(7, 0, 0.8) == 1.0

    @pytest.mark.parametrize("p", [2, 3, 13])
    @pytest.mark.parametrize("k", [1, 2, 5])
    @pytest.mark.parametrize("sigma", [0.6, 1.0])
    def test_series_equals_integral(self, p, k, sigma):
        series = local_factor_series(p, k, sigma)
        integral = local_factor_integral(p, k, sigma).value
        assert series == pytest.approx(integral, rel=1e-9)

    def test_sigma_must_exceed_half(self):
        with pytest.raises(DomainError):
            local_factor_series(3, 2, 0.5)
        with pytest.raises(DomainError):
            divisor_square_series(2, 0.4)

    def test_zeta_identities(self):
        assert divisor_square_series(1, 1.0).value == pytest.approx(math.pi**2 / 6, rel=1e-9)
        two = divisor_square_series(2, 1.0)
        assert two.value == pytest.approx(5 * math.pi**4 / 72, rel=1e-9)
        assert two.tail_bound <= 1e-10 * two.value

    @given(
        st.integers(min_value=1, max_value=4),
        st.floats(min_value=0.8, max_value=0.98),
        st.floats(min_value=0.01, max_value=0.2),
    )
    @settings(max_examples=40, deadline=None)
    def test_series_decreases_in_sigma_and_increases_in_k(self, k, sigma, step):
        upper = min(1.0, sigma + step)
        here = divisor_square_series(k, sigma, 1e-8).value
        assert divisor_square_series(k, upper, 1e-8).value < here
        assert divisor_square_series(k + 1, sigma, 1e-8).value > here

    def test_two_adic_factor(self):
        assert two_adic_factor(1) == pytest.approx(4 / 3, rel=1e-12)

    def test_halfpoint_limit_at_k_one(self):
        assert halfpoint_limit_constant(1) == pytest.approx(0.25, abs=1e-9)

    def test_halfpoint_limit_at_k_two(self):
        # (8/pi^4) (5 pi^4/72) / two_adic_factor(2), with two_adic_factor(2) = 80/27
        assert halfpoint_limit_constant(2) == pytest.approx(3 / 16, rel=1e-9)


class TestPrimes:
    def test_prime_sum_small(self):
        assert prime_sum(10, 1.0) == pytest.approx(1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, rel=1e-15)
        assert prime_sum(2, 1.0) == 0.0
        assert prime_sum(3, 1.0) == 0.5

    def test_prime_sum_domain(self):
        with pytest.raises(DomainError):
            prime_sum(1.5, 1.0)

    def test_sieve_budget(self, monkeypatch):
        monkeypatch.setattr(config, "PRIME_SIEVE_LIMIT", 1000)
        with pytest.raises(BudgetExceededError):
            primes_below(10**4)

    def test_segments_join_cleanly(self, monkeypatch):
        monkeypatch.setattr(config, "PRIME_SEGMENT", 7)
        assert primes_below(200).tolist() == list(sympy.primerange(2, 200))

    @given(st.integers(min_value=2, max_value=5000))
    @settings(max_examples=50, deadline=None)
    def test_primes_below_matches_sympy(self, x):
        assert primes_below(x).tolist() == list(sympy.primerange(2, x))


class TestLFunction:
    def test_quadratic_mod_three(self):
        chi = character_from_index(unit_group(3), 1)
        exact = math.pi / (3 * math.sqrt(3))
        value = l_one(chi, 1e-8)
        assert abs(value.value - exact) <= value.tail_bound + 1e-12
        assert l_one_exact(chi) == pytest.approx(exact, rel=1e-12)

    def test_principal_rejected(self):
        with pytest.raises(DomainError):
            l_one(character_from_index(unit_group(7), 0))
        with pytest.raises(DomainError):
            l_one(character_from_index(unit_group(7), 1), tol=0)

    @pytest.mark.parametrize("q", [7, 20, 45])
    def test_truncated_and_exact_agree(self, q, nonprincipal):
        for chi in nonprincipal(q):
            value = l_one(chi, 1e-9)
            assert abs(value.value - l_one_exact(chi)) <= value.tail_bound + 1e-10

    def test_ten_fold_truncation_within_tail_bounds(self):
        checked = 0
        for q in range(3, 102):
            for chi in enumerate_characters(unit_group(q)):
                if order(chi) != 2:
                    continue
                short = l_one(chi, 1e-6)
                long = l_one(chi, 1e-7)
                assert long.terms >= 10 * short.terms - 10
                assert abs(short.value - long.value) <= short.tail_bound + long.tail_bound
                checked += 1
        assert checked > 100

    @pytest.mark.parametrize("q", [7, 11, 13, 29])
    def test_half_point_relation(self, q, nonprincipal):
        for chi in nonprincipal(q):
            if parity(chi) is not Parity.ODD or not is_primitive(chi):
                continue
            relation = halfpoint_from_l_one(chi, 1e-9)
            direct = half_point_sum(chi)
            assert abs(direct - relation.value) <= relation.tail_bound + 1e-9

    def test_lower_bound_on_nonvanishing(self, nonprincipal):
        magnitudes = [abs(l_one_exact(chi)) for chi in nonprincipal(101)]
        assert min(magnitudes) > 0.05
        assert np.isfinite(magnitudes).all()
