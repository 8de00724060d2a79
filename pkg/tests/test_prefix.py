import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charmax.arithmetic import (
    Parity,
    character_from_index,
    conductor_modulus,
    conjugate,
    unit_group,
)
from charmax.charsums import (
    fraction_point_sum,
    half_point_sum,
    interval_sum,
    prefix_extremes,
    prefix_sums,
    primitive_reduction,
)
from charmax.charsums.prefix import argmax_tolerance
from charmax.errors import DomainError


def test_mod_five_maxima(nonprincipal):
    rows = [prefix_extremes(chi) for chi in nonprincipal(5)]
    assert sorted(r.M for r in rows) == pytest.approx([1.0, math.sqrt(2), math.sqrt(2)])
    quadratic = prefix_extremes(character_from_index(unit_group(5), 2))
    assert quadratic.N == 1
    assert quadratic.parity is Parity.EVEN
    odd = prefix_extremes(character_from_index(unit_group(5), 1))
    assert odd.N == 2
    assert odd.S_half == pytest.approx(1 + 1j)


def test_principal_rejected(characters):
    with pytest.raises(DomainError):
        prefix_extremes(characters(7)[0])


@pytest.mark.parametrize("q", [11, 12, 27, 40])
def test_prefix_sums_close_the_period(q, nonprincipal):
    for chi in nonprincipal(q):
        sums = prefix_sums(chi)
        assert len(sums) == q + 1
        assert sums[0] == 0
        assert abs(sums[q]) < 1e-9


@pytest.mark.parametrize("q", [11, 13, 101])
def test_even_half_point_sums_vanish(q, nonprincipal):
    for chi in nonprincipal(q):
        row = prefix_extremes(chi)
        assert row.conductor == conductor_modulus(chi)
        if row.parity is Parity.EVEN:
            assert abs(row.S_half) < 1e-9
        else:
            assert abs(row.S_half) > 0.1


@given(st.integers(min_value=3, max_value=200), st.data())
@settings(max_examples=80, deadline=None)
def test_conjugate_has_the_same_extremes(q, data):
    g = unit_group(q)
    chi = character_from_index(g, data.draw(st.integers(1, g.modulus.phi - 1)))
    row, mirrored = prefix_extremes(chi), prefix_extremes(conjugate(chi))
    assert mirrored.M == row.M
    assert mirrored.N == row.N
    assert mirrored.parity is row.parity
    assert mirrored.conductor == row.conductor
    assert mirrored.S_half == pytest.approx(row.S_half.conjugate(), abs=1e-12)


def test_argmax_is_smallest(nonprincipal):
    for chi in nonprincipal(23):
        row = prefix_extremes(chi)
        magnitudes = np.abs(prefix_sums(chi))
        assert magnitudes[row.N] == pytest.approx(row.M)
        assert np.all(magnitudes[1 : row.N] < row.M - argmax_tolerance(23))


class TestIntervals:
    def test_full_and_empty(self):
        chi = character_from_index(unit_group(19), 3)
        assert interval_sum(chi, 0, 1) == pytest.approx(0, abs=1e-9)
        assert interval_sum(chi, 0.3, 0.3) == 0

    def test_half_point(self):
        chi = character_from_index(unit_group(19), 3)
        assert interval_sum(chi, 0, Fraction(1, 2)) == pytest.approx(half_point_sum(chi))
        assert fraction_point_sum(chi, 0.5) == pytest.approx(half_point_sum(chi))

    @pytest.mark.parametrize("alpha, beta", [(0.5, 0.25), (-0.1, 0.5), (0.2, 1.5)])
    def test_domain(self, alpha, beta):
        chi = character_from_index(unit_group(19), 3)
        with pytest.raises(DomainError):
            interval_sum(chi, alpha, beta)

    def test_exact_rational_endpoints(self):
        chi = character_from_index(unit_group(30), 1)
        sums = prefix_sums(chi)
        got = interval_sum(chi, Fraction(7, 30), Fraction(23, 30))
        assert got == pytest.approx(sums[23] - sums[7])

    @pytest.mark.parametrize("q", [12, 45, 60, 63])
    def test_primitive_reduction_matches_direct_sum(self, q, nonprincipal):
        for chi in nonprincipal(q):
            for alpha, beta in [(0, Fraction(1, 2)), (Fraction(1, 3), Fraction(5, 6)), (0.1, 0.9)]:
                assert primitive_reduction(chi, alpha, beta) == pytest.approx(
                    interval_sum(chi, alpha, beta), abs=1e-9
                )
