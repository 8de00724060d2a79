from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charmax.arithmetic import character_from_index, exact_character_sum, root_table, unit_group
from charmax.charsums import (
    block_sums,
    dyadic_family_moment,
    dyadic_path,
    dyadic_reconstruct,
    holder_block_bound,
    prefix_sums,
)
from charmax.errors import DomainError

PRIMES = [11, 101, 1009]


def test_path_for_three_eighths():
    path = dyadic_path(3, 8, 3)
    assert path.bits == (0, 1, 1)
    assert path.cut_points == (Fraction(0), Fraction(0), Fraction(1, 4), Fraction(3, 8))
    assert path.blocks == [(0, 0), (0, 2), (2, 3)]
    assert path.truncation == 3


@pytest.mark.parametrize("N, q, L", [(0, 11, 3), (11, 11, 3), (5, 11, 0)])
def test_path_domain(N, q, L):
    with pytest.raises(DomainError):
        dyadic_path(N, q, L)


@given(st.sampled_from(PRIMES), st.data())
@settings(max_examples=60, deadline=None)
def test_reconstruction_is_exact(q, data):
    g = unit_group(q)
    chi = character_from_index(g, data.draw(st.integers(1, g.modulus.phi - 1)))
    N = data.draw(st.integers(1, q - 1))
    L = data.draw(st.integers(1, 20))
    path = dyadic_path(N, q, L)

    blocksum, gap = dyadic_reconstruct(chi, path)
    counts = exact_character_sum(chi, 0, path.truncation)
    assert blocksum == complex(np.dot(counts, root_table(g.exponent)))
    assert 0 <= gap < q / 2**L + 1
    assert abs(prefix_sums(chi)[N] - blocksum) <= gap + 1e-9


def test_reconstruct_rejects_other_modulus():
    chi = character_from_index(unit_group(11), 1)
    with pytest.raises(DomainError):
        dyadic_reconstruct(chi, dyadic_path(3, 13, 4))


@pytest.mark.parametrize("k", [1.0, 1.5, 2.0, 3.0])
@pytest.mark.parametrize("a", [0.5, 1.0])
def test_holder_step(k, a):
    g = unit_group(1009)
    for index in (1, 17, 500):
        chi = character_from_index(g, index)
        for N in (1, 333, 1008):
            lhs, rhs = holder_block_bound(chi, dyadic_path(N, 1009, 12), k, a)
            assert lhs <= rhs * (1 + 1e-12) + 1e-12


def test_holder_needs_k_above_half():
    chi = character_from_index(unit_group(11), 1)
    with pytest.raises(DomainError):
        holder_block_bound(chi, dyadic_path(3, 11, 2), 0.5, 1.0)


def test_blocks_belong_to_family():
    q = 1009
    chi = character_from_index(unit_group(q), 42)
    for k in (1.0, 2.0):
        family = dyadic_family_moment(chi, 10, k)
        for N in (1, 100, 504, 777, 1008):
            x = block_sums(chi, dyadic_path(N, q, 10))
            assert np.sum(np.abs(x) ** (2 * k)) <= family * (1 + 1e-12)


def test_family_depth_limits():
    chi = character_from_index(unit_group(11), 1)
    with pytest.raises(DomainError):
        dyadic_family_moment(chi, 0, 1.0)
    with pytest.raises(DomainError):
        dyadic_family_moment(chi, 25, 1.0)
