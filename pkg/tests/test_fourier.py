import math

import numpy as np
import pytest

from charmax.arithmetic import Parity, character_from_index, is_primitive, unit_group
from charmax.charsums import (
    default_truncation,
    fourier_extremes,
    polya_expansion,
    polya_expansion_grid,
    prefix_extremes,
    prefix_sums,
)
from charmax.errors import DomainError


def test_default_truncation():
    assert default_truncation(101) == 47
    assert default_truncation(3) == 2
    assert default_truncation(100003) == math.ceil(math.sqrt(100003) * math.log(100003))


@pytest.mark.parametrize("q", [31, 101])
def test_full_expansion_tracks_prefix_sums(q, nonprincipal):
    ts = (np.arange(40) + 0.5) * q / 40
    floors = np.floor(ts).astype(np.int64)
    for chi in nonprincipal(q):
        values, certified = polya_expansion_grid(chi, ts, q)
        assert certified
        error = np.abs(values - prefix_sums(chi)[floors])
        assert error.max() <= 10 * math.log(q)


def test_truncated_expansion_is_not_certified():
    chi = character_from_index(unit_group(101), 7)
    value, certified = polya_expansion(chi, 33.5, 20)
    assert not certified
    assert np.isfinite(value.real)


def test_single_point_matches_grid():
    chi = character_from_index(unit_group(43), 5)
    grid, _ = polya_expansion_grid(chi, [10.25, 21.5], 43)
    single, _ = polya_expansion(chi, 21.5, 43)
    assert single == pytest.approx(grid[1])


def test_imprimitive_and_bad_truncation_rejected():
    g = unit_group(9)
    imprimitive = character_from_index(g, 3)
    assert not is_primitive(imprimitive)
    with pytest.raises(DomainError):
        polya_expansion(imprimitive, 2.5, 9)
    chi = character_from_index(unit_group(11), 1)
    for Z in (0, 12):
        with pytest.raises(DomainError):
            polya_expansion(chi, 2.5, Z)


def test_fourier_extremes_falls_back_for_imprimitive():
    chi = character_from_index(unit_group(9), 3)
    assert fourier_extremes(chi) == prefix_extremes(chi)


def test_fourier_extremes_with_full_truncation(nonprincipal):
    q = 101
    for chi in nonprincipal(q):
        exact = prefix_extremes(chi)
        approx = fourier_extremes(chi, Z=q)
        assert approx.parity is exact.parity
        assert approx.conductor == exact.conductor
        assert 1 <= approx.N <= q - 1
        assert abs(approx.M - exact.M) <= 10 * math.log(q)


def test_fourier_extremes_rejects_principal(characters):
    with pytest.raises(DomainError):
        fourier_extremes(characters(11)[0])


@pytest.mark.parametrize("t", [-0.5, 101.5, math.inf])
def test_points_outside_the_period_rejected(t):
    chi = character_from_index(unit_group(101), 7)
    with pytest.raises(DomainError):
        polya_expansion(chi, t, 47)
    with pytest.raises(DomainError):
        polya_expansion_grid(chi, [10.0, t], 47)


def test_period_endpoints_accepted():
    chi = character_from_index(unit_group(101), 7)
    values, _ = polya_expansion_grid(chi, [0.0, 101.0], 47)
    assert np.all(np.isfinite(values))


@pytest.mark.parametrize("Z", [None, 5, 101])
def test_fourier_extremes_keep_half_point_invariants(Z, nonprincipal):
    for chi in nonprincipal(101):
        row = fourier_extremes(chi, Z=Z)
        if row.parity is Parity.EVEN:
            assert row.S_half == 0
        assert abs(row.S_half) <= row.M
