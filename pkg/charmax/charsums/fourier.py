"""Truncated Polya Fourier expansion of S_chi(t) and the advisory FFT engine.

For primitive chi mod q,

    S_chi(t) = tau(chi)/(2 pi i) sum_{1 <= |n| <= Z} conj(chi(n))/n (1 - e(-nt/q)) + error,

with an O(log q) error once Z = q. Nothing here is certified for Z < q.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from charmax import config
from charmax.arithmetic import (
    DirichletCharacter,
    Parity,
    character_values,
    conductor_modulus,
    gauss_sum,
    is_primitive,
    parity,
)
from charmax.charsums.prefix import CharExtremes, prefix_extremes
from charmax.errors import DomainError

logger = logging.getLogger(__name__)


def default_truncation(q: int) -> int:
    """Z = ceil(sqrt(q) log q), capped at q."""
    return max(1, min(q, math.ceil(math.sqrt(q) * math.log(q))))


def _coefficients(chi: DirichletCharacter, Z: int) -> Tuple[np.ndarray, complex]:
    """conj(chi(n))/n for n = 1..Z, and conj(chi(-1))."""
    q = chi.q
    values = character_values(chi)
    n = np.arange(1, Z + 1)
    return np.conj(values[n % q]) / n, complex(np.conj(values[q - 1]))


def _check(chi: DirichletCharacter, Z: int) -> None:
    if not 1 <= Z <= chi.q:
        raise DomainError(f"Truncation Z must satisfy 1 <= Z <= q = {chi.q}, got {Z}")
    if not is_primitive(chi):
        raise DomainError(f"Polya expansion requires a primitive character, got {chi}")


def polya_expansion_grid(
    chi: DirichletCharacter, ts: Sequence[float], Z: int
) -> Tuple[np.ndarray, bool]:
    """Truncated expansion evaluated at every t in ``ts``.

    Returns:
        (values, certified) where certified means Z = q
    """
    _check(chi, Z)
    q = chi.q
    ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
    if ts.size and not (np.all(ts >= 0) and np.all(ts <= q)):
        raise DomainError(
            f"Expansion points must lie in [0, q = {q}], got {ts.min()}..{ts.max()}"
        )
    coeffs, sign = _coefficients(chi, Z)
    n = np.arange(1, Z + 1)
    prefactor = gauss_sum(chi) / (2j * np.pi)

    out = np.empty(len(ts), dtype=np.complex128)
    rows = max(1, config.BATCH_ELEMENTS // Z)
    for start in range(0, len(ts), rows):
        block = ts[start : start + rows, None]
        phase = np.exp(-2j * np.pi * n[None, :] * block / q)
        kernel = (1 - phase) - sign * (1 - np.conj(phase))
        out[start : start + rows] = prefactor * (kernel @ coeffs)

    return out, Z >= q


def polya_expansion(chi: DirichletCharacter, t: float, Z: int) -> Tuple[complex, bool]:
    """Truncated Polya expansion of S_chi(t) with truncation length Z.

    Args:
        chi: Primitive character mod q
        t: Point in [0, q]
        Z: Truncation length, 1 <= Z <= q

    Returns:
        (value, certified); certified is True only for Z = q

    Raises:
        DomainError: If chi is imprimitive, t lies outside [0, q] or Z is out of range
    """
    values, certified = polya_expansion_grid(chi, [t], Z)
    return complex(values[0]), certified


def fourier_extremes(chi: DirichletCharacter, Z: Optional[int] = None) -> CharExtremes:
    """Advisory extremes from the truncated expansion sampled on a 4Z-point grid.

    The grid values come from one FFT of the coefficient sequence. Imprimitive
    characters have no expansion of this form and fall back to the exact scan.
    """
    if chi.is_principal:
        raise DomainError(f"fourier_extremes needs a nonprincipal character, got {chi}")
    if not is_primitive(chi):
        logger.debug("Imprimitive %s: exact scan instead of expansion", chi)
        return prefix_extremes(chi)

    q = chi.q
    Z = default_truncation(q) if Z is None else Z
    _check(chi, Z)
    grid = config.FOURIER_GRID_FACTOR * Z

    coeffs, sign = _coefficients(chi, Z)
    c = np.zeros(grid, dtype=np.complex128)
    c[1 : Z + 1] = coeffs
    c[grid - Z :] += (-sign * coeffs)[::-1]

    prefactor = gauss_sum(chi) / (2j * np.pi)
    sampled = prefactor * (c.sum() - np.fft.fft(c))

    magnitudes = np.abs(sampled[1:])
    j = int(np.argmax(magnitudes)) + 1
    t = j * q / grid
    M = float(magnitudes[j - 1])
    N = int(min(max(1, math.floor(t)), q - 1))

    chi_parity = parity(chi)
    if chi_parity is Parity.EVEN:
        S_half = 0j
    else:
        S_half, _ = polya_expansion(chi, q // 2, Z)
        if abs(S_half) > M:
            M, N = abs(S_half), q // 2

    return CharExtremes(
        M=M,
        N=N,
        S_half=S_half,
        parity=chi_parity,
        conductor=conductor_modulus(chi),
    )

