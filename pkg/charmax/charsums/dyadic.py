"""Binary (Rademacher-Menchov) decomposition of a prefix [1, N].

N/q is truncated to L binary digits, A(L) = sum_{j <= L} a_j / 2^j, and the prefix
(0, floor(q A(L))] is split into the L blocks (floor(q A(l)), floor(q A(l+1))].
Block l is empty when a_{l+1} = 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from charmax.arithmetic import DirichletCharacter, exact_character_sum, root_table
from charmax.charsums.prefix import prefix_sums
from charmax.errors import DomainError

MAX_FAMILY_DEPTH = 24


@dataclass(frozen=True)
class DyadicPath:
    """Binary truncation of N/q to depth L.

    Attributes:
        N: Endpoint of the prefix being decomposed
        q: Modulus
        L: Depth
        bits: a_1, ..., a_L
        cut_points: A(0) = 0, A(1), ..., A(L)
    """

    N: int
    q: int
    L: int
    bits: Tuple[int, ...]
    cut_points: Tuple[Fraction, ...]

    @property
    def blocks(self) -> List[Tuple[int, int]]:
        """Integer blocks (lo, hi] for l = 0..L-1."""
        ends = [int(a * self.q) for a in self.cut_points]
        return list(zip(ends[:-1], ends[1:]))

    @property
    def truncation(self) -> int:
        """floor(q A(L))."""
        return int(self.cut_points[-1] * self.q)


def dyadic_path(N: int, q: int, L: int) -> DyadicPath:
    """Binary digits of N/q and the partial sums A(l).

    Raises:
        DomainError: Unless 1 <= N < q and L >= 1
    """
    if not 1 <= N < q:
        raise DomainError(f"Need 1 <= N < q, got N={N}, q={q}")
    if L < 1:
        raise DomainError(f"Depth L must be >= 1, got {L}")

    bits = tuple((N << j) // q % 2 for j in range(1, L + 1))
    cuts = [Fraction(0)]
    for j, a in enumerate(bits, start=1):
        cuts.append(cuts[-1] + Fraction(a, 2**j))

    return DyadicPath(N=N, q=q, L=L, bits=bits, cut_points=tuple(cuts))


def _render(counts: np.ndarray) -> complex:
    return complex(np.dot(counts, root_table(len(counts))))


def dyadic_reconstruct(chi: DirichletCharacter, path: DyadicPath) -> Tuple[complex, int]:
    """Block sums of the path and the gap left by the truncation.

    Block sums are accumulated exactly as root-of-unity counts, so the result is
    bit-identical to S_chi(floor(q A(L))) rendered from its own counts.

    Returns:
        (blocksum, gap) with gap = N - floor(q A(L))
    """
    if path.q != chi.q:
        raise DomainError(f"Path for modulus {path.q} used with a character mod {chi.q}")

    counts = np.zeros(chi.group.exponent, dtype=np.int64)
    for lo, hi in path.blocks:
        if hi > lo:
            counts += exact_character_sum(chi, lo, hi)

    return _render(counts), path.N - path.truncation


def block_sums(chi: DirichletCharacter, path: DyadicPath) -> np.ndarray:
    """x_l for l = 1..L, the sum over block l-1 of the path."""
    sums = prefix_sums(chi)
    return np.array([sums[hi] - sums[lo] for lo, hi in path.blocks], dtype=np.complex128)


def holder_block_bound(
    chi: DirichletCharacter, path: DyadicPath, k: float, a: float
) -> Tuple[float, float]:
    """Both sides of the weighted Holder step over the path blocks.

        |sum_l x_l|^{2k} <= (sum_l l^{-2ka/(2k-1)})^{2k-1} sum_l l^{2ka} |x_l|^{2k}

    Returns:
        (lhs, rhs)
    """
    if k <= 0.5:
        raise DomainError(f"Holder step needs k > 1/2, got {k}")
    x = block_sums(chi, path)
    l = np.arange(1, path.L + 1, dtype=np.float64)

    lhs = abs(x.sum()) ** (2 * k)
    weights = np.sum(l ** (-2 * k * a / (2 * k - 1))) ** (2 * k - 1)
    rhs = weights * np.sum(l ** (2 * k * a) * np.abs(x) ** (2 * k))
    return float(lhs), float(rhs)


def dyadic_family_moment(chi: DirichletCharacter, L: int, k: float) -> float:
    """sum over 0 <= l < L, 0 <= m < 2^l of |S over (qm/2^l, q(m/2^l + 2^-(l+1))]|^{2k}.

    Every block of every depth-L path is a member of this family.
    """
    if not 1 <= L <= MAX_FAMILY_DEPTH:
        raise DomainError(f"Family depth must be in [1, {MAX_FAMILY_DEPTH}], got {L}")
    q = chi.q
    sums = prefix_sums(chi)
    total = 0.0
    for l in range(L):
        m = np.arange(2**l, dtype=np.int64)
        lo = (q * m) >> l
        hi = (q * (2 * m + 1)) >> (l + 1)
        total += float(np.sum(np.abs(sums[hi] - sums[lo]) ** (2 * k)))
    return total
