"""Dirichlet characters as exponent tuples against the unit-group generators.

A character is fixed by its values on the generators, chi(g_i) = e(x_i / order_i).
Values are kept as exact fractions of a turn and rendered to complex numbers only
when vectors of values are accumulated.
"""

import cmath
import enum
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
import sympy

from charmax.arithmetic.group import UnitGroupStructure, build_unit_group
from charmax.errors import DomainError


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class RootOfUnityOrZero:
    """Either 0 or e(num/den) = exp(2 pi i num/den) with 0 <= num < den, gcd = 1."""

    is_zero: bool
    num: int = 0
    den: int = 1

    @classmethod
    def zero(cls) -> "RootOfUnityOrZero":
        return cls(is_zero=True)

    @classmethod
    def from_turns(cls, turns: Fraction) -> "RootOfUnityOrZero":
        turns = turns % 1
        return cls(is_zero=False, num=turns.numerator, den=turns.denominator)

    @property
    def turns(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other: "RootOfUnityOrZero") -> "RootOfUnityOrZero":
        if self.is_zero or other.is_zero:
            return RootOfUnityOrZero.zero()
        return RootOfUnityOrZero.from_turns(self.turns + other.turns)

    def conjugate(self) -> "RootOfUnityOrZero":
        if self.is_zero:
            return self
        return RootOfUnityOrZero.from_turns(-self.turns)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        exact = {(0, 1): 1 + 0j, (1, 2): -1 + 0j, (1, 4): 1j, (3, 4): -1j}
        if (self.num, self.den) in exact:
            return exact[(self.num, self.den)]
        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def __complex__(self) -> complex:
        return self.to_complex()


@dataclass(frozen=True)
class DirichletCharacter:
    """A character modulo q, given by exponents against the group generators."""

    group: UnitGroupStructure
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.group.rank:
            raise DomainError(
                f"Character mod {self.group.q} needs {self.group.rank} exponents, "
                f"got {len(self.exponents)}"
            )
        reduced = tuple(int(x) % order for x, order in zip(self.exponents, self.group.orders))
        object.__setattr__(self, "exponents", reduced)

    @property
    def q(self) -> int:
        return self.group.q

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    def __call__(self, n: int) -> RootOfUnityOrZero:
        return char_eval(self, n)

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.q}, exponents={self.exponents})"


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_characters(g: UnitGroupStructure) -> List[DirichletCharacter]:
    """All phi(q) characters, lexicographic in their exponent tuples (chi_0 first)."""
    return [
        DirichletCharacter(g, exps) for exps in itertools.product(*(range(o) for o in g.orders))
    ]


def character_from_index(g: UnitGroupStructure, index: int) -> DirichletCharacter:
    """The character at position ``index`` of enumerate_characters(g)."""
    if not 0 <= index < g.modulus.phi:
        raise DomainError(f"Character index {index} out of range [0, {g.modulus.phi})")
    digits = []
    for order in reversed(g.orders):
        index, digit = divmod(index, order)
        digits.append(digit)
    return DirichletCharacter(g, tuple(reversed(digits)))


def character_index(chi: DirichletCharacter) -> int:
    """Inverse of character_from_index."""
    index = 0
    for x, order in zip(chi.exponents, chi.group.orders):
        index = index * order + x
    return index


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _exponent_index(chi: DirichletCharacter, n: int) -> int:
    """Exponent index k with chi(n) = e(k / E); -1 when gcd(n, q) > 1."""
    g = chi.group
    n %= g.q
    if not g.unit_mask[n]:
        return -1
    return int(sum(int(s) * x for s, x in zip(g.scaled_dlog[n], chi.exponents)) % g.exponent)


def char_eval(chi: DirichletCharacter, n: int) -> RootOfUnityOrZero:
    """Exact value chi(n)."""
    k = _exponent_index(chi, n)
    if k < 0:
        return RootOfUnityOrZero.zero()
    return RootOfUnityOrZero.from_turns(Fraction(k, chi.group.exponent))


@functools.lru_cache(maxsize=256)
def character_exponents(chi: DirichletCharacter) -> np.ndarray:
    """Exponent indices k(n) with chi(n) = e(k(n)/E) for n = 0..q-1; -1 off the units."""
    g = chi.group
    exps = np.array(chi.exponents, dtype=np.int64)
    idx = (g.scaled_dlog @ exps) % g.exponent if g.rank else np.zeros(g.q, dtype=np.int64)
    idx = np.where(g.unit_mask, idx, -1)
    idx.setflags(write=False)
    return idx


@functools.lru_cache(maxsize=64)
def root_table(exponent: int) -> np.ndarray:
    """e(k / exponent) for k = 0..exponent-1, with roots[E-k] == conj(roots[k]) bitwise."""
    roots = np.exp(2j * np.pi * np.arange(exponent) / exponent)
    upper = np.arange(exponent // 2 + 1, exponent)
    roots[upper] = np.conj(roots[exponent - upper])
    roots.setflags(write=False)
    return roots


def character_values(chi: DirichletCharacter) -> np.ndarray:
    """Complex vector of chi(n) for n = 0..q-1."""
    idx = character_exponents(chi)
    roots = root_table(chi.group.exponent)
    return np.where(idx >= 0, roots[np.maximum(idx, 0)], 0j)


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    return DirichletCharacter(chi.group, tuple(-x for x in chi.exponents))


def order(chi: DirichletCharacter) -> int:
    """Multiplicative order of chi."""
    result = 1
    for x, o in zip(chi.exponents, chi.group.orders):
        local = o // math.gcd(o, x)
        result = result * local // math.gcd(result, local)
    return result


def parity(chi: DirichletCharacter) -> Parity:
    """EVEN iff chi(-1) = 1."""
    k = _exponent_index(chi, -1)
    return Parity.EVEN if k == 0 else Parity.ODD


# ---------------------------------------------------------------------------
# Conductor and primitive character
# ---------------------------------------------------------------------------


def _p_adic_valuation(values: np.ndarray, p: int) -> np.ndarray:
    values = values.copy()
    valuation = np.zeros_like(values)
    while True:
        divisible = (values % p == 0) & (values > 0)
        if not divisible.any():
            return valuation
        valuation += divisible
        values = np.where(divisible, values // p, values)


def conductor_moduli(g: UnitGroupStructure, exponents: np.ndarray) -> np.ndarray:
    """Conductors of many characters at once.

    Args:
        g: Unit group modulo q
        exponents: int array of shape (n, rank), one exponent tuple per row

    Returns:
        int64 array of n conductors
    """
    exponents = np.asarray(exponents, dtype=np.int64).reshape(-1, g.rank)
    conductors = np.ones(len(exponents), dtype=np.int64)
    columns = {index: [] for index in range(len(g.modulus.factors))}
    for column, owner in enumerate(g.local_factor):
        columns[owner].append(column)

    for index, (p, e) in enumerate(g.modulus.factors):
        cols = columns[index]
        if not cols:
            continue
        x = exponents[:, cols[-1]] % g.orders[cols[-1]]
        o = g.orders[cols[-1]]
        local_order = o // np.gcd(x, o)

        if p != 2:
            c = np.where(x == 0, 0, _p_adic_valuation(local_order, p) + 1)
        elif e == 2:
            c = np.where(x == 0, 0, 2)
        else:
            sign = exponents[:, cols[0]] % 2
            log2_order5 = _p_adic_valuation(local_order, 2)
            c = np.where(x == 0, np.where(sign == 0, 0, 2), 2 + log2_order5)

        conductors *= np.power(p, c).astype(np.int64)

    return conductors


def conductor_modulus(chi: DirichletCharacter) -> int:
    """Conductor f of chi without building chi*."""
    if chi.group.rank == 0:
        return 1
    return int(conductor_moduli(chi.group, np.array([chi.exponents]))[0])


def conductor(chi: DirichletCharacter) -> Tuple[int, DirichletCharacter]:
    """Conductor f and the primitive character chi* mod f inducing chi.

    Returns:
        (f, chi_star) with chi(n) = chi_star(n) for every n coprime to q
    """
    g = chi.group
    f = conductor_modulus(chi)

    if f == g.q:
        return f, chi

    target = build_unit_group(f)
    exponents = []
    for generator, gen_order in target.components:
        n = generator
        while math.gcd(n, g.q) != 1:
            n += f
        k = _exponent_index(chi, n)
        x = Fraction(k, g.exponent) * gen_order
        if x.denominator != 1:
            raise DomainError(f"Character {chi} is not induced from modulus {f}")
        exponents.append(int(x))

    return f, DirichletCharacter(target, tuple(exponents))


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor_modulus(chi) == chi.q


# ---------------------------------------------------------------------------
# Gauss sums and exact sums
# ---------------------------------------------------------------------------


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{n <= q} chi(n) e(n/q), by direct summation."""
    q = chi.q
    twist = np.exp(2j * np.pi * np.arange(q) / q)
    return complex(np.sum(character_values(chi) * twist))


def exact_character_sum(chi: DirichletCharacter, lo: int, hi: int) -> np.ndarray:
    """Sum of chi(n) over lo < n <= hi as counts c_k of each root e(k/E).

    The sum equals sum_k c_k e(k/E) exactly.
    """
    idx = character_exponents(chi)
    n = np.arange(lo + 1, hi + 1) % chi.q
    ks = idx[n]
    return np.bincount(ks[ks >= 0], minlength=chi.group.exponent).astype(np.int64)


def cyclotomic_is_zero(counts: np.ndarray) -> bool:
    """Whether sum_k counts[k] e(k/E) vanishes, with E = len(counts).

    Exact: reduces the polynomial sum_k counts[k] x^k modulo Phi_E(x).
    """
    E = len(counts)
    if not np.any(counts):
        return True
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in reversed(counts)], x)
    remainder = poly.rem(sympy.Poly(sympy.cyclotomic_poly(E, x), x))
    return remainder.is_zero
