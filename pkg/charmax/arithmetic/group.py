"""Structure of the unit group (Z/qZ)* with full discrete-logarithm tables."""

import functools
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import sympy

from charmax import config
from charmax.arithmetic.modulus import FactoredModulus, factorize
from charmax.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class UnitGroupStructure:
    """Decomposition of (Z/qZ)* into cyclic components.

    Components come from the prime power factors in ascending order; a factor
    2^e with e >= 3 contributes the two components generated by -1 and 5.

    Attributes:
        modulus: Factored modulus q
        components: (generator mod q, order) per cyclic component
        local_factor: index into ``modulus.factors`` owning each component
        dlog: int64 array of shape (q, r); row n holds the exponent tuple of n,
            or -1 in every column when gcd(n, q) > 1
        exponent: lcm of the component orders
    """

    modulus: FactoredModulus
    components: Tuple[Tuple[int, int], ...]
    local_factor: Tuple[int, ...]
    dlog: np.ndarray
    exponent: int

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(order for _, order in self.components)

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(g for g, _ in self.components)

    @functools.cached_property
    def unit_mask(self) -> np.ndarray:
        """Boolean mask of residues coprime to q."""
        if self.rank == 0:
            mask = np.gcd(np.arange(self.q), self.q) == 1
        else:
            mask = self.dlog[:, 0] >= 0
        mask.setflags(write=False)
        return mask

    @functools.cached_property
    def scaled_dlog(self) -> np.ndarray:
        """dlog columns multiplied by exponent / order_i (zero off the units)."""
        scales = np.array([self.exponent // order for order in self.orders], dtype=np.int64)
        scaled = np.where(self.dlog >= 0, self.dlog * scales, 0).astype(np.int64)
        scaled.setflags(write=False)
        return scaled

    def dlog_of(self, n: int) -> Tuple[int, ...]:
        """Exponent tuple of a residue coprime to q.

        Raises:
            DomainError: If gcd(n, q) > 1
        """
        n %= self.q
        if math.gcd(n, self.q) != 1:
            raise DomainError(f"{n} is not a unit modulo {self.q}")
        return tuple(int(x) for x in self.dlog[n])

    def element(self, exponents: Tuple[int, ...]) -> int:
        """Product of generator powers, reduced mod q."""
        value = 1 % self.q
        for (g, order), e in zip(self.components, exponents):
            value = value * pow(g, e % order, self.q) % self.q
        return value


def smallest_primitive_root(p: int, e: int) -> int:
    """Smallest primitive root modulo the odd prime power p^e."""
    pe = p**e
    phi = pe // p * (p - 1)
    cofactors = [phi // r for r in sympy.factorint(phi)]
    for g in range(2, pe):
        if g % p == 0:
            continue
        if all(pow(g, c, pe) != 1 for c in cofactors):
            return g
    raise DomainError(f"No primitive root modulo {pe}")  # unreachable for odd p


def _cyclic_log_table(g: int, order: int, modulus: int) -> np.ndarray:
    """Table log[x] with g^log[x] = x mod modulus, -1 off the subgroup."""
    table = np.full(modulus, -1, dtype=np.int64)
    x = 1
    for k in range(order):
        table[x] = k
        x = x * g % modulus
    return table


def _local_components(p: int, e: int) -> Tuple[List[Tuple[int, int]], np.ndarray]:
    """Generators, orders and a (p^e, r_local) log table for one prime power."""
    pe = p**e

    if p != 2:
        g = smallest_primitive_root(p, e)
        order = pe // p * (p - 1)
        return [(g, order)], _cyclic_log_table(g, order, pe)[:, None]

    if e == 1:
        return [], np.zeros((2, 0), dtype=np.int64)

    if e == 2:
        return [(3, 2)], _cyclic_log_table(3, 2, 4)[:, None]

    # (Z/2^eZ)* = <-1> x <5>
    order5 = 2 ** (e - 2)
    log5 = _cyclic_log_table(5, order5, pe)
    residues = np.arange(pe)
    odd = residues % 2 == 1
    sign = np.where(residues % 4 == 3, 1, 0)
    reduced = np.where(sign == 1, (pe - residues) % pe, residues)
    table = np.full((pe, 2), -1, dtype=np.int64)
    table[odd, 0] = sign[odd]
    table[odd, 1] = log5[reduced[odd]]
    return [(pe - 1, 2), (5, order5)], table


def _crt_lift(g: int, pe: int, q: int) -> int:
    """Integer congruent to g mod pe and to 1 mod q/pe."""
    cofactor = q // pe
    if cofactor == 1:
        return g % q
    return (1 + (g - 1) * cofactor * pow(cofactor, -1, pe)) % q


@functools.lru_cache(maxsize=32)
def build_unit_group(q: int) -> UnitGroupStructure:
    """Unit group for any q >= 1 (q = 1, 2 give the trivial group)."""
    modulus = factorize(q)
    residues = np.arange(q)

    components: List[Tuple[int, int]] = []
    local_factor: List[int] = []
    columns: List[np.ndarray] = []
    unit = np.ones(q, dtype=bool)

    for index, (p, e) in enumerate(modulus.factors):
        pe = p**e
        local, table = _local_components(p, e)
        unit &= residues % p != 0
        for column, (g, order) in enumerate(local):
            components.append((_crt_lift(g, pe, q), order))
            local_factor.append(index)
            columns.append(table[residues % pe, column])

    if columns:
        dlog = np.stack(columns, axis=1)
        dlog[~unit] = -1
    else:
        dlog = np.zeros((q, 0), dtype=np.int64)
    dlog.setflags(write=False)

    exponent = 1
    for _, order in components:
        exponent = exponent * order // math.gcd(exponent, order)

    logger.debug("Built unit group mod %d: components=%s exponent=%d", q, components, exponent)

    return UnitGroupStructure(
        modulus=modulus,
        components=tuple(components),
        local_factor=tuple(local_factor),
        dlog=dlog,
        exponent=exponent,
    )


def unit_group(q: int) -> UnitGroupStructure:
    """Construct (Z/qZ)* with generators, orders and discrete-log table.

    Args:
        q: Modulus, 3 <= q <= 2^40

    Returns:
        UnitGroupStructure (cached and shared; never mutate it)

    Raises:
        DomainError: If q < 3 or q exceeds the table limit
    """
    if isinstance(q, bool) or not isinstance(q, int) or q < 3:
        raise DomainError(f"Unit group requires an integer modulus q >= 3, got {q!r}")
    if q > config.MAX_GROUP_MODULUS:
        raise DomainError(f"Modulus {q} exceeds the table limit {config.MAX_GROUP_MODULUS}")
    return build_unit_group(q)
