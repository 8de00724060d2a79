"""L(1, chi) by certified truncation, and the half-point relation for odd characters."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from charmax import config
from charmax.arithmetic import DirichletCharacter, character_values, conjugate, gauss_sum
from charmax.errors import DomainError, ToleranceUnreachableError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LValue:
    """A truncated L-series value.

    Attributes:
        value: sum_{n <= terms} chi(n)/n
        tail_bound: Certified bound on |L(1, chi) - value|
        terms: Truncation point T
    """

    value: complex
    tail_bound: float
    terms: int


def _check_nonprincipal(chi: DirichletCharacter) -> None:
    if chi.is_principal:
        raise DomainError(f"L(1, chi) diverges for the principal character {chi}")


def l_one(chi: DirichletCharacter, tol: float = 1e-10) -> LValue:
    """sum_{n <= T} chi(n)/n with T = ceil(q/tol).

    Partial sums of chi over any interval are at most q in modulus, so Abel
    summation bounds the tail by q/T <= tol. The truncated sum itself is
    evaluated exactly per residue class through the digamma function:

        sum_{m=0}^{M} 1/(a + mq) = (psi(a/q + M + 1) - psi(a/q)) / q

    Raises:
        DomainError: If chi is principal or tol <= 0
        ToleranceUnreachableError: If T would exceed L_ONE_MAX_TERMS
    """
    _check_nonprincipal(chi)
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")

    q = chi.q
    T = math.ceil(q / tol)
    if T > config.L_ONE_MAX_TERMS:
        raise ToleranceUnreachableError(
            f"L(1, chi) mod {q} to tol={tol} needs {T} terms > {config.L_ONE_MAX_TERMS}"
        )

    values = character_values(chi)
    a = np.arange(1, q)
    M = (T - a) // q
    shift = a / q
    blocks = (special.digamma(shift + M + 1) - special.digamma(shift)) / q
    value = complex(np.sum(values[1:] * blocks))

    logger.debug("l_one mod %d: T=%d tail<=%.3g", q, T, q / T)
    return LValue(value=value, tail_bound=q / T, terms=T)


def l_one_exact(chi: DirichletCharacter) -> complex:
    """L(1, chi) = -(1/q) sum_a chi(a) psi(a/q) for nonprincipal chi."""
    _check_nonprincipal(chi)
    q = chi.q
    a = np.arange(1, q)
    return complex(-np.sum(character_values(chi)[1:] * special.digamma(a / q)) / q)


def halfpoint_from_l_one(chi: DirichletCharacter, tol: float = 1e-10) -> LValue:
    """(2 - conj(chi(2))) tau(chi) / (pi i) L(1, conj(chi)) for odd primitive chi.

    This equals S_chi(floor(q/2)); the tail bound is scaled by the prefactor.
    """
    values = character_values(chi)
    prefactor = (2 - np.conj(values[2 % chi.q])) * gauss_sum(chi) / (math.pi * 1j)
    L = l_one(conjugate(chi), tol)
    return LValue(
        value=complex(prefactor * L.value),
        tail_bound=abs(prefactor) * L.tail_bound,
        terms=L.terms,
    )
