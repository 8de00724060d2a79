"""Arithmetic of moduli, unit groups and Dirichlet characters."""

from charmax.arithmetic.characters import (
    DirichletCharacter,
    Parity,
    RootOfUnityOrZero,
    char_eval,
    character_exponents,
    character_from_index,
    character_index,
    character_values,
    conductor,
    conductor_moduli,
    conductor_modulus,
    conjugate,
    cyclotomic_is_zero,
    enumerate_characters,
    exact_character_sum,
    gauss_sum,
    is_primitive,
    order,
    parity,
    root_table,
)
from charmax.arithmetic.group import UnitGroupStructure, build_unit_group, unit_group
from charmax.arithmetic.modulus import FactoredModulus, factorize

__all__ = [
    "FactoredModulus",
    "factorize",
    "UnitGroupStructure",
    "unit_group",
    "build_unit_group",
    "RootOfUnityOrZero",
    "DirichletCharacter",
    "Parity",
    "enumerate_characters",
    "character_from_index",
    "character_index",
    "char_eval",
    "character_exponents",
    "character_values",
    "root_table",
    "conjugate",
    "order",
    "parity",
    "conductor",
    "conductor_moduli",
    "conductor_modulus",
    "is_primitive",
    "gauss_sum",
    "exact_character_sum",
    "cyclotomic_is_zero",
]
