"""Exact integer, modular and polynomial arithmetic."""

from .arith import factorint, is_prime, next_prime, primes_up_to, set_default_seed, valuation
from .hensel import hensel_lift_factorization
from .intpoly import (
    IntPoly,
    as_poly,
    discriminant,
    format_coeffs,
    format_poly,
    integral_charpoly,
    parse_poly,
    resultant,
)
from .irreducible import IrreducibilityResult, is_irreducible_over_q
from .modp import FactorizationModP, ModPoly, factor_mod_p
from .sturm import signature, sturm_real_root_count

__all__ = [
    "FactorizationModP",
    "IntPoly",
    "IrreducibilityResult",
    "ModPoly",
    "as_poly",
    "discriminant",
    "factor_mod_p",
    "factorint",
    "format_coeffs",
    "format_poly",
    "hensel_lift_factorization",
    "integral_charpoly",
    "is_irreducible_over_q",
    "is_prime",
    "next_prime",
    "parse_poly",
    "primes_up_to",
    "resultant",
    "set_default_seed",
    "signature",
    "sturm_real_root_count",
    "valuation",
]
