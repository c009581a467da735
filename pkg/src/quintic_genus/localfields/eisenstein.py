"""Eisenstein generators of totally ramified completions, and condition (star)."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidInput, NotTotallyRamified, SearchExhausted
from ..polycore.intpoly import IntPoly, as_poly, integral_charpoly
from .extension import is_eisenstein
from .splitting import totally_ramified_center


def _binomial_power(a: int, u: int) -> list[int]:
    """Coefficients of (x - a)^u."""
    return list((IntPoly((-a, 1)) ** u).coeffs)


def eisenstein_generator(f, p: int) -> IntPoly:
    """A polynomial, Eisenstein at p, generating the completion of Q[x]/(f) at p.

    p must be totally ramified.  First x -> x + a is refined p-adically
    until v(theta - a) = h/n with gcd(h, n) = 1; if h = 1 the shifted
    polynomial already is Eisenstein, otherwise the characteristic
    polynomial of the uniformizer (theta - a)^u / p^w with u h - n w = 1 is
    returned.
    """
    f = as_poly(f)
    if f.lc != 1:
        raise InvalidInput("need a monic polynomial")
    n = f.degree
    center = totally_ramified_center(f, p)
    if center is None:
        raise NotTotallyRamified(f"{p} is not totally ramified in Q[x]/({f})")
    a, h = center
    if h == 1:
        g = f.shift(a)
    else:
        u = pow(h, -1, n)
        w = (u * h - 1) // n
        elt = [Fraction(c, p**w) for c in _binomial_power(a, u)]
        g = integral_charpoly(f, elt)
    if not is_eisenstein(g, p):
        raise SearchExhausted(f"no Eisenstein generator found for {f} at {p}")
    return g


def eisenstein_generator_at_5(f) -> IntPoly:
    return eisenstein_generator(f, 5)


def star_condition(g) -> bool:
    """a1 = a2 = a3 = a4 + a0 = 0 (mod 25) for a quintic g Eisenstein at 5."""
    g = as_poly(g)
    if g.degree != 5 or g.lc != 1 or not is_eisenstein(g, 5):
        raise InvalidInput(f"{g} is not a monic quintic Eisenstein at 5")
    a = g.coeffs
    return a[1] % 25 == 0 and a[2] % 25 == 0 and a[3] % 25 == 0 and (a[4] + a[0]) % 25 == 0
