"""Multifactor Hensel lifting of a mod-p factorization to mod p^k."""

from __future__ import annotations

from typing import Sequence

from ..errors import InvalidInput, LiftingObstruction
from . import modp
from .intpoly import IntPoly, as_poly
from .modp import ModPoly, factor_mod_p


def _lift_pair(f: IntPoly, g: IntPoly, h: IntPoly, p: int, k: int) -> tuple[IntPoly, IntPoly]:
    """Lift f = g*h (mod p, g and h monic and coprime) to mod p^k."""
    one, s, t = modp.xgcd(list(g.reduce_mod(p).coeffs), list(h.reduce_mod(p).coeffs), p)
    if one != [1]:
        raise LiftingObstruction(f"factors {g} and {h} are not coprime mod {p}")
    pj = p
    for _ in range(1, k):
        err = f - g * h
        if any(c % pj for c in err.coeffs):
            raise LiftingObstruction("product is not congruent to f at the current precision")
        e = [(c // pj) % p for c in err.coeffs]
        # h*(t e mod g) + g*(s e + q h) = e with degree control
        te = modp.mul(t, e, p)
        q, dg = modp.divmod_p(te, list(g.reduce_mod(p).coeffs), p)
        hbar = list(h.reduce_mod(p).coeffs)
        dh = modp.rem(modp.add(modp.mul(s, e, p), modp.mul(q, hbar, p), p), hbar, p)
        g = g + IntPoly(c * pj for c in dg)
        h = h + IntPoly(c * pj for c in dh)
        pj *= p
    return g.reduce_mod(pj), h.reduce_mod(pj)


def hensel_lift_factorization(
    f,
    p: int,
    k: int,
    factors: Sequence[ModPoly] | None = None,
) -> list[ModPoly]:
    """Lift a coprime factorization of monic ``f`` mod p to one mod p**k.

    ``factors`` defaults to the irreducible factors of f mod p, which must
    then be squarefree.  Returned factors are monic, congruent to their seeds
    mod p, and multiply to f mod p**k.
    """
    f = as_poly(f)
    if f.lc != 1:
        raise InvalidInput("hensel lifting needs a monic polynomial")
    if k < 1:
        raise InvalidInput("precision exponent must be >= 1")
    if factors is None:
        fac = factor_mod_p(f, p)
        if not fac.is_squarefree:
            raise LiftingObstruction(f"{f} is not squarefree mod {p}")
        seeds = [IntPoly(g.coeffs) for g, _ in fac.factors]
    else:
        seeds = []
        for g in factors:
            c = list(g.coeffs) if isinstance(g, ModPoly) else list(as_poly(g).coeffs)
            seeds.append(IntPoly(modp.monic([x % p for x in c], p)))
    prod = [1]
    for g in seeds:
        prod = modp.mul(prod, list(g.coeffs), p)
    if modp._trim(prod) != modp._trim([c % p for c in f.coeffs]):
        raise InvalidInput("seed factors do not multiply to f mod p")
    mod = p**k
    out: list[IntPoly] = []
    rest = f
    for i, g in enumerate(seeds[:-1]):
        cof = [1]
        for h in seeds[i + 1 :]:
            cof = modp.mul(cof, list(h.coeffs), p)
        gl, hl = _lift_pair(rest, g, IntPoly(cof), p, k)
        out.append(gl)
        rest = hl
    out.append(rest.reduce_mod(mod))
    return [ModPoly(g.coeffs, mod) for g in out]


def lifted_product(factors: Sequence[ModPoly]) -> ModPoly:
    m = factors[0].modulus
    acc = [1]
    for g in factors:
        acc = modp.mul(acc, list(g.coeffs), m)
    return ModPoly(acc, m)

