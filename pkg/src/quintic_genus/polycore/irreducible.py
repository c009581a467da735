"""Irreducibility over Q with explicit certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from ..errors import FactorizationTimeout, InvalidInput
from .arith import factorint, primes_from
from .hensel import hensel_lift_factorization
from .intpoly import IntPoly, as_poly, discriminant, divides_exactly, gcd_over_q
from .modp import factor_mod_p

PRIME_BUDGET = 25


@dataclass(frozen=True)
class IrreducibilityResult:
    """``status`` is "irreducible", "reducible" or "inconclusive"."""

    status: str
    certificate: str
    witness: IntPoly | None = None

    def __bool__(self):
        return self.status == "irreducible"


def _eisenstein_prime(f: IntPoly) -> int | None:
    g = 0
    for c in f.coeffs[:-1]:
        g = math.gcd(g, c)
    if g in (0, 1):
        return None
    try:
        primes = factorint(g, trial_limit=10**4, rho_budget=2000)
    except FactorizationTimeout:
        return None
    for p in primes:
        if f.lc % p and f.coeffs[0] % (p * p):
            return p
    return None


def _degree_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _mignotte_bound(f: IntPoly) -> int:
    norm = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return (2 ** f.degree) * norm * abs(f.lc)


def _recombine(f: IntPoly, p: int) -> IntPoly | None:
    """Search for a proper factor by Zassenhaus recombination of p-adic factors."""
    bound = 2 * _mignotte_bound(f)
    k = 1
    while p**k <= bound:
        k += 1
    mod = p**k
    lifted = [g.to_intpoly() for g in hensel_lift_factorization(f, p, k)]
    r = len(lifted)
    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            cand = IntPoly((1,))
            for i in subset:
                cand = (cand * lifted[i]).reduce_mod(mod)
            cand = cand.symmetric_mod(mod)
            if divides_exactly(f, cand) is not None:
                return cand
    return None


def is_irreducible_over_q(f, prime_budget: int = PRIME_BUDGET) -> IrreducibilityResult:
    """Decide irreducibility of a primitive integer polynomial.

    An irreducible answer cites an Eisenstein prime or a prime with
    irreducible reduction.  Failing both, it cites several primes whose
    attainable proper factor degrees have empty intersection.
    Reducible answers carry an integer factor as witness.  If the prime
    budget runs out first the status is "inconclusive".
    """
    f = as_poly(f)
    if f.degree < 1:
        raise InvalidInput("irreducibility needs degree >= 1")
    if f.content() != 1:
        raise InvalidInput(f"{f} is not primitive")
    n = f.degree
    if n == 1:
        return IrreducibilityResult("irreducible", "linear")
    if f.coeffs[0] == 0:
        return IrreducibilityResult("reducible", "root 0", IntPoly((0, 1)))
    disc = discriminant(f)
    if disc == 0:
        g = gcd_over_q(f, f.derivative())
        return IrreducibilityResult("reducible", f"repeated factor {g}", g)
    q = _eisenstein_prime(f)
    if q is not None:
        return IrreducibilityResult("irreducible", f"Eisenstein at {q}")
    possible = set(range(1, n))
    tested = 0
    best_prime = None
    for p in primes_from(2):
        if tested >= prime_budget:
            break
        if disc % p == 0 or f.lc % p == 0:
            continue
        tested += 1
        fac = factor_mod_p(f, p)
        degs = fac.degrees
        if len(degs) == 1:
            return IrreducibilityResult("irreducible", f"irreducible mod {p}")
        possible &= _degree_sums(degs)
        if not possible:
            return IrreducibilityResult("irreducible", "degree-set intersection across primes is {%d}" % n)
        if best_prime is None or len(degs) < len(factor_mod_p(f, best_prime).degrees):
            best_prime = p
    if f.lc == 1 and best_prime is not None:
        g = _recombine(f, best_prime)
        if g is not None:
            rr = -g.coeffs[0] if g.degree == 1 else None
            cert = f"root {rr}" if rr is not None else f"factor {g}"
            return IrreducibilityResult("reducible", cert, g)
        return IrreducibilityResult("irreducible", f"no recombination of {best_prime}-adic factors divides f")
    return IrreducibilityResult("inconclusive", f"prime budget {prime_budget} exhausted")


__all__ = ["IrreducibilityResult", "is_irreducible_over_q"]
