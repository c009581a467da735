"""Polynomials modulo an integer, and complete factorization over F_p.

Internally polynomials are plain lists of residues, constant term first, with
no trailing zeros.  ``ModPoly`` is the immutable public value type.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..errors import InvalidInput
from .arith import default_seed
from .intpoly import IntPoly, as_poly, format_poly



@dataclass(frozen=True)
class ModPoly:
    coeffs: tuple[int, ...]
    modulus: int

    def __init__(self, coeffs: Iterable[int], modulus: int):
        if modulus < 2:
            raise InvalidInput("modulus must be >= 2")
        object.__setattr__(self, "coeffs", tuple(_trim([c % modulus for c in coeffs])))
        object.__setattr__(self, "modulus", modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_intpoly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def __str__(self):
        return f"{format_poly(IntPoly(self.coeffs))} (mod {self.modulus})"


@dataclass(frozen=True)
class FactorizationModP:
    """Monic irreducible factors with multiplicities, plus the unit in front."""

    prime: int
    unit: int
    factors: tuple[tuple[ModPoly, int], ...]

    @property
    def degrees(self) -> list[int]:
        """Factor degrees repeated by multiplicity, sorted."""
        return sorted(g.degree for g, e in self.factors for _ in range(e))

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def shape(self) -> tuple[tuple[int, int], ...]:
        """Sorted (degree, multiplicity) pairs."""
        return tuple(sorted((g.degree, e) for g, e in self.factors))

    def product(self) -> ModPoly:
        acc = [self.unit % self.prime]
        for g, e in self.factors:
            for _ in range(e):
                acc = mul(acc, list(g.coeffs), self.prime)
        return ModPoly(acc, self.prime)


# ------------------------------------------------------------ list primitives


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def scale(a, c, m):
    return _trim([x * c % m for x in a])


def mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % m for c in out])


def divmod_p(a, b, p):
    """Division with remainder over F_p (b nonzero)."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j, bc in enumerate(b):
                r[k + j] = (r[k + j] - c * bc) % p
    return _trim(q), _trim(r[:db])


def rem(a, b, p):
    return divmod_p(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """(g, s, t) with s a + t b = g monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(base, e, modpoly, p):
    result = [1]
    b = rem(base, modpoly, p)
    while e:
        if e & 1:
            result = rem(mul(result, b, p), modpoly, p)
        b = rem(mul(b, b, p), modpoly, p)
        e >>= 1
    return result


def derivative(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# ----------------------------------------------------------- factorization


def _pth_root(a, p):
    # a(x) = b(x^p) in F_p[x]; coefficients are their own p-th roots
    return _trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a, p) -> list[tuple[list[int], int]]:
    """Monic a -> [(s_i, i)] with a = prod s_i^i, s_i squarefree, coprime."""
    out: list[tuple[list[int], int]] = []
    a = monic(a, p)
    if len(a) <= 1:
        return out
    da = derivative(a, p)
    if not da:
        for s, i in squarefree_decomposition(_pth_root(a, p), p):
            out.append((s, i * p))
        return out
    c = gcd(a, da, p)
    w = divmod_p(a, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        for s, j in squarefree_decomposition(_pth_root(c, p), p):
            out.append((s, j * p))
    return out


def distinct_degree(a, p) -> list[tuple[list[int], int]]:
    """Squarefree monic a -> [(g_d, d)], g_d the product of degree-d factors."""
    out = []
    h = [0, 1]
    f = list(a)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(a, d, p, rng: random.Random) -> list[list[int]]:
    """Split a product of distinct monic irreducibles of degree d (Cantor-Zassenhaus)."""
    n = len(a) - 1
    if n == d:
        return [a]
    while True:
        r = _trim([rng.randrange(p) for _ in range(n)])
        if len(r) < 2:
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^(2^(d-1))
            t, s = list(r), list(r)
            for _ in range(d - 1):
                s = rem(mul(s, s, 2), a, 2)
                t = add(t, s, 2)
            g = gcd(a, t, 2)
        else:
            s = powmod(r, (p**d - 1) // 2, a, p)
            g = gcd(a, sub(s, [1], p), p)
        if 1 < len(g) < len(a):
            h = divmod_p(a, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor_mod_p(f, p: int, seed: int | None = None) -> FactorizationModP:
    """Complete factorization of f over F_p into monic irreducibles."""
    f = as_poly(f)
    a = _trim([c % p for c in f.coeffs])
    if not a:
        raise InvalidInput(f"polynomial vanishes modulo {p}")
    unit = a[-1]
    rng = random.Random(default_seed() if seed is None else seed)
    counts: Counter = Counter()
    for s, mult in squarefree_decomposition(a, p):
        for g, d in distinct_degree(s, p):
            for h in equal_degree(g, d, p, rng):
                counts[tuple(h)] += mult
    factors = tuple(
        sorted(((ModPoly(h, p), e) for h, e in counts.items()), key=lambda t: (t[0].degree, t[0].coeffs[::-1], t[1]))
    )
    return FactorizationModP(prime=p, unit=unit, factors=factors)


def is_irreducible_mod_p(f, p: int) -> bool:
    fac = factor_mod_p(f, p)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1 and fac.factors[0][0].degree == as_poly(f).degree
