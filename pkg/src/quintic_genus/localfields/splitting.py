"""Splitting of a prime p in K = Q[x]/(f).

The general path is an order-one Montes/Ore analysis.  For every repeated
irreducible factor phi of f mod p, f is expanded in powers of a lift of phi;
the phi-Newton polygon gives ramification and the residual polynomials give
residue degrees.  When a residual polynomial on an integral-slope edge has a
repeated root, phi is refined to phi - p^h c and the step repeats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InconsistentResult, InvalidInput, IrregularSplitting
from ..polycore import modp
from ..polycore.arith import valuation
from ..polycore.intpoly import IntPoly, as_poly, discriminant, divmod_monic
from ..polycore.modp import factor_mod_p
from .newton import lower_hull, newton_polygon

MIN_REFINEMENT_DEPTH = 6


@dataclass(frozen=True)
class SplittingType:
    """Sorted multiset of (e, f) pairs for the primes above p."""

    parts: tuple[tuple[int, int], ...]

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(sorted((int(e), int(f)) for e, f in parts)))

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.parts)

    @property
    def is_totally_ramified(self) -> bool:
        return self.parts == ((self.degree, 1),)

    @property
    def is_inert(self) -> bool:
        return self.parts == ((1, self.degree),)

    @property
    def is_unramified(self) -> bool:
        return all(e == 1 for e, _ in self.parts)

    @property
    def is_ramified(self) -> bool:
        return not self.is_unramified

    def __str__(self):
        return "{" + ",".join(f"({e},{f})" for e, f in self.parts) + "}"

    @classmethod
    def parse(cls, text: str) -> "SplittingType":
        nums = [int(t) for t in text.replace("(", " ").replace(")", " ").replace(",", " ").replace("{", " ").replace("}", " ").split()]
        if len(nums) % 2:
            raise InvalidInput(f"bad splitting type {text!r}")
        return cls(zip(nums[::2], nums[1::2]))


INERT = SplittingType([(1, 5)])
TOTALLY_RAMIFIED = SplittingType([(5, 1)])


# ------------------------------------------------------------- phi-adic data


def phi_expansion(f: IntPoly, phi: IntPoly) -> list[IntPoly]:
    """Coefficients a_i (deg < deg phi) with f = sum a_i phi^i."""
    out = []
    rest = f
    while not rest.is_zero():
        rest, r = divmod_monic(rest, phi)
        out.append(r)
    return out


def _poly_val(a: IntPoly, p: int) -> int | None:
    if a.is_zero():
        return None
    return min(valuation(c, p) for c in a.coeffs if c)


class _Fq:
    """Arithmetic in F_p[x]/(phibar) for an irreducible monic phibar."""

    def __init__(self, p: int, phibar: list[int]):
        self.p = p
        self.mod = phibar
        self.d = len(phibar) - 1
        self.q = p**self.d

    def red(self, a) -> list[int]:
        return modp.rem([c % self.p for c in a], self.mod, self.p)

    def mul(self, a, b):
        return modp.rem(modp.mul(a, b, self.p), self.mod, self.p)

    def add(self, a, b):
        return modp.add(a, b, self.p)

    def sub(self, a, b):
        return modp.sub(a, b, self.p)

    def inv(self, a):
        g, s, _ = modp.xgcd(a, self.mod, self.p)
        if g != [1]:
            raise ZeroDivisionError("non-invertible element of F_q")
        return s

    def pow(self, a, e):
        return modp.powmod(a, e, self.mod, self.p)

    def scalar(self, c):
        return modp._trim([c % self.p])

    def trace2(self, u):
        # absolute trace to F_2
        t, s = list(u), list(u)
        for _ in range(self.d - 1):
            s = self.mul(s, s)
            t = self.add(t, s)
        return t


def _factor_residual(coeffs: list[list[int]], F: _Fq):
    """Factor a residual polynomial over F_q.

    Returns [(root or None, degree, multiplicity)]; a root is given for
    linear factors.  Over F_p any degree is handled; over a proper extension
    only degrees <= 2 occur for quintics.
    """
    p = F.p
    if F.d == 1:
        poly = [c[0] if c else 0 for c in coeffs]
        fac = factor_mod_p(IntPoly(poly), p)
        out = []
        for g, e in fac.factors:
            root = [(-g.coeffs[0]) % p] if g.degree == 1 else None
            out.append((modp._trim(root) if root else root, g.degree, e))
        return out
    deg = len(coeffs) - 1
    if deg == 1:
        b, a = coeffs
        return [(F.mul(F.sub([], b), F.inv(a)), 1, 1)]
    if deg != 2:
        raise IrregularSplitting(p, 0, f"residual polynomial of degree {deg} over F_{p}^{F.d}")
    c, b, a = coeffs
    if p == 2:
        if not b:
            # y^2 = c/a has exactly one root in characteristic 2
            u = F.mul(c, F.inv(a))
            return [(F.pow(u, F.q // 2), 1, 2)]
        u = F.mul(F.mul(c, a), F.inv(F.mul(b, b)))
        if F.trace2(u) == [1]:
            return [(None, 2, 1)]
        return [(None, 1, 1), (None, 1, 1)]
    disc = F.sub(F.mul(b, b), F.mul(F.scalar(4), F.mul(a, c)))
    if not disc:
        root = F.mul(F.sub([], b), F.inv(F.mul(F.scalar(2), a)))
        return [(root, 1, 2)]
    if F.pow(disc, (F.q - 1) // 2) == [1]:
        return [(None, 1, 1), (None, 1, 1)]
    return [(None, 2, 1)]


def _analyze(f: IntPoly, phi: IntPoly, p: int, min_slope: Fraction, depth: int, max_depth: int):
    if depth > max_depth:
        raise IrregularSplitting(p, depth, "refinement depth exceeded")
    d = phi.degree
    F = _Fq(p, modp.monic([c % p for c in phi.coeffs], p))
    coeffs = phi_expansion(f, phi)
    vals = [_poly_val(a, p) for a in coeffs]
    points = [(i, v) for i, v in enumerate(vals) if v is not None]
    parts = []
    for seg in lower_hull(points):
        if seg.slope <= min_slope:
            continue
        e = seg.ramification
        h = seg.slope.numerator
        res = []
        for j in range(seg.length // e + 1):
            i = seg.start + j * e
            v = vals[i] if i < len(vals) else None
            if v is not None and seg.on_segment(i, v):
                a = coeffs[i]
                res.append(F.red([c // p**v for c in a.coeffs]))
            else:
                res.append([])
        for root, r, mult in _factor_residual(res, F):
            if mult == 1:
                parts.append((e, d * r))
            elif e == 1 and r == 1 and root is not None:
                phi2 = phi - IntPoly(c * p**h for c in root)
                parts.extend(_analyze(f, phi2, p, seg.slope, depth + 1, max_depth))
            else:
                raise IrregularSplitting(
                    p, depth, f"residual factor of degree {r} repeated {mult} times on slope {seg.slope}"
                )
    return parts


def splitting_type(f, p: int, max_depth: int | None = None) -> SplittingType:
    """(e, f) data of the primes above p in Q[x]/(f), f monic and squarefree."""
    f = as_poly(f)
    if f.lc != 1:
        raise InvalidInput("splitting_type needs a monic polynomial")
    disc = discriminant(f)
    if disc == 0:
        raise InvalidInput(f"{f} is not squarefree")
    if max_depth is None:
        max_depth = max(MIN_REFINEMENT_DEPTH, valuation(disc, p))
    fac = factor_mod_p(f, p)
    parts = []
    for g, mult in fac.factors:
        if mult == 1:
            parts.append((1, g.degree))
            continue
        parts.extend(_analyze(f, IntPoly(g.coeffs), p, Fraction(0), 0, max_depth))
    st = SplittingType(parts)
    if st.degree != f.degree:
        raise InconsistentResult(f"splitting type {st} does not have degree {f.degree}")
    return st


# ------------------------------------------------------------- maximality


def dedekind_is_maximal_at(f, p: int) -> bool:
    """Dedekind criterion: is Z[x]/(f) maximal at p?"""
    f = as_poly(f)
    fac = factor_mod_p(f, p)
    g = [1]
    for q, _ in fac.factors:
        g = modp.mul(g, list(q.coeffs), p)
    fbar = modp._trim([c % p for c in f.coeffs])
    h = modp.divmod_p(fbar, g, p)[0]
    big = IntPoly(g) * IntPoly(h) - f
    F = modp._trim([(c // p) % p for c in big.coeffs])
    t = modp.gcd(modp.gcd(F, g, p), h, p) if F else modp.gcd(g, h, p)
    return len(t) <= 1


# ------------------------------------------------------ total ramification


def _single_root_mod_p(f: IntPoly, p: int) -> int | None:
    fac = factor_mod_p(f, p)
    if len(fac.factors) != 1:
        return None
    g, mult = fac.factors[0]
    if g.degree != 1 or mult != f.degree:
        return None
    return (-g.coeffs[0]) % p


def totally_ramified_center(f, p: int) -> tuple[int, int] | None:
    """Find (a, h) with v(theta - a) = h/n, gcd(h, n) = 1, if p is totally ramified.

    Shift-refines a one p-adic digit at a time; returns None when p is not
    totally ramified.  Each refinement raises the common root valuation, which
    is bounded by v_p(disc)/(n(n-1)), so the loop terminates.
    """
    f = as_poly(f)
    n = f.degree
    a = _single_root_mod_p(f, p)
    if a is None:
        return None
    disc = discriminant(f)
    bound = valuation(disc, p) // (n * (n - 1)) + 2
    for _ in range(bound + 1):
        g = f.shift(a)
        if g.coeffs[0] == 0:
            return None
        poly = newton_polygon(g, p)
        if not poly.is_single_segment():
            return None
        seg = poly.segments[0]
        lam = seg.slope
        if lam.denominator == n:
            return a, lam.numerator
        if lam.denominator != 1:
            return None
        h = lam.numerator
        res = [
            (c // p ** valuation(c, p)) % p if c and seg.on_segment(i, valuation(c, p)) else 0
            for i, c in enumerate(g.coeffs)
        ]
        r = _single_root_mod_p(IntPoly(res), p) if res[-1] % p else None
        if r is None:
            return None
        a += r * p**h
    raise InconsistentResult(f"total-ramification refinement at {p} did not terminate")


def is_totally_ramified(f, p: int) -> bool:
    """True iff p = P^n in Q[x]/(f).

    For tame p (p > deg f) with Z[x]/(f) p-maximal, cross-checked against
    v_p(disc) = n - 1.
    """
    f = as_poly(f)
    result = totally_ramified_center(f, p) is not None
    n = f.degree
    if p > n and dedekind_is_maximal_at(f, p):
        tame = valuation(discriminant(f), p) == n - 1
        if tame != result:
            raise InconsistentResult(f"Newton-polygon and discriminant tests disagree at p={p} for {f}")
    return result


def is_inert(f, p: int) -> bool:
    f = as_poly(f)
    fac = factor_mod_p(f, p)
    if len(fac.factors) != 1:
        return False
    g, mult = fac.factors[0]
    if mult == 1:
        return g.degree == f.degree
    # f = phi^k mod p can still be inert when p divides the index
    return splitting_type(f, p).is_inert


def splitting_fingerprint(f, primes) -> tuple:
    """Factorization shapes mod each prime, for cheap duplicate detection."""
    f = as_poly(f)
    return tuple((p, factor_mod_p(f, p).shape()) for p in primes)


__all__ = [
    "INERT",
    "TOTALLY_RAMIFIED",
    "SplittingType",
    "dedekind_is_maximal_at",
    "is_inert",
    "is_totally_ramified",
    "phi_expansion",
    "splitting_fingerprint",
    "splitting_type",
    "totally_ramified_center",
]
