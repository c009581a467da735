"""The 25 totally ramified quintic extensions of Q_5.

For x^5 + a4 x^4 + ... + a0 Eisenstein at 5 with root pi, the different
has pi-valuation d = min(9, min_i 5 v(a_i) + i - 1), i = 1..4, so
5 <= d <= 9.  A degree-5 wild extension has a single ramification break, so
the four other conjugates of pi sit at pi-distance d/4.  If h is another
Eisenstein polynomial with v_pi(h(pi)) > 5d/4, some root of h is closer to
pi than any conjugate, and Krasner's lemma gives Q_5(root) = Q_5(pi).  With
T = floor(5d/4) + 1 it is therefore enough to know a_i modulo 5^k_i where
5 k_i + i >= T; for d = 9 this means coefficients mod 5^3.  Candidates are
enumerated at that precision for each d and grouped by root finding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import InconsistentResult
from ..polycore.arith import valuation
from ..polycore.intpoly import IntPoly, discriminant
from .eisenstein import star_condition
from .extension import find_roots_in_extension

P = 5
SERRE_MASS = Fraction(1, 5**4)  # sum of 1/(5^d #Aut) over totally ramified quintics


@dataclass(frozen=True)
class LocalFieldClass:
    representative: IntPoly
    disc_exponent: int
    aut_count: int
    is_galois: bool
    satisfies_star: bool
    members: tuple[IntPoly, ...] = field(default=(), compare=False, repr=False)

    def sort_key(self):
        return self.representative.coeffs

    def as_record(self) -> dict:
        return {
            "poly": str(self.representative),
            "coeffs": list(self.representative.coeffs),
            "disc_exponent": self.disc_exponent,
            "aut_count": self.aut_count,
            "is_galois": self.is_galois,
            "satisfies_star": self.satisfies_star,
        }


def different_exponent(coeffs) -> int:
    """pi-valuation of f'(pi) for a quintic Eisenstein polynomial at 5."""
    best = 9  # the 5 x^4 term
    for i in range(1, 5):
        a = coeffs[i]
        if a:
            best = min(best, 5 * valuation(a, P) + i - 1)
    return best


def krasner_threshold(d: int) -> int:
    return (5 * d) // 4 + 1


def coefficient_precision(d: int) -> list[int]:
    """Exponents k_i with 5 k_i + i >= T(d), for i = 0..4."""
    t = krasner_threshold(d)
    return [max(1, -(-(t - i) // 5)) for i in range(5)]


def _balanced(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def candidates(d: int) -> list[IntPoly]:
    """Eisenstein quintics with different exponent d, coefficients at Krasner precision."""
    ks = coefficient_precision(d)
    ranges = []
    for i in range(5):
        m = P ** ks[i]
        if i == 0:
            vals = [P * u for u in range(1, m // P) if u % P]
        else:
            vals = list(range(0, m, P))
        ranges.append([_balanced(v, m) for v in vals])
    out = []
    for combo in product(*ranges):
        coeffs = list(combo) + [1]
        if different_exponent(coeffs) == d:
            out.append(IntPoly(coeffs))
    return out


def _rep_key(f: IntPoly):
    return (sum(abs(c) for c in f.coeffs), tuple(abs(c) for c in reversed(f.coeffs)), f.coeffs)


def group_classes(polys: list[IntPoly]) -> list[list[IntPoly]]:
    """Partition Eisenstein polynomials of one different exponent into isomorphism classes."""
    classes: list[list[IntPoly]] = []
    for f in polys:
        for cls in classes:
            if find_roots_in_extension(f, cls[0], P) > 0:
                cls.append(f)
                break
        else:
            classes.append([f])
    return classes


def classify(members: list[IntPoly]) -> LocalFieldClass:
    rep = min(members, key=_rep_key)
    aut = find_roots_in_extension(rep, rep, P)
    return LocalFieldClass(
        representative=rep,
        disc_exponent=valuation(discriminant(rep), P),
        aut_count=aut,
        is_galois=aut == 5,
        satisfies_star=star_condition(rep),
        members=tuple(members),
    )


def enumerate_wild_quintic_q5() -> list[LocalFieldClass]:
    """All totally ramified quintic extensions of Q_5, sorted by representative."""
    out = []
    for d in range(5, 10):
        for members in group_classes(candidates(d)):
            out.append(classify(members))
    out.sort(key=LocalFieldClass.sort_key)
    mass = sum(Fraction(1, 5**c.disc_exponent * c.aut_count) for c in out)
    if mass != SERRE_MASS:
        raise InconsistentResult(f"wild classes have mass {mass}, expected {SERRE_MASS}")
    return out


_CACHE: list[LocalFieldClass] | None = None


def wild_classes() -> list[LocalFieldClass]:
    """Cached enumerate_wild_quintic_q5()."""
    global _CACHE
    if _CACHE is None:
        _CACHE = enumerate_wild_quintic_q5()
    return _CACHE


def class_of(g: IntPoly) -> LocalFieldClass:
    """The wild class generated by an Eisenstein quintic g at 5."""
    for cls in wild_classes():
        if find_roots_in_extension(g, cls.representative, P) > 0:
            return cls
    raise InconsistentResult(f"{g} generates none of the enumerated classes")
