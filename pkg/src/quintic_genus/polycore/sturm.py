"""Exact real-root counting by Sturm sequences."""

from __future__ import annotations

from ..errors import InvalidInput
from .intpoly import IntPoly, as_poly, pseudo_divmod


def sturm_sequence(f: IntPoly) -> list[IntPoly]:
    """Sturm chain with primitive-part pseudo-remainders.

    Each remainder is rescaled by a positive factor only, so the sign
    pattern matches the classical chain f, f', -rem(f, f'), ...
    """
    f = as_poly(f)
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        _, r = pseudo_divmod(a, b)
        if b.lc < 0 and (a.degree - b.degree + 1) % 2 == 1:
            r = -r
        if r.is_zero():
            break
        g = r.content()
        seq.append(IntPoly(-c // g for c in r.coeffs))
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_root_count(f) -> int:
    """Number of distinct real roots of a squarefree polynomial."""
    f = as_poly(f)
    if f.degree < 1:
        raise InvalidInput("need a polynomial of degree >= 1")
    seq = sturm_sequence(f)
    last = seq[-1]
    if last.degree > 0:
        raise InvalidInput(f"{f} is not squarefree; repeated-root witness gcd = {last.primitive_part()}")
    at_plus = [g.lc for g in seq]
    at_minus = [g.lc * (-1) ** g.degree for g in seq]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def signature(f) -> tuple[int, int]:
    """(r1, r2) for a squarefree polynomial: real roots and complex-conjugate pairs."""
    f = as_poly(f)
    r1 = sturm_real_root_count(f)
    return r1, (f.degree - r1) // 2
