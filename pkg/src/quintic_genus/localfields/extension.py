"""Arithmetic in Z_p[pi] for an Eisenstein pi, and root counting there.

Roots are found by descending through the balls x + pi^k O_L.  At each
ball the Taylor expansion g(x + delta) is examined: the Newton polygon
in delta counts, over an algebraic closure, the roots of g with
v(delta) >= k.  No roots prunes the ball; exactly one root must lie in L
(it is fixed by every automorphism over L); two or more means descend.
"""

from __future__ import annotations

from ..errors import InvalidInput, PrecisionTooLow
from ..polycore.arith import valuation
from ..polycore.intpoly import IntPoly, as_poly, discriminant
from .newton import lower_hull


def is_eisenstein(f, p: int) -> bool:
    f = as_poly(f)
    if f.degree < 1 or f.lc % p == 0:
        return False
    if any(c % p for c in f.coeffs[:-1]):
        return False
    return f.coeffs[0] % (p * p) != 0


class EisensteinExtension:
    """The ring Z_p[pi]/(host(pi)) truncated at p^digits.

    Elements are lists of ``n`` residues in the basis 1, pi, ..., pi^(n-1).
    Valuations are normalized so that v(pi) = 1.
    """

    def __init__(self, host, p: int, digits: int):
        host = as_poly(host)
        if host.lc != 1 or not is_eisenstein(host, p):
            raise InvalidInput(f"{host} is not a monic Eisenstein polynomial at {p}")
        self.host = host
        self.p = p
        self.n = host.degree
        self.digits = digits
        self.mod = p**digits
        self.cap = self.n * digits
        self._tail = [(-c) % self.mod for c in host.coeffs[:-1]]

    def element(self, coeffs) -> list[int]:
        c = [int(x) % self.mod for x in coeffs]
        if len(c) > self.n:
            return self._reduce(c)
        return c + [0] * (self.n - len(c))

    def const(self, c: int) -> list[int]:
        return self.element([c])

    def pi_power(self, k: int) -> list[int]:
        return self._reduce([0] * k + [1])

    def _reduce(self, c: list[int]) -> list[int]:
        c = list(c)
        n, mod = self.n, self.mod
        for k in range(len(c) - 1, n - 1, -1):
            t = c[k]
            if t:
                for j in range(n):
                    c[k - n + j] = (c[k - n + j] + t * self._tail[j]) % mod
            c[k] = 0
        c = c[:n] + [0] * max(0, n - len(c))
        return [x % mod for x in c]

    def add(self, a, b):
        return [(x + y) % self.mod for x, y in zip(a, b)]

    def scale(self, a, s: int):
        return [(x * s) % self.mod for x in a]

    def mul(self, a, b):
        out = [0] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce(out)

    def val(self, a) -> int:
        best = self.cap
        for i, c in enumerate(a):
            if c:
                best = min(best, self.n * valuation(c, self.p) + i)
        return best

    def taylor(self, g: IntPoly, x) -> list[list[int]]:
        """Coefficients G_j of g(x + delta) = sum G_j delta^j."""
        coeffs = [self.const(c) for c in g.coeffs]
        m = len(coeffs)
        for i in range(m - 1):
            for j in range(m - 2, i - 1, -1):
                coeffs[j] = self.add(coeffs[j], self.mul(x, coeffs[j + 1]))
        return coeffs

    def roots_in_ball(self, g: IntPoly, x, k: int) -> int:
        """Number of roots (over a closure) of g with v(root - x) >= k."""
        vals = [self.val(c) for c in self.taylor(g, x)]
        pts = list(enumerate(vals))
        count = 0
        for seg in lower_hull(pts):
            if seg.slope >= k:
                count += seg.length
        return count


def host_disc_exponent(host, p: int) -> int:
    return valuation(discriminant(as_poly(host)), p)


def find_roots_in_extension(g, host, p: int, precision: int | None = None) -> int:
    """Count roots of ``g`` in Q_p(pi), pi a root of the Eisenstein ``host``.

    ``precision`` is the maximal pi-adic depth of the search and must be at
    least 2*d + 1, d the discriminant exponent of the host.
    """
    g = as_poly(g)
    host = as_poly(host)
    if g.degree < 1:
        raise InvalidInput("need a nonconstant polynomial")
    d = host_disc_exponent(host, p)
    if precision is None:
        precision = 2 * d + 1
    if precision < 2 * d + 1:
        raise PrecisionTooLow(f"precision {precision} is below 2*{d}+1 for this host")
    n = host.degree
    extra = max(valuation(c, p) for c in g.coeffs if c)
    digits = -(-((g.degree + 1) * (precision + 2) + n * extra) // n) + 2
    L = EisensteinExtension(host, p, digits)
    pis = [L.pi_power(k) for k in range(precision + 1)]
    total = 0
    stack = [(L.const(0), 0)]
    while stack:
        x, k = stack.pop()
        c = L.roots_in_ball(g, x, k)
        if c == 0:
            continue
        if c == 1:
            total += 1
            continue
        if k >= precision:
            raise PrecisionTooLow(f"{c} roots of {g} still unseparated at pi-adic depth {k}")
        step = pis[k]
        for digit in range(p):
            stack.append((L.add(x, L.scale(step, digit)), k + 1))
    return total


def same_field(f, g, p: int) -> bool:
    """Do Eisenstein f and g of equal degree generate isomorphic extensions?"""
    return find_roots_in_extension(g, f, p) > 0


__all__ = ["EisensteinExtension", "find_roots_in_extension", "is_eisenstein", "same_field"]
