"""Univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import InvalidInput


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial c0 + c1 x + ... stored constant term first.

    Trailing zeros are stripped on construction, so ``coeffs[-1]`` is the
    leading coefficient and the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = _trim(int(a) for a in coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"IntPoly({format_poly(self)!r})"

    def derivative(self) -> "IntPoly":
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive_part(self) -> "IntPoly":
        """Divide out the content; the sign is chosen to make lc positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(a // g for a in self.coeffs)

    def shift(self, c: int) -> "IntPoly":
        """Return f(x + c) by repeated synthetic division (Taylor shift)."""
        a = list(self.coeffs)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return IntPoly(a)

    def compose(self, g: "IntPoly") -> "IntPoly":
        acc = IntPoly(())
        for a in reversed(self.coeffs):
            acc = acc * g + a
        return acc

    def reduce_mod(self, m: int) -> "IntPoly":
        return IntPoly(a % m for a in self.coeffs)

    def symmetric_mod(self, m: int) -> "IntPoly":
        half = m // 2
        return IntPoly(((a + half) % m) - half for a in self.coeffs)

    def exact_div_scalar(self, d: int) -> "IntPoly":
        if any(a % d for a in self.coeffs):
            raise InvalidInput(f"{self} is not divisible by {d}")
        return IntPoly(a // d for a in self.coeffs)


def _coerce(obj) -> IntPoly:
    if isinstance(obj, IntPoly):
        return obj
    if isinstance(obj, int):
        return IntPoly((obj,))
    raise TypeError(f"cannot use {type(obj).__name__} as IntPoly")


def as_poly(obj) -> IntPoly:
    """Coerce coefficient sequences and polynomial text to IntPoly."""
    if isinstance(obj, IntPoly):
        return obj
    if isinstance(obj, str):
        return parse_poly(obj)
    return IntPoly(obj)


# ---------------------------------------------------------------- text format

_TERM = re.compile(r"([+-]?)(\d*)(\*?x(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse "c0,c1,...,cn" (constant first) or a human form like "x^5 - x - 1"."""
    s = text.strip().replace("\u2212", "-")
    if not s:
        raise InvalidInput("empty polynomial text")
    if "x" not in s:
        parts = [p.strip() for p in s.split(",")]
        try:
            return IntPoly(int(p) for p in parts)
        except ValueError as exc:
            raise InvalidInput(f"bad coefficient list {text!r}") from exc
    s = s.replace(" ", "")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidInput(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise InvalidInput(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not sign:
            raise InvalidInput(f"missing operator in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0 if not xpart else (int(exp) if exp else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    n = max(coeffs) + 1
    return IntPoly(coeffs.get(i, 0) for i in range(n))


def format_poly(f: IntPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for i in range(f.degree, -1, -1):
        a = f.coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            xs = "x" if i == 1 else f"x^{i}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        if not out:
            out.append(("-" if a < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_coeffs(f: IntPoly) -> str:
    return ",".join(str(a) for a in f.coeffs) if f.coeffs else "0"


# -------------------------------------------------------- division, resultant


def pseudo_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """lc(b)^(deg a - deg b + 1) * a = q*b + r over the integers."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lc
    delta = a.degree - db
    if delta < 0:
        return IntPoly(()), a
    q = [0] * (delta + 1)
    for k in range(delta, -1, -1):
        lead = r[k + db] if k + db < len(r) else 0
        q = [c * lb for c in q]
        r = [c * lb for c in r]
        q[k] += lead
        for j, bc in enumerate(b.coeffs):
            r[k + j] -= lead * bc
    return IntPoly(q), IntPoly(r)


def divmod_monic(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Exact integer division by a monic polynomial."""
    if b.lc != 1:
        raise InvalidInput("divisor must be monic")
    r = list(a.coeffs)
    db = b.degree
    if len(r) - 1 < db:
        return IntPoly(()), a
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        lead = r[k + db]
        q[k] = lead
        if lead:
            for j, bc in enumerate(b.coeffs):
                r[k + j] -= lead * bc
    return IntPoly(q), IntPoly(r[:db])


def divides_exactly(a: IntPoly, b: IntPoly) -> IntPoly | None:
    """Return a/b if b divides a in Z[x], else None."""
    if b.is_zero():
        return None
    q, r = pseudo_divmod(a, b)
    if not r.is_zero():
        return None
    scale = b.lc ** (a.degree - b.degree + 1)
    if any(c % scale for c in q.coeffs):
        return None
    return IntPoly(c // scale for c in q.coeffs)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix (Bareiss)."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f.lc**n
    if n == 0:
        return g.lc**m
    size = m + n
    rows = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: IntPoly) -> int:
    """Disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    f = as_poly(f)
    if f.is_zero():
        raise InvalidInput("discriminant of the zero polynomial")
    n = f.degree
    if n < 1:
        raise InvalidInput("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d, rem = divmod(sign * r, f.lc)
    assert rem == 0
    return d


def gcd_over_q(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd in Q[x] (normalized with positive lc), via primitive PRS."""
    a, b = f.primitive_part(), g.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = pseudo_divmod(a, b)
        a, b = b, r.primitive_part()
    return a.primitive_part()


def charpoly_of_element(f: IntPoly, g: Sequence) -> list[Fraction]:
    """Characteristic polynomial of g(theta) in Q[x]/(f), f monic.

    ``g`` is a coefficient sequence (constant first) of rationals.  The result
    is a monic coefficient list over Q, constant term first, computed from
    the multiplication matrix by Faddeev-LeVerrier.
    """
    n = f.degree
    if f.lc != 1:
        raise InvalidInput("charpoly needs a monic modulus")

    def reduce(c: list) -> list:
        c = list(c) + [Fraction(0)] * max(0, n - len(c))
        for k in range(len(c) - 1, n - 1, -1):
            t = c[k]
            if t:
                for j in range(n):
                    c[k - n + j] -= t * f.coeffs[j]
            c[k] = Fraction(0)
        return c[:n]

    def mul(a: list, b: list) -> list:
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return reduce(out)

    gv = reduce([Fraction(c) for c in g])
    cols = []
    basis = [Fraction(0)] * n
    basis[0] = Fraction(1)
    cur = basis
    for _ in range(n):
        cols.append(mul(gv, cur))
        cur = mul(cur, [Fraction(0), Fraction(1)])
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    # Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = [[sum(mat[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        mk = am
        amk = [[sum(mat[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(amk[i][i] for i in range(n)) / k
    return coeffs


def integral_charpoly(f: IntPoly, g: Sequence) -> IntPoly:
    """charpoly_of_element, required to have integer coefficients."""
    c = charpoly_of_element(f, g)
    if any(x.denominator != 1 for x in c):
        raise InvalidInput("element is not integral")
    return IntPoly(int(x) for x in c)
