"""Certified values of the quintic density constants.

Every constant is an Euler product.  The factors for p <= P are multiplied
exactly as integers (numerator and denominator kept separately, so huge
cutoffs avoid gcd costs), and the omitted tail is bracketed by rationals:

* products of (1 - e_p) or (1 + 4 e_p) over p = 1 (mod 5), with
  e_p = 1/(p^4 m(p)) < p^-4, use S(P) = P^-3/3 >= sum_{n>P} n^-4 and
  1 - S <= prod (1 - e_p) <= 1 <= prod (1 + 4 e_p) <= 1/(1 - 4S);
* the product over all p of 1 + p^-2 - p^-4 - p^-5 uses the elementary
  bound 1/(1 - 1/P), intersected with an analytic bracket obtained from
  prime zeta values at a fixed reference cutoff.

Intervals are nested in P by construction (see the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import InconsistentResult, InvalidInput
from .localfields.etale import LocalConditionSet, local_density_factor, total_mass, verified_total_mass
from .polycore.arith import iroot, is_prime, primes_up_to

MAX_CUTOFF = 10**7
MAX_BHARGAVA_DIGITS = 30
BHARGAVA_REFERENCE_CUTOFF = 1000
BHARGAVA_DEFAULT_CUTOFF = 10**4
MAX_SIEVE_Y = 10**6
SIEVE_MAJORANT_CUTOFF = 10**4
MAX_LOWER_BOUND_K = 20

SIGNATURE_PREFACTOR = {0: Fraction(1, 240), 1: Fraction(1, 24), 2: Fraction(1, 16)}


# ---------------------------------------------------------------- local data


def m(p: int) -> Fraction:
    """Total mass of quintic etale algebras over Q_p."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    return verified_total_mass(p)


def m_star(p: int) -> Fraction:
    """m(p), except m*(5) = 5^4 m(5)."""
    return m(p) * 625 if p == 5 else m(p)


def local_norm(p: int) -> int:
    """p^4 m(p) = p^4 + p^3 + 2p^2 + 2p + 1."""
    return p**4 + p**3 + 2 * p * p + 2 * p + 1


def check_factor_identity(p: int) -> None:
    if total_mass(p) * p**4 != local_norm(p):
        raise InconsistentResult(f"m({p}) p^4 != p^4+p^3+2p^2+2p+1")


FIVE_NORM = 5**4 * 811  # 5^8 m(5) = 506875
GENUS_PREFACTOR = 1 - Fraction(1, FIVE_NORM)  # 506874/506875
AVERAGE_PREFACTOR = 1 + Fraction(4, FIVE_NORM)


def _product_tree(xs: list[int]) -> int:
    if not xs:
        return 1
    while len(xs) > 1:
        xs = [xs[i] * xs[i + 1] if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
    return xs[0]


def _one_mod_five(P: int) -> list[int]:
    return [p for p in primes_up_to(P) if p % 5 == 1]


# ---------------------------------------------------------------- values


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class CertifiedValue:
    """num/den is the exact partial product up to ``cutoff``; the tail factor lies in [tail_low, tail_high]."""

    num: int
    den: int
    tail_low: Fraction
    tail_high: Fraction
    cutoff: int
    label: str = ""

    @property
    def partial(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def low(self) -> Fraction:
        return self.partial * self.tail_low

    @property
    def high(self) -> Fraction:
        return self.partial * self.tail_high

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def _scaled_bounds(self, places: int) -> tuple[int, int]:
        """floor(low 10^places), ceil(high 10^places), by integer arithmetic."""
        s = 10**places
        lo = _floor_div(self.num * self.tail_low.numerator * s, self.den * self.tail_low.denominator)
        hi = _ceil_div(self.num * self.tail_high.numerator * s, self.den * self.tail_high.denominator)
        return lo, hi

    def width_below(self, eps: Fraction) -> bool:
        gap = self.tail_high - self.tail_low
        return self.num * gap.numerator * eps.denominator < eps.numerator * self.den * gap.denominator

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.low <= x <= self.high

    def nested_in(self, other: "CertifiedValue") -> bool:
        return other.low <= self.low and self.high <= other.high

    def bounds_str(self, places: int) -> tuple[str, str]:
        lo, hi = self._scaled_bounds(places)
        return _fixed(lo, places), _fixed(hi, places)

    def midpoint_str(self, places: int) -> str:
        lo, hi = self._scaled_bounds(places + 2)
        mid = Decimal(lo + hi) / 2 / Decimal(10 ** (places + 2))
        return str(mid.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))

    def rounded(self, places: int) -> str | None:
        """The value rounded to ``places`` decimals, or None if the interval straddles a rounding boundary."""
        s = 10**places
        # round-half-up of x*s is floor(x*s + 1/2); compare both endpoints
        lo = _floor_div(2 * self.num * self.tail_low.numerator * s + self.den * self.tail_low.denominator,
                        2 * self.den * self.tail_low.denominator)
        hi_num = 2 * self.num * self.tail_high.numerator * s + self.den * self.tail_high.denominator
        hi_den = 2 * self.den * self.tail_high.denominator
        hi = _floor_div(hi_num, hi_den)
        if lo != hi:
            return None
        return _fixed(lo, places)

    def __mul__(self, other: "CertifiedValue") -> "CertifiedValue":
        return CertifiedValue(
            self.num * other.num,
            self.den * other.den,
            self.tail_low * other.tail_low,
            self.tail_high * other.tail_high,
            min(self.cutoff, other.cutoff),
            f"{self.label} * {other.label}",
        )

    def scaled(self, c: Fraction, label: str | None = None) -> "CertifiedValue":
        if c <= 0:
            raise InvalidInput("scale factor must be positive")
        return CertifiedValue(
            self.num * c.numerator, self.den * c.denominator, self.tail_low, self.tail_high, self.cutoff,
            label or self.label,
        )

    def as_record(self, places: int) -> dict:
        lo, hi = self.bounds_str(places)
        return {
            "name": self.label,
            "value": self.midpoint_str(places),
            "low": lo,
            "high": hi,
            "cutoff": self.cutoff,
        }


def _fixed(n: int, places: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n)
    if places == 0:
        return f"{sign}{n}"
    s = str(n).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}"


# ---------------------------------------------------------------- 1 mod 5 products


def _tail_sum_bound(P: int) -> Fraction:
    """Upper bound for sum_{n > P} n^-4."""
    return Fraction(1, 3 * max(P, 1) ** 3)


def _genus_parts(P: int, skip=frozenset()) -> tuple[int, int]:
    nums, dens = [], []
    for p in _one_mod_five(P):
        check_factor_identity(p)
        n = local_norm(p)
        if p in skip:
            nums.append(1)
        else:
            nums.append(n - 1)
        dens.append(n)
    return _product_tree(nums), _product_tree(dens)


def _cutoff_for(target_digits: int | None, cutoff: int | None, factor: int) -> int:
    if cutoff is not None:
        if cutoff < 1 or cutoff > MAX_CUTOFF:
            raise InvalidInput(f"cutoff must lie in [1, {MAX_CUTOFF}]")
        return cutoff
    if target_digits is None:
        target_digits = 10
    if target_digits < 0:
        raise InvalidInput("target_digits must be nonnegative")
    # width <= factor * S(P) = factor / (3 P^3) < 10^-D
    P = iroot(factor * 10**target_digits // 3, 3) + 1
    if P > MAX_CUTOFF:
        raise InvalidInput(
            f"{target_digits} digits need a cutoff above {MAX_CUTOFF} with the elementary tail bound"
        )
    return max(P, 11)


def _ensure_width(value: CertifiedValue, target_digits: int | None, explicit_cutoff: bool):
    if target_digits is None or explicit_cutoff:
        return value
    if not value.width_below(Fraction(1, 10**target_digits)):
        raise InconsistentResult(f"{value.label}: width target 10^-{target_digits} missed at P={value.cutoff}")
    return value


def genus_one_density(target_digits: int | None = None, cutoff: int | None = None) -> CertifiedValue:
    """(506874/506875) prod_{p = 1 mod 5} (1 - 1/(p^4 m(p)))."""
    P = _cutoff_for(target_digits, cutoff, 2)
    num, den = _genus_parts(P)
    S = _tail_sum_bound(P)
    val = CertifiedValue(
        num * GENUS_PREFACTOR.numerator, den * GENUS_PREFACTOR.denominator, 1 - S, Fraction(1), P, "genus-one density"
    )
    return _ensure_width(val, target_digits, cutoff is not None)


def average_genus_constant(target_digits: int | None = None, cutoff: int | None = None) -> CertifiedValue:
    """(1 + 4/506875) prod_{p = 1 mod 5} (1 + 4/(p^4 m(p)))."""
    P = _cutoff_for(target_digits, cutoff, 6)
    nums, dens = [], []
    for p in _one_mod_five(P):
        check_factor_identity(p)
        n = local_norm(p)
        nums.append(n + 4)
        dens.append(n)
    S = _tail_sum_bound(P)
    if 4 * S >= 1:
        raise InvalidInput("cutoff too small for the tail bound")
    val = CertifiedValue(
        _product_tree(nums) * AVERAGE_PREFACTOR.numerator,
        _product_tree(dens) * AVERAGE_PREFACTOR.denominator,
        Fraction(1),
        1 / (1 - 4 * S),
        P,
        "average genus number",
    )
    return _ensure_width(val, target_digits, cutoff is not None)


def first_primes_one_mod_five(k: int) -> list[int]:
    out, p = [], 10
    while len(out) < k:
        p += 1
        if p % 5 == 1 and is_prime(p):
            out.append(p)
    return out


def lower_bound_5k(k: int, target_digits: int | None = None, cutoff: int | None = None) -> CertifiedValue:
    """Density of fields with exactly the first k primes = 1 (mod 5) totally ramified and no others.

    U = first k primes = 1 (mod 5): factor 1/(p^4 m(p)) for p in U, (1 - 1/(p^4 m(p))) otherwise,
    times 506874/506875.
    """
    if not 0 <= k <= MAX_LOWER_BOUND_K:
        raise InvalidInput(f"k must lie in [0, {MAX_LOWER_BOUND_K}]")
    U = first_primes_one_mod_five(k)
    P = _cutoff_for(target_digits, cutoff, 2)
    if U and P < U[-1]:
        if cutoff is not None:
            raise InvalidInput(f"cutoff must be at least {U[-1]} for k={k}")
        P = U[-1]
    num, den = _genus_parts(P, skip=frozenset(U))
    S = _tail_sum_bound(P)
    val = CertifiedValue(
        num * GENUS_PREFACTOR.numerator, den * GENUS_PREFACTOR.denominator, 1 - S, Fraction(1), P,
        f"lower bound constant k={k}",
    )
    return _ensure_width(val, target_digits, cutoff is not None)


# ---------------------------------------------------------------- screen


def screen_local_factors() -> dict[int, Fraction]:
    """C_2(inert), C_5(inert), C_7(totally ramified), from the local enumeration."""
    return {
        2: local_density_factor(2, LocalConditionSet.inert(2)),
        5: local_density_factor(5, LocalConditionSet.inert(5)),
        7: local_density_factor(7, LocalConditionSet.totally_ramified(7)),
    }


def screen_density(target_digits: int | None = None, cutoff: int | None = None) -> CertifiedValue:
    """Density of fields: 2, 5 inert, 7 totally ramified, no p = 1 (mod 5) totally ramified."""
    P = _cutoff_for(target_digits, cutoff, 2)
    num, den = _genus_parts(P)
    c = Fraction(1)
    for v in screen_local_factors().values():
        c *= v
    S = _tail_sum_bound(P)
    val = CertifiedValue(num * c.numerator, den * c.denominator, 1 - S, Fraction(1), P, "screen density")
    return _ensure_width(val, target_digits, cutoff is not None)


# ---------------------------------------------------------------- Bhargava constants


def _log_series(K: int) -> list[Fraction]:
    """Coefficients c_k, k <= K, of log(1 + u^2 - u^4 - u^5)."""
    w = [Fraction(0)] * (K + 1)
    for i, c in ((2, 1), (4, -1), (5, -1)):
        if i <= K:
            w[i] = Fraction(c)
    out = [Fraction(0)] * (K + 1)
    power = [Fraction(1)] + [Fraction(0)] * K
    for j in range(1, K // 2 + 1):
        nxt = [Fraction(0)] * (K + 1)
        for a, x in enumerate(power):
            if x:
                for b in range(2, K + 1 - a):
                    if w[b]:
                        nxt[a + b] += x * w[b]
        power = nxt
        sign = 1 if j % 2 else -1
        for k in range(K + 1):
            out[k] += sign * power[k] / j
    return out


# On |u| <= 1/2, |u^2 - u^4 - u^5| <= 11/32, so |log(1 + w)| <= -log(21/32) < 0.4213
# and Cauchy's estimate gives |c_k| <= 0.4213 * 2^k.
CAUCHY_CONSTANT = Fraction(4213, 10000)


def _bhargava_factor(p: int) -> tuple[int, int]:
    return p**5 + p**3 - p - 1, p**5


def _to_fraction(x: mpmath.mpf) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2 ** (-exp))


@lru_cache(maxsize=None)
def _analytic_bracket(target_digits: int) -> tuple[Fraction, Fraction]:
    """Rational bracket for prod_p (1 + p^-2 - p^-4 - p^-5) from prime zeta values.

    log of the tail beyond P0 equals sum_k c_k S_k(P0), S_k(P0) = sum_{p > P0} p^-k
    = P(k) - sum_{p <= P0} p^-k with P the prime zeta function.  Truncating at K
    costs at most sum_{k > K} 0.4213 2^k P0^(1-k)/(k-1).
    """
    P0 = BHARGAVA_REFERENCE_CUTOFF
    eps = Fraction(1, 10 ** (target_digits + 8))
    K = 2
    while CAUCHY_CONSTANT * P0 * Fraction(2, P0) ** (K + 1) / (1 - Fraction(2, P0)) >= eps:
        K += 1
    trunc = CAUCHY_CONSTANT * P0 * Fraction(2, P0) ** (K + 1) / (1 - Fraction(2, P0))
    coeffs = _log_series(K)
    primes = primes_up_to(P0)
    with mpmath.workdps(target_digits + 40):
        total = mpmath.mpf(0)
        for k in range(2, K + 1):
            if coeffs[k]:
                head = mpmath.fsum(mpmath.mpf(p) ** (-k) for p in primes)
                tail = mpmath.primezeta(k) - head
                total += mpmath.mpf(coeffs[k].numerator) / coeffs[k].denominator * tail
        pad = mpmath.mpf(10) ** (-(target_digits + 30))
        radius = mpmath.mpf(trunc.numerator) / trunc.denominator + pad
        lo = mpmath.exp(total - radius) * (1 - pad)
        hi = mpmath.exp(total + radius) * (1 + pad)
    n = _product_tree([_bhargava_factor(p)[0] for p in primes])
    d = _product_tree([_bhargava_factor(p)[1] for p in primes])
    head = Fraction(n, d)
    return head * _to_fraction(lo), head * _to_fraction(hi)


def euler_product_all_primes(target_digits: int = 10, cutoff: int | None = None) -> CertifiedValue:
    """prod_p (1 + p^-2 - p^-4 - p^-5), certified."""
    if not 0 <= target_digits <= MAX_BHARGAVA_DIGITS:
        raise InvalidInput(f"target_digits must lie in [0, {MAX_BHARGAVA_DIGITS}]")
    P = BHARGAVA_DEFAULT_CUTOFF if cutoff is None else cutoff
    if not 2 <= P <= MAX_CUTOFF:
        raise InvalidInput(f"cutoff must lie in [2, {MAX_CUTOFF}]")
    primes = primes_up_to(P)
    num = _product_tree([_bhargava_factor(p)[0] for p in primes])
    den = _product_tree([_bhargava_factor(p)[1] for p in primes])
    partial = Fraction(num, den)
    # elementary: 1 <= tail <= 1/(1 - sum_{n>P} n^-2) <= 1/(1 - 1/P)
    lo, hi = partial, partial / (1 - Fraction(1, P))
    alo, ahi = _analytic_bracket(target_digits)
    lo, hi = max(lo, alo), min(hi, ahi)
    if lo > hi:
        raise InconsistentResult("analytic and elementary brackets are disjoint")
    val = CertifiedValue(num, den, lo / partial, hi / partial, P, "prod (1+p^-2-p^-4-p^-5)")
    if cutoff is None and not val.width_below(Fraction(1, 10**target_digits)):
        raise InconsistentResult("Euler product bracket missed its width target")
    return val


def bhargava_constant(i: int, target_digits: int = 10, cutoff: int | None = None) -> CertifiedValue:
    """C^(i) = c_i prod_p (1 + p^-2 - p^-4 - p^-5), c_0, c_1, c_2 = 1/240, 1/24, 1/16."""
    if i not in SIGNATURE_PREFACTOR:
        raise InvalidInput("signature index must be 0, 1 or 2")
    return euler_product_all_primes(target_digits, cutoff).scaled(SIGNATURE_PREFACTOR[i], f"C^({i})")


def genus_one_slope(i: int, target_digits: int = 10) -> CertifiedValue:
    """C^(i) times the genus-one density: the leading coefficient of the genus-one count."""
    return bhargava_constant(i, target_digits) * genus_one_density(min(target_digits + 1, 20))


# ---------------------------------------------------------------- sieve


def sieve_primes(Y: int) -> list[int]:
    """Primes of T = {5} and p = 1 (mod 5), up to Y."""
    return [p for p in primes_up_to(Y) if p == 5 or p % 5 == 1]


def sieve_norm(p: int) -> int:
    """p^4 m*(p)."""
    return FIVE_NORM if p == 5 else local_norm(p)


def _signed_sum(Y: int, primes: list[int], abs_values: bool) -> tuple[int, int]:
    """sum over squarefree f <= Y built from ``primes`` of prod_{p|f} (-1/N_p), as (num, den)."""
    norms = [sieve_norm(p) for p in primes]
    terms: list[tuple[int, int]] = []

    def rec(bound: int, start: int, sign: int, den: int):
        terms.append((sign, den))
        for j in range(start, len(primes)):
            p = primes[j]
            if p > bound:
                break
            rec(bound // p, j + 1, sign if abs_values else -sign, den * norms[j])

    rec(Y, 0, 1, 1)  # depth is at most omega(f)
    # tree-sum fractions without normalizing
    level = terms
    while len(level) > 1:
        nxt = []
        for k in range(0, len(level), 2):
            if k + 1 < len(level):
                a, b = level[k]
                c, d = level[k + 1]
                nxt.append((a * d + c * b, b * d))
            else:
                nxt.append(level[k])
        level = nxt
    return level[0]


def truncated_sieve_density(Y: int) -> Fraction:
    """sum_{f in T, f <= Y} mu(f) / prod_{p|f} p^4 m*(p), exactly."""
    if not 1 <= Y <= MAX_SIEVE_Y:
        raise InvalidInput(f"Y must lie in [1, {MAX_SIEVE_Y}]")
    n, d = _signed_sum(Y, sieve_primes(Y), abs_values=False)
    return Fraction(n, d)


@lru_cache(maxsize=None)
def _sieve_total_upper() -> Fraction:
    """Upper bound for prod_{p in T} (1 + 1/(p^4 m*(p)))."""
    P = SIEVE_MAJORANT_CUTOFF
    ps = sieve_primes(P)
    num = _product_tree([sieve_norm(p) + 1 for p in ps])
    den = _product_tree([sieve_norm(p) for p in ps])
    S = _tail_sum_bound(P)
    return Fraction(num, den) / (1 - S)


@dataclass(frozen=True)
class SievePrediction:
    Y: int
    value: Fraction
    majorant: Fraction

    @property
    def low(self) -> Fraction:
        return self.value - self.majorant

    @property
    def high(self) -> Fraction:
        return self.value + self.majorant

    def nested_in(self, other: "SievePrediction") -> bool:
        return other.low <= self.low and self.high <= other.high


def sieve_majorant(Y: int) -> Fraction:
    """Bound for sum_{f in T, f > Y} prod_{p|f} 1/(p^4 m*(p))."""
    n, d = _signed_sum(Y, sieve_primes(Y), abs_values=True)
    return _sieve_total_upper() - Fraction(n, d)


def sieve_prediction(Y: int) -> SievePrediction:
    return SievePrediction(Y, truncated_sieve_density(Y), sieve_majorant(Y))


def sieve_product(Y: int) -> Fraction:
    """(506874/506875) prod_{p = 1 mod 5, p <= Y} (1 - 1/(p^4 m(p))), exactly."""
    num, den = _genus_parts(Y)
    return GENUS_PREFACTOR * Fraction(num, den) if Y >= 5 else Fraction(num, den)


__all__ = [
    "CertifiedValue",
    "SievePrediction",
    "average_genus_constant",
    "bhargava_constant",
    "genus_one_density",
    "local_norm",
    "lower_bound_5k",
    "m",
    "m_star",
    "screen_density",
    "sieve_majorant",
    "sieve_prediction",
    "genus_one_slope",
    "truncated_sieve_density",
]
