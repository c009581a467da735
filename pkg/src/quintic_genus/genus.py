"""Genus numbers of quintic fields via Ishida's criterion.

For K = Q[x]/(f) of degree 5 let t be the number of primes p = 1 (mod 5)
totally ramified in K, plus one if 5 is totally ramified and the completion
at 5 satisfies condition (star).  Then g_K = 5^t, or 5^(t-1) when K/Q is
cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import (
    FactorizationTimeout,
    InconsistentResult,
    InvalidInput,
    IrregularSplitting,
)
from .localfields.eisenstein import eisenstein_generator_at_5, star_condition
from .localfields.splitting import is_inert, is_totally_ramified
from .polycore.arith import factorint, iroot, primes_from, valuation
from .polycore.intpoly import IntPoly, as_poly, discriminant, format_poly, integral_charpoly
from .polycore.irreducible import is_irreducible_over_q
from .polycore.modp import factor_mod_p
from .polycore.sturm import sturm_real_root_count

DEFAULT_SAMPLE_BOUND = 200
TRIAL_LIMIT = 10**6
# An unfactored cofactor with every prime factor above TRIAL_LIMIT can hide a
# tame totally ramified prime q only if q^4 divides it.
SAFE_COFACTOR = TRIAL_LIMIT**4


def _check_quintic(f) -> IntPoly:
    f = as_poly(f)
    if f.degree != 5 or f.lc != 1:
        raise InvalidInput(f"{f} is not a monic quintic")
    return f


# ------------------------------------------------------- generator retries


def alternative_generators(f: IntPoly):
    """Defining polynomials of the same field: char polys of theta + c, then theta^2 + c theta."""
    for c in range(1, 6):
        yield f.shift(-c)  # char poly of theta + c is f(x - c)
    for c in range(1, 6):
        g = integral_charpoly(f, [Fraction(0), Fraction(c), Fraction(1)])
        if discriminant(g) != 0:
            yield g


def with_generator_retry(test: Callable[[IntPoly, int], bool], f: IntPoly, p: int) -> bool:
    """Evaluate a local predicate, switching generator on IrregularSplitting."""
    try:
        return test(f, p)
    except IrregularSplitting as first:
        for g in alternative_generators(f):
            try:
                return test(g, p)
            except IrregularSplitting:
                continue
        raise first


# ------------------------------------------------------- ramification


@dataclass(frozen=True)
class RamifiedPrime:
    prime: int
    star: bool | None = None  # only meaningful at 5


def factor_discriminant(disc: int) -> tuple[dict[int, int], int]:
    """Factor disc; returns (known factorization, harmless unfactored cofactor)."""
    try:
        return factorint(disc, trial_limit=TRIAL_LIMIT), 1
    except FactorizationTimeout as exc:
        if exc.cofactor < SAFE_COFACTOR:
            return exc.known, exc.cofactor
        raise


def ramification_product(f) -> list[RamifiedPrime]:
    """Primes p = 0, 1 (mod 5) counted by Ishida's t, in increasing order."""
    f = _check_quintic(f)
    disc = discriminant(f)
    if disc == 0:
        raise InvalidInput(f"{f} is not squarefree")
    facs, _ = factor_discriminant(disc)
    out = []
    for p, e in sorted(facs.items()):
        if p % 5 not in (0, 1) or e < 4:
            # a totally ramified quintic prime has v_p(disc K) >= 4
            continue
        if not with_generator_retry(is_totally_ramified, f, p):
            continue
        if p == 5:
            if star_condition(eisenstein_generator_at_5(f)):
                out.append(RamifiedPrime(5, True))
        else:
            out.append(RamifiedPrime(p))
    return out


# ------------------------------------------------------- cyclicity


@dataclass(frozen=True)
class CyclicityVerdict:
    cyclic: bool
    witness_prime: int | None = None
    witness_shape: tuple[int, ...] | None = None
    sample_bound: int | None = None
    disc_fourth_power: bool | None = None

    @property
    def evidence(self) -> str:
        if not self.cyclic:
            if self.witness_prime is not None:
                return "deterministic-witness"
            return "discriminant-not-square"
        return f"sampled-bound B={self.sample_bound}"

    def __str__(self):
        if not self.cyclic:
            if self.witness_prime is not None:
                shape = "+".join(map(str, self.witness_shape))
                return f"non-cyclic (p={self.witness_prime}, shape {shape})"
            return "non-cyclic (disc is not a square)"
        return f"cyclic ({self.evidence}, fourth-power disc: {self.disc_fourth_power})"


def _is_power(n: int, k: int) -> bool:
    r = iroot(abs(n), k)
    return r**k == abs(n)


def classify_cyclic(f, sample_bound: int = DEFAULT_SAMPLE_BOUND) -> CyclicityVerdict:
    """C_5 or not, from Frobenius cycle shapes at unramified primes.

    A C_5 Frobenius is trivial or a 5-cycle, so any mixed factorization
    shape disproves cyclicity.  Surviving sample_bound primes is evidence,
    not proof, and is tagged as such.  C_5 lies in A_5, so a non-square
    discriminant also disproves it; a fourth-power |disc| is only reported,
    since disc(f) = d_K * index^2 need not be a fourth power.
    """
    f = _check_quintic(f)
    disc = discriminant(f)
    checked = 0
    for p in primes_from(2):
        if disc % p == 0:
            continue
        degs = sorted(factor_mod_p(f, p).degrees)
        if len(set(degs)) > 1 or degs not in ([1] * 5, [5]):
            return CyclicityVerdict(False, witness_prime=p, witness_shape=tuple(degs))
        checked += 1
        if checked >= sample_bound:
            break
    fourth = _is_power(disc, 4)
    if disc < 0 or not _is_power(disc, 2):
        return CyclicityVerdict(False, sample_bound=sample_bound, disc_fourth_power=fourth)
    return CyclicityVerdict(True, sample_bound=sample_bound, disc_fourth_power=fourth)


# ------------------------------------------------------- certificates


@dataclass(frozen=True)
class GenusCertificate:
    poly: IntPoly
    disc: int
    signature_i: int
    ramification_product: tuple[int, ...]
    star_at_5: bool
    cyclic: CyclicityVerdict
    genus_number: int
    notes: tuple[str, ...] = field(default=())

    @property
    def t(self) -> int:
        return len(self.ramification_product)

    @property
    def is_cyclic(self) -> bool:
        return self.cyclic.cyclic

    def as_record(self) -> dict:
        flags = [self.cyclic.evidence]
        if self.star_at_5:
            flags.append("star-at-5")
        flags.extend(self.notes)
        return {
            "poly": format_poly(self.poly),
            "disc": self.disc,
            "i": self.signature_i,
            "t": self.t,
            "ramification_product": list(self.ramification_product),
            "cyclic": self.is_cyclic,
            "genus": self.genus_number,
            "flags": flags,
        }

    def lines(self) -> list[str]:
        rows = [
            ("polynomial", format_poly(self.poly)),
            ("discriminant", str(self.disc)),
            ("complex places i", str(self.signature_i)),
            ("counted primes", ", ".join(map(str, self.ramification_product)) or "none"),
            ("t", str(self.t)),
            ("cyclicity", str(self.cyclic)),
            ("genus number", str(self.genus_number)),
        ]
        width = max(len(k) for k, _ in rows)
        return [f"{k.ljust(width)}  {v}" for k, v in rows]


def signature_i(f) -> int:
    r1 = sturm_real_root_count(as_poly(f))
    return (as_poly(f).degree - r1) // 2


def genus_number(f, sample_bound: int = DEFAULT_SAMPLE_BOUND, check_irreducible: bool = True) -> GenusCertificate:
    f = _check_quintic(f)
    if check_irreducible:
        irr = is_irreducible_over_q(f)
        if irr.status != "irreducible":
            raise InvalidInput(f"{format_poly(f)} is not certified irreducible ({irr.status})")
    disc = discriminant(f)
    ram = ramification_product(f)
    primes = tuple(r.prime for r in ram)
    t = len(primes)
    verdict = classify_cyclic(f, sample_bound)
    if verdict.cyclic:
        if t == 0:
            raise InconsistentResult(f"{format_poly(f)} looks cyclic but has no counted prime")
        g = 5 ** (t - 1)
    else:
        g = 5**t
    return GenusCertificate(
        poly=f,
        disc=disc,
        signature_i=signature_i(f),
        ramification_product=primes,
        star_at_5=any(r.star for r in ram),
        cyclic=verdict,
        genus_number=g,
    )


# ------------------------------------------------------- screen


def norm_euclidean_screen(f) -> bool:
    """2 and 5 inert, 7 totally ramified, no p = 1 (mod 5) totally ramified."""
    f = _check_quintic(f)
    if not with_generator_retry(is_inert, f, 2):
        return False
    if not with_generator_retry(is_inert, f, 5):
        return False
    if not with_generator_retry(is_totally_ramified, f, 7):
        return False
    return not any(r.prime % 5 == 1 for r in ramification_product(f))


def construct_screen_witness(max_tries: int = 1000) -> IntPoly:
    """Smallest-constant-term quintic built by CRT that passes the screen.

    Mod 10 the coefficients match x^5 + x^2 + 1 (mod 2) and the
    Artin-Schreier quintic x^5 - x - 1 (mod 5).  Mod 49 the polynomial is
    Eisenstein at 7: a_1..a_4 = 0 mod 7, a_0 = 7 mod 49.
    """
    mod2 = [1, 0, 1, 0, 0]
    mod5 = [-1, -1, 0, 0, 0]
    base = []
    for i in range(5):
        m7 = 7 if i == 0 else 0
        mod7 = 49 if i == 0 else 7
        base.append(_crt([(mod2[i], 2), (mod5[i], 5), (m7, mod7)]))
    moduli = [490, 70, 70, 70, 70]
    for k in range(max_tries):
        for sign in (1, -1):
            coeffs = list(base)
            coeffs[0] = base[0] + sign * k * moduli[0]
            if valuation(coeffs[0], 7) != 1:
                continue
            f = IntPoly(coeffs + [1])
            if norm_euclidean_screen(f):
                return f
    raise InconsistentResult("no screen witness within the search bound")


def _crt(pairs) -> int:
    x, m = 0, 1
    for r, n in pairs:
        t = ((r - x) * pow(m, -1, n)) % n
        x += m * t
        m *= n
    x %= m
    return x - m if x > m // 2 else x
