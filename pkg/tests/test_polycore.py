import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_genus.errors import FactorizationTimeout, InvalidInput, LiftingObstruction
from quintic_genus.polycore import modp
from quintic_genus.polycore.arith import factorint, is_prime, next_prime, primes_up_to, valuation
from quintic_genus.polycore.hensel import hensel_lift_factorization, lifted_product
from quintic_genus.polycore.intpoly import IntPoly, discriminant, format_coeffs, format_poly, parse_poly, resultant
from quintic_genus.polycore.irreducible import is_irreducible_over_q
from quintic_genus.polycore.modp import ModPoly, factor_mod_p
from quintic_genus.polycore.sturm import signature, sturm_real_root_count

from .conftest import COS11, X5_11, X5_X_1

small_primes = st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
coeff = st.integers(-50, 50)
monic_quintics = st.tuples(coeff, coeff, coeff, coeff, coeff).map(lambda c: IntPoly(list(c) + [1]))


# ------------------------------------------------------------ brute-force oracles over F_p


def _monic_polys(deg, p):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def _brute_irreducible(g, p):
    """No monic factor of degree 1..deg/2, by exhaustive division."""
    d = len(g) - 1
    for k in range(1, d // 2 + 1):
        for h in _monic_polys(k, p):
            if not modp.rem(g, h, p):
                return False
    return True


def _poly_mod(f, p):
    return modp._trim([c % p for c in f.coeffs])


# ------------------------------------------------------------ integers


def test_factorint_matches_trial_division():
    for n in list(range(2, 3000)) + [2**61 - 1, 10**12 + 39, 600851475143]:
        fac = factorint(n)
        assert math.prod(p**e for p, e in fac.items()) == n
        assert all(is_prime(p) for p in fac)


def test_factorint_timeout_reports_cofactor():
    a = next_prime(10**30)
    b = next_prime(a)
    with pytest.raises(FactorizationTimeout) as info:
        factorint(a * b * 12, rho_budget=50)
    assert info.value.cofactor == a * b
    assert info.value.known == {2: 2, 3: 1}


def test_is_prime_against_sieve():
    sieve = set(primes_up_to(20000))
    assert all(is_prime(n) == (n in sieve) for n in range(20001))


# ------------------------------------------------------------ discriminants


def test_discriminant_examples():
    assert discriminant(X5_X_1) == 2869
    assert discriminant(X5_11) == 45753125 == 5**5 * 11**4
    assert discriminant(IntPoly.parse("x^2 - 1")) == 4


def test_discriminant_of_zero_polynomial_is_rejected():
    with pytest.raises(InvalidInput):
        discriminant(IntPoly([0]))


@settings(max_examples=100)
@given(st.integers(-50, 50), st.integers(-50, 50))
def test_trinomial_discriminant_identity(a, b):
    assert discriminant(IntPoly([b, a, 0, 0, 0, 1])) == 256 * a**5 + 3125 * b**4


@given(st.integers(-10**6, 10**6).filter(bool))
def test_binomial_discriminant_identity(b):
    assert discriminant(IntPoly([b, 0, 0, 0, 0, 1])) == 5**5 * b**4


@settings(max_examples=40)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_discriminant_is_product_of_root_differences(roots):
    f = IntPoly([1])
    for r in roots:
        f = f * IntPoly([-r, 1])
    n = len(roots)
    sq = math.prod((roots[i] - roots[j]) ** 2 for i in range(n) for j in range(i + 1, n))
    assert discriminant(f) == sq


def test_resultant_of_linear_factors():
    # Res(x - a, x - b) = a - b up to the usual sign convention
    assert abs(resultant(IntPoly([-3, 1]), IntPoly([-7, 1]))) == 4


# ------------------------------------------------------------ parsing


@given(monic_quintics)
def test_parse_format_round_trip(f):
    assert parse_poly(format_poly(f)) == f
    assert parse_poly(format_coeffs(f)) == f


def test_parse_accepts_both_forms():
    assert parse_poly("-1,-1,0,0,0,1") == X5_X_1
    assert parse_poly("x^5 - x - 1") == X5_X_1
    assert parse_poly("x^5-5*x^4+5") == parse_poly("x^5 - 5x^4 + 5")
    with pytest.raises(InvalidInput):
        parse_poly("x^5 + y")


# ------------------------------------------------------------ factorization mod p


def test_factor_mod_p_examples():
    fac = factor_mod_p(X5_X_1, 2)
    assert sorted(g.coeffs for g, _ in fac.factors) == [(1, 0, 1, 1), (1, 1, 1)]
    assert all(e == 1 for _, e in fac.factors)
    fac5 = factor_mod_p(X5_11, 5)
    assert fac5.factors == ((ModPoly([-1, 1], 5), 5),)
    fac3 = factor_mod_p(X5_11, 3)
    assert fac3.shape() == ((1, 1), (4, 1))
    assert fac3.factors[0][0].coeffs == (1, 1)  # x - 2 = x + 1 mod 3


def test_factor_mod_p_rejects_zero_reduction():
    with pytest.raises(InvalidInput):
        factor_mod_p(IntPoly([3, 6, 9]), 3)


@settings(max_examples=60)
@given(monic_quintics, st.sampled_from([2, 3, 5, 7]))
def test_factor_mod_p_against_brute_force(f, p):
    fac = factor_mod_p(f, p)
    assert fac.product().coeffs == tuple(_poly_mod(f, p))
    for g, _ in fac.factors:
        assert _brute_irreducible(list(g.coeffs), p)


@settings(max_examples=80)
@given(monic_quintics, small_primes)
def test_factor_degrees_sum_and_squarefreeness(f, p):
    d = discriminant(f)
    fac = factor_mod_p(f, p)
    assert sum(g.degree * e for g, e in fac.factors) == 5
    if d:
        assert (d % p == 0) == (not fac.is_squarefree)


def test_seed_does_not_change_factorization():
    f = IntPoly.parse("x^5 + 3*x^3 + x + 7")
    for p in (13, 101, 1009):
        shapes = {factor_mod_p(f, p, seed=s).factors for s in range(5)}
        assert len(shapes) == 1


# ------------------------------------------------------------ Sturm


def test_sturm_examples():
    assert sturm_real_root_count(X5_11) == 1
    assert sturm_real_root_count(X5_X_1) == 1
    assert sturm_real_root_count(COS11) == 5
    assert signature(COS11) == (5, 0)
    assert signature(X5_11) == (1, 2)


def test_sturm_oracles():
    # x^5 - x - 1: local max at -c and local min at +c, c = 5^(-1/4), both negative
    c = 5 ** -0.25
    assert X5_X_1(0) < 0
    assert (-c) ** 5 + c - 1 < 0 and c**5 - c - 1 < 0
    # roots of COS11 are 2 cos(2 pi k / 11), k = 1..5, all real and distinct
    for k in range(1, 6):
        x = 2 * math.cos(2 * math.pi * k / 11)
        assert abs(sum(a * x**i for i, a in enumerate(COS11.coeffs))) < 1e-9


def test_sturm_rejects_repeated_roots_and_names_gcd():
    with pytest.raises(InvalidInput, match="x - 1"):
        sturm_real_root_count(IntPoly([-1, 1]) ** 2 * IntPoly([1, 0, 1]))


@settings(max_examples=60)
@given(monic_quintics)
def test_sturm_parity(f):
    if discriminant(f) == 0:
        return
    assert sturm_real_root_count(f) % 2 == 1


@settings(max_examples=30)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5, unique=True), st.integers(0, 2))
def test_sturm_counts_known_real_roots(roots, extra):
    f = IntPoly([1])
    for r in roots:
        f = f * IntPoly([-r, 1])
    for k in range(1, extra + 1):
        f = f * IntPoly([k, 0, 1])  # x^2 + k has no real roots
    assert sturm_real_root_count(f) == len(roots)


# ------------------------------------------------------------ Hensel


def test_hensel_examples():
    lifted = hensel_lift_factorization(IntPoly.parse("x^2 - 1"), 7, 2, [ModPoly([-1, 1], 7), ModPoly([1, 1], 7)])
    assert {g.coeffs for g in lifted} == {(48, 1), (1, 1)}
    lifted = hensel_lift_factorization(X5_X_1, 2, 4)
    assert sorted(g.degree for g in lifted) == [2, 3]
    assert lifted_product(lifted).coeffs == tuple(c % 16 for c in X5_X_1.coeffs)
    lifted = hensel_lift_factorization(IntPoly.parse("x^2 - 2"), 7, 3, [ModPoly([-3, 1], 7), ModPoly([3, 1], 7)])
    roots = sorted((-g.coeffs[0]) % 343 for g in lifted)
    brute = sorted(r for r in range(343) if (r * r - 2) % 343 == 0)
    assert roots == brute == [108, 235]


def test_hensel_rejects_shared_factors():
    with pytest.raises(LiftingObstruction):
        hensel_lift_factorization(IntPoly.parse("x^2 - 2*x + 1"), 7, 2, [ModPoly([-1, 1], 7), ModPoly([-1, 1], 7)])


@settings(max_examples=40)
@given(monic_quintics, st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 6))
def test_hensel_round_trip(f, p, k):
    if not factor_mod_p(f, p).is_squarefree:
        return
    seeds = factor_mod_p(f, p).factors
    lifted = hensel_lift_factorization(f, p, k)
    assert lifted_product(lifted).coeffs == tuple(modp._trim([c % p**k for c in f.coeffs]))
    for (g, _), h in zip(seeds, lifted):
        assert tuple(modp._trim([c % p for c in h.coeffs])) == g.coeffs


# ------------------------------------------------------------ irreducibility


def test_irreducibility_examples():
    r = is_irreducible_over_q(X5_X_1)
    assert r.status == "irreducible" and r.certificate == "irreducible mod 3"
    r = is_irreducible_over_q(IntPoly.parse("x^5 - 1"))
    assert r.status == "reducible" and r.certificate == "root 1"
    r = is_irreducible_over_q(X5_11)
    assert r.status == "irreducible" and r.certificate == "Eisenstein at 11"


def test_irreducibility_finds_quadratic_factor():
    f = IntPoly.parse("x^2 + 1") * IntPoly.parse("x^3 + x + 3")
    r = is_irreducible_over_q(f)
    assert r.status == "reducible"
    assert r.witness in (IntPoly.parse("x^2 + 1"), IntPoly.parse("x^3 + x + 3"))


@settings(max_examples=40)
@given(monic_quintics)
def test_irreducibility_agrees_with_product_construction(f):
    r = is_irreducible_over_q(f)
    assert r.status in ("irreducible", "reducible")
    if r.status == "reducible":
        w = r.witness
        assert 1 <= w.degree < 5
        from quintic_genus.polycore.intpoly import divides_exactly

        assert divides_exactly(f, w) is not None


def test_valuation():
    assert valuation(5**7 * 3, 5) == 7
    assert valuation(45753125, 11) == 4
