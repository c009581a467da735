import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_genus.errors import InvalidInput
from quintic_genus.localfields.etale import LocalConditionSet, mass_subset
from quintic_genus.polycore.arith import factorint, primes_up_to
from quintic_genus import densities as D


def _one_mod_five_primes(limit):
    return [p for p in primes_up_to(limit) if p % 5 == 1]


def _float_product(limit, weight):
    """Independent float evaluation of prod_{p = 1 mod 5, p <= limit} (1 + weight / N_p)."""
    with mpmath.workdps(30):
        s = mpmath.mpf(0)
        for p in _one_mod_five_primes(limit):
            x = mpmath.mpf(1) / p
            s += mpmath.log1p(weight * x**4 / (1 + x + 2 * x**2 + 2 * x**3 + x**4))
        return mpmath.exp(s)


# ------------------------------------------------------------ local data


def test_mass_examples():
    assert D.m(7) == Fraction(2857, 2401)
    assert D.m(5) == Fraction(811, 625)
    assert 5**8 * D.m(5) == 506875 == D.FIVE_NORM
    assert D.m_star(5) == 811
    assert D.m_star(11) == D.m(11)


def test_mass_agrees_with_local_enumeration():
    for p in (5, 7, 11, 13):
        assert D.m(p) == mass_subset(p, LocalConditionSet.everything(p))


def test_factor_identity_first_fifty_primes():
    primes = D.first_primes_one_mod_five(50)
    assert len(primes) == 50 and primes[:3] == [11, 31, 41]
    for p in primes:
        assert D.m(p) * p**4 == p**4 + p**3 + 2 * p**2 + 2 * p + 1
        assert D.local_norm(p) == p**4 + p**3 + 2 * p**2 + 2 * p + 1


def test_prefactors():
    assert D.GENUS_PREFACTOR == Fraction(506874, 506875) == 1 - 1 / (5**8 * D.m(5))
    assert D.AVERAGE_PREFACTOR == Fraction(506879, 506875)


def test_p11_factor():
    # 11^4 + 11^3 + 2*121 + 2*11 + 1 = 14641 + 1331 + 242 + 22 + 1
    assert D.local_norm(11) == 16237
    below = D.genus_one_density(cutoff=10)
    upto11 = D.genus_one_density(cutoff=11)
    assert upto11.partial / below.partial == Fraction(16236, 16237)
    k1 = D.lower_bound_5k(1, cutoff=11)
    assert k1.partial == below.partial / 16237


def test_empty_product_is_the_prefactor():
    for P in (1, 5, 10):
        assert D.genus_one_density(cutoff=P).partial == Fraction(506874, 506875)


# ------------------------------------------------------------ genus-one density and average


@pytest.fixture(scope="module")
def density10():
    return D.genus_one_density(10)


def test_genus_one_density_rounds(density10):
    assert density10.rounded(6) == "0.999935"
    assert density10.width_below(Fraction(1, 10**9))
    assert density10.tail_low <= 1 <= density10.tail_high


def test_genus_one_density_against_float_oracle(density10):
    # float product to 2*10^5; the omitted tail is below sum_{n > 2*10^5} n^-4 < 10^-16
    oracle = Fraction(506874, 506875) * Fraction(str(_float_product(2 * 10**5, -1)))
    assert density10.low - Fraction(1, 10**14) <= oracle <= density10.high + Fraction(1, 10**14)


def test_average_rounds_and_is_monotone():
    avg = D.average_genus_constant(10)
    assert avg.rounded(5) == "1.00026"
    prev = Fraction(0)
    for P in (10, 11, 31, 100, 1000):
        part = D.average_genus_constant(cutoff=P).partial
        assert part >= 1 and part >= prev
        prev = part
    oracle = Fraction(506879, 506875) * Fraction(str(_float_product(2 * 10**5, 4)))
    assert avg.low - Fraction(1, 10**14) <= oracle <= avg.high + Fraction(1, 10**14)


def test_average_exceeds_deficit(density10):
    avg = D.average_genus_constant(10)
    assert avg.low >= 1 >= density10.high
    assert avg.low - 1 >= 1 - density10.low


def test_digit_cap():
    assert D.genus_one_density(12).width_below(Fraction(1, 10**12))
    with pytest.raises(ValueError):
        D.genus_one_density(22)
    with pytest.raises(InvalidInput):
        D.genus_one_density(cutoff=10**8)


@pytest.mark.parametrize("fn", [D.genus_one_density, D.average_genus_constant, D.screen_density])
def test_doubling_cutoff_nests(fn):
    vals = [fn(cutoff=P) for P in (50, 100, 200, 400, 800)]
    for a, b in zip(vals, vals[1:]):
        assert b.nested_in(a)
        assert b.width < a.width


@settings(max_examples=25)
@given(st.integers(11, 3000), st.integers(1, 3000))
def test_nesting_property(P, extra):
    a, b = D.genus_one_density(cutoff=P), D.genus_one_density(cutoff=P + extra)
    assert b.nested_in(a)


def test_rounding_refuses_to_guess():
    v = D.CertifiedValue(1, 1, Fraction(9999, 10000), Fraction(10001, 10000), 0)
    assert v.rounded(2) == "1.00"
    assert v.rounded(6) is None
    lo, hi = v.bounds_str(4)
    assert (lo, hi) == ("0.9999", "1.0001")


# ------------------------------------------------------------ lower bounds


def test_lower_bound_examples(density10):
    k0 = D.lower_bound_5k(0, 10)
    assert (k0.num, k0.den, k0.cutoff) == (density10.num, density10.den, density10.cutoff)
    k1 = D.lower_bound_5k(1, 10)
    whole = D.genus_one_density(cutoff=k1.cutoff)
    assert k1.partial == whole.partial / 16236


def test_lower_bounds_positive_and_decreasing():
    prev = None
    for k in range(0, 21):
        v = D.lower_bound_5k(k, 8)
        assert v.low > 0
        if prev is not None:
            assert v.high < prev.low
        prev = v
    with pytest.raises(InvalidInput):
        D.lower_bound_5k(21)


# ------------------------------------------------------------ screen


def test_screen_factors():
    f = D.screen_local_factors()
    assert f[2] == Fraction(16, 185) == Fraction(1, 5) / D.m(2)
    assert f[5] == Fraction(125, 811)
    assert f[7] == mass_subset(7, LocalConditionSet.totally_ramified(7)) / D.m(7) == Fraction(1, 2857)


def test_screen_density_positive():
    v = D.screen_density(12)
    assert v.low > 0
    expected = Fraction(16, 185) * Fraction(125, 811) * Fraction(1, 2857)
    prod = D.genus_one_density(cutoff=v.cutoff).partial / D.GENUS_PREFACTOR
    assert v.partial == expected * prod


# ------------------------------------------------------------ Bhargava constants


def test_bhargava_prefactors():
    assert D.SIGNATURE_PREFACTOR == {0: Fraction(1, 240), 1: Fraction(1, 24), 2: Fraction(1, 16)}
    a = D.bhargava_constant(0)
    b = D.bhargava_constant(2)
    assert b.partial / a.partial == 15
    with pytest.raises(InvalidInput):
        D.bhargava_constant(3)


def test_local_factor_identity():
    # 1 + x^2 - x^4 - x^5 = (1 - x)(1 + x + 2x^2 + 2x^3 + x^4), so each factor is (1 - 1/p) m(p)
    for p in primes_up_to(200):
        x = Fraction(1, p)
        assert 1 + x**2 - x**4 - x**5 == (1 - x) * D.m(p)


def test_euler_product_width_at_default_cutoff():
    v = D.euler_product_all_primes()
    assert v.cutoff == 10**4
    assert v.width_below(Fraction(1, 10**7))
    assert v.tail_low <= v.tail_high


def test_euler_product_against_float_oracle():
    v = D.euler_product_all_primes(12)
    with mpmath.workdps(30):
        s = mpmath.mpf(0)
        for p in primes_up_to(10**6):
            x = mpmath.mpf(1) / p
            s += mpmath.log1p(x**2 - x**4 - x**5)
        part = mpmath.exp(s)
    lo, hi = Fraction(str(part)), Fraction(str(part / (1 - mpmath.mpf(10) ** -6)))
    # the true value lies in [lo, hi] up to float error
    assert v.low <= hi + Fraction(1, 10**20) and lo - Fraction(1, 10**20) <= v.high
    assert v.rounded(5) == "1.38161"


def test_euler_product_nests_on_doubling():
    vals = [D.euler_product_all_primes(10, cutoff=P) for P in (1250, 2500, 5000, 10**4, 2 * 10**4)]
    for a, b in zip(vals, vals[1:]):
        assert b.nested_in(a)
        assert b.width <= a.width


def test_bhargava_digit_cap():
    with pytest.raises(InvalidInput):
        D.euler_product_all_primes(31)


def test_genus_one_slope():
    s = D.genus_one_slope(0, 8)
    c = D.bhargava_constant(0, 8)
    g = D.genus_one_density(9)
    assert c.low * g.low <= s.low and s.high <= c.high * g.high


# ------------------------------------------------------------ sieve


def test_sieve_small_truncations():
    assert D.truncated_sieve_density(1) == 1
    assert D.truncated_sieve_density(4) == 1
    assert D.truncated_sieve_density(5) == Fraction(506874, 506875)
    assert D.truncated_sieve_density(10) == Fraction(506874, 506875)
    assert D.truncated_sieve_density(11) == 1 - Fraction(1, 506875) - Fraction(1, 16237)
    # 55 = 5 * 11 brings the first product term
    assert D.truncated_sieve_density(55) - D.truncated_sieve_density(54) == Fraction(1, 506875 * 16237)


def test_sieve_against_brute_force_sum():
    Y = 3000
    T = {5} | set(_one_mod_five_primes(Y))
    total = Fraction(0)
    for f in range(1, Y + 1):
        fac = factorint(f)
        if all(e == 1 and p in T for p, e in fac.items()):
            total += math.prod((-Fraction(1, D.sieve_norm(p)) for p in fac), start=Fraction(1))
    assert total == D.truncated_sieve_density(Y)


@pytest.fixture(scope="module")
def sieve_runs():
    return {Y: D.sieve_prediction(Y) for Y in (10**2, 10**3, 10**4)}


def test_sieve_matches_product_within_majorant(sieve_runs, density10):
    for Y, s in sieve_runs.items():
        assert abs(s.value - D.sieve_product(Y)) <= s.majorant
        # the infinite product lies in the sieve bracket
        assert s.low <= density10.high and density10.low <= s.high


def test_sieve_brackets_nest(sieve_runs):
    a, b, c = (sieve_runs[Y] for Y in (10**2, 10**3, 10**4))
    assert b.nested_in(a) and c.nested_in(b)
    assert a.majorant > b.majorant > c.majorant > 0


def test_sieve_input_bounds():
    with pytest.raises(InvalidInput):
        D.truncated_sieve_density(0)
    with pytest.raises(InvalidInput):
        D.truncated_sieve_density(10**6 + 1)
