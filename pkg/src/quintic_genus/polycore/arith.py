"""Integer arithmetic: primality, sieving, valuations and factorization."""

from __future__ import annotations

import math
import random
from functools import lru_cache

from ..errors import FactorizationTimeout, InvalidInput

TRIAL_LIMIT = 10**6
RHO_BUDGET = 60_000
DEFAULT_SEED = 20201
_seed = DEFAULT_SEED


def set_default_seed(seed: int) -> None:
    """Seed used by randomized routines when the caller passes none."""
    global _seed
    _seed = int(seed)


def default_seed() -> int:
    return _seed

# deterministic for n < 3.3e24; extra bases make larger answers overwhelmingly likely
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes, inclusive of ``n``."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=8)
def _cached_primes(n: int) -> tuple[int, ...]:
    return tuple(primes_up_to(n))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def primes_from(start: int = 2):
    """Yield primes >= ``start`` indefinitely."""
    c = start - 1
    while True:
        c = next_prime(c)
        yield c


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise InvalidInput("valuation of zero is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise InvalidInput("iroot of a negative number")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def perfect_power(n: int) -> tuple[int, int]:
    """Return (m, k) with n = m**k and k maximal."""
    best = (n, 1)
    for k in range(2, n.bit_length() + 1):
        m = iroot(n, k)
        if m < 2:
            break
        if m**k == n:
            best = (m, k)
    return best


def _pollard_brent(n: int, rng: random.Random, budget: int) -> int | None:
    if n % 2 == 0:
        return 2
    steps = 0
    while steps < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and steps < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            steps += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorint(
    n: int,
    trial_limit: int = TRIAL_LIMIT,
    rho_budget: int = RHO_BUDGET,
    seed: int | None = None,
) -> dict[int, int]:
    """Prime factorization of ``|n|`` as {prime: exponent}.

    Trial division up to ``trial_limit``, then Pollard-Brent rho with a
    deterministic seed.  Raises FactorizationTimeout carrying the unfactored
    composite cofactor and the primes found so far.
    """
    n = abs(n)
    if n == 0:
        raise InvalidInput("cannot factor zero")
    out: dict[int, int] = {}
    for p in _cached_primes(trial_limit):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    rng = random.Random(_seed if seed is None else seed)
    stack = [(n, 1)]
    stuck = []
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + mult
            continue
        base, k = perfect_power(m)
        if k > 1:
            stack.append((base, mult * k))
            continue
        d = _pollard_brent(m, rng, rho_budget)
        if d is None:
            stuck.append((m, mult))
            continue
        stack.append((d, mult))
        stack.append((m // d, mult))
    if stuck:
        cof = 1
        for m, mult in stuck:
            cof *= m**mult
        raise FactorizationTimeout(cof, out)
    return dict(sorted(out.items()))


def mobius(n: int) -> int:
    mu = 1
    for _, e in factorint(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu
