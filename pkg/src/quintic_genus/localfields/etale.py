"""Quintic etale algebras over Q_p and their masses.

Field components come from the classification of extensions of Q_p of
degree <= 5.  A tamely ramified field with invariants (e, f) is
Q_q((zeta p)^(1/e)), q = p^f, zeta a (q-1)-th root of unity whose class in
mu_(q-1)/mu_(q-1)^e ~ Z/g (g = gcd(e, q-1)) is defined up to the Frobenius
action c -> p c.  Isomorphism classes are the Frobenius orbits, and an
automorphism is a Frobenius power fixing the orbit point together with one
of the g e-th roots of unity in F_q, so #Aut = g * #Stab(c).  Wild
components exist only for p = 5, degree 5 (see ``wild``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Callable

from ..errors import InconsistentResult, InvalidInput, UnsupportedPrime
from ..polycore.arith import is_prime
from .splitting import SplittingType
from .wild import wild_classes

DEGREE = 5


@dataclass(frozen=True)
class LocalComponent:
    degree: int
    e: int
    f: int
    disc_exponent: int
    aut_count: int
    label: str
    is_galois: bool = False


@dataclass(frozen=True)
class EtaleClass:
    components: tuple[LocalComponent, ...]
    total_aut: int
    total_disc_exponent: int

    @property
    def splitting_type(self) -> SplittingType:
        return SplittingType((c.e, c.f) for c in self.components)

    @property
    def is_field(self) -> bool:
        return len(self.components) == 1

    @property
    def is_galois_field(self) -> bool:
        return self.is_field and self.components[0].is_galois

    def mass(self, p: int) -> Fraction:
        return Fraction(1, p**self.total_disc_exponent * self.total_aut)

    def __str__(self):
        return " x ".join(c.label for c in self.components)


def tame_fields(p: int, e: int, f: int) -> list[LocalComponent]:
    """Isomorphism classes of tame extensions of Q_p with ramification e, residue degree f."""
    if e % p == 0:
        raise UnsupportedPrime(f"e={e} is wild at p={p}")
    q = p**f
    g = gcd(e, q - 1)
    seen: set[int] = set()
    out = []
    for c in range(g):
        if c in seen:
            continue
        orbit = []
        x = c
        while x not in orbit:
            orbit.append(x)
            x = x * p % g
        seen.update(orbit)
        stab = sum(1 for j in range(f) if c * p**j % g == c)
        aut = g * stab
        out.append(
            LocalComponent(
                degree=e * f,
                e=e,
                f=f,
                disc_exponent=f * (e - 1),
                aut_count=aut,
                label=f"T(e={e},f={f},c={c})" if e > 1 else f"U{f}",
                is_galois=aut == e * f,
            )
        )
    return out


def field_components(p: int, max_degree: int = DEGREE, unramified_only: bool = False) -> list[LocalComponent]:
    comps: list[LocalComponent] = []
    for n in range(1, max_degree + 1):
        for e in range(1, n + 1):
            if n % e:
                continue
            if unramified_only and e > 1:
                continue
            f = n // e
            if e % p == 0:
                if p == 5 and n == 5:
                    for w in wild_classes():
                        comps.append(
                            LocalComponent(
                                degree=5,
                                e=5,
                                f=1,
                                disc_exponent=w.disc_exponent,
                                aut_count=w.aut_count,
                                label=f"W[{w.representative}]",
                                is_galois=w.is_galois,
                            )
                        )
                    continue
                raise UnsupportedPrime(f"wild ramification e={e} at p={p} is not enumerated")
            comps.extend(tame_fields(p, e, f))
    return comps


def _multisets(comps: list[LocalComponent], total: int, start: int = 0):
    if total == 0:
        yield ()
        return
    for i in range(start, len(comps)):
        c = comps[i]
        if c.degree <= total:
            for rest in _multisets(comps, total - c.degree, i):
                yield (c,) + rest


def _assemble(parts: tuple[LocalComponent, ...]) -> EtaleClass:
    aut = 1
    counts: dict[LocalComponent, int] = {}
    for c in parts:
        aut *= c.aut_count
        counts[c] = counts.get(c, 0) + 1
    for m in counts.values():
        aut *= factorial(m)
    return EtaleClass(components=parts, total_aut=aut, total_disc_exponent=sum(c.disc_exponent for c in parts))


def _check_prime(p: int):
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")


@lru_cache(maxsize=None)
def etale_quintic_classes(p: int) -> tuple[EtaleClass, ...]:
    """Every isomorphism class of degree-5 etale algebras over Q_p (p = 5 or p >= 7)."""
    _check_prime(p)
    if p in (2, 3):
        raise UnsupportedPrime(f"etale enumeration at p={p} needs wild sub-quintic fields")
    comps = field_components(p)
    return tuple(_assemble(m) for m in _multisets(comps, DEGREE))


@lru_cache(maxsize=None)
def unramified_etale_classes(p: int) -> tuple[EtaleClass, ...]:
    """Degree-5 etale algebras with every component unramified; valid for every p."""
    _check_prime(p)
    comps = field_components(p, unramified_only=True)
    return tuple(_assemble(m) for m in _multisets(comps, DEGREE))


# ------------------------------------------------------------ conditions


@dataclass(frozen=True)
class LocalConditionSet:
    """A set of admitted quintic etale algebras at one prime."""

    prime: int
    name: str
    admits: Callable[[EtaleClass], bool]
    unramified_only: bool = False

    @classmethod
    def everything(cls, p: int) -> "LocalConditionSet":
        return cls(p, "all", lambda a: True)

    @classmethod
    def totally_ramified(cls, p: int, galois: bool | None = None) -> "LocalConditionSet":
        def pred(a: EtaleClass) -> bool:
            if not a.splitting_type.is_totally_ramified:
                return False
            return galois is None or a.is_galois_field == galois

        name = "totally ramified" + ("" if galois is None else (" Galois" if galois else " non-Galois"))
        return cls(p, name, pred)

    @classmethod
    def not_totally_ramified(cls, p: int) -> "LocalConditionSet":
        return cls(p, "not totally ramified", lambda a: not a.splitting_type.is_totally_ramified)

    @classmethod
    def inert(cls, p: int) -> "LocalConditionSet":
        return cls(p, "inert", lambda a: a.splitting_type.is_inert, unramified_only=True)

    @classmethod
    def splitting(cls, p: int, types) -> "LocalConditionSet":
        wanted = {t if isinstance(t, SplittingType) else SplittingType(t) for t in types}
        unram = all(t.is_unramified for t in wanted)
        name = "splitting " + " | ".join(sorted(str(t) for t in wanted))
        return cls(p, name, lambda a: a.splitting_type in wanted, unramified_only=unram)

    @classmethod
    def from_name(cls, p: int, name: str) -> "LocalConditionSet":
        table = {
            "all": lambda: cls.everything(p),
            "tr": lambda: cls.totally_ramified(p),
            "tr-galois": lambda: cls.totally_ramified(p, galois=True),
            "tr-nongalois": lambda: cls.totally_ramified(p, galois=False),
            "not-tr": lambda: cls.not_totally_ramified(p),
            "inert": lambda: cls.inert(p),
        }
        if name in table:
            return table[name]()
        return cls.splitting(p, [SplittingType.parse(name)])


def total_mass(p: int) -> Fraction:
    """Closed form 1 + 1/p + 2/p^2 + 2/p^3 + 1/p^4."""
    x = Fraction(1, p)
    return 1 + x + 2 * x**2 + 2 * x**3 + x**4


def admitted_classes(p: int, condition: LocalConditionSet) -> list[EtaleClass]:
    if condition.prime != p:
        raise InvalidInput(f"condition is for p={condition.prime}, not {p}")
    try:
        pool = etale_quintic_classes(p)
    except UnsupportedPrime:
        if not condition.unramified_only:
            raise
        pool = unramified_etale_classes(p)
    chosen = [a for a in pool if condition.admits(a)]
    if not chosen:
        raise InvalidInput(f"condition {condition.name!r} admits no algebra at p={p}")
    return chosen


def mass_subset(p: int, condition: LocalConditionSet) -> Fraction:
    """Sum of 1/(p^disc * #Aut) over the admitted algebras, exactly."""
    return sum((a.mass(p) for a in admitted_classes(p, condition)), Fraction(0))


@lru_cache(maxsize=None)
def verified_total_mass(p: int) -> Fraction:
    """m(p), reconciled with the enumeration whenever p is supported."""
    closed = total_mass(p)
    if p not in (2, 3):
        enumerated = mass_subset(p, LocalConditionSet.everything(p))
        if enumerated != closed:
            raise InconsistentResult(f"mass enumeration {enumerated} != closed form {closed} at p={p}")
    return closed


def local_density_factor(p: int, condition: LocalConditionSet) -> Fraction:
    """C_p(S_p) = mass_subset / m(p)."""
    return mass_subset(p, condition) / verified_total_mass(p)
