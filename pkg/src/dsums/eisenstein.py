"""Coprime representations f = a^2 + ab + b^2 and the order-3 units they carry.

When every prime divisor of f is 1 mod 3, f has exactly 2^t unit-orbit
representations (t = number of distinct primes). Each positive pair (a,b)
yields the ratio a/b mod f, an element of order 3; ratios come in inverse
pairs {r, r^2} = {a/b, b/a}, giving 2^(t-1) order-3 subgroups with a closed
mean-square formula. Conjugation swaps (a,b) <-> (b,a), so representations
are reported once per unordered conjugate pair with the a >= b orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dedekind import dedekind_sum, dedekind_sum_tilde
from .numkernel import factorize, totient
from .unitgroups import Subgroup, element_order, subgroup_from_elements

__all__ = [
    "EisensteinInteger",
    "RatioClass",
    "dedekind_at_ratio",
    "divisor_descend",
    "e_f",
    "order3_subgroups_from_ef",
    "representations",
]


@dataclass(frozen=True)
class EisensteinInteger:
    """A pair (a,b) standing for a + b*zeta_6; norm a^2 + ab + b^2."""

    a: int
    b: int

    @property
    def norm(self) -> int:
        return self.a * self.a + self.a * self.b + self.b * self.b


@dataclass(frozen=True)
class RatioClass:
    """The order-3 unit a/b mod f attached to a representation of f."""

    modulus: int
    ratio: int
    witness: EisensteinInteger


def _check_modulus(f: int) -> None:
    if f <= 3:
        raise ValueError(f"need f > 3, got {f}")
    for p, _ in factorize(f):
        if p % 3 != 1:
            raise ValueError(f"prime divisor {p} of {f} is not 1 mod 3")


@lru_cache(maxsize=1 << 12)
def _positive_pairs(f: int) -> tuple[tuple[int, int], ...]:
    """All (a,b) with a,b > 0, gcd(a,b) = 1 and a^2+ab+b^2 = f.

    One per unit orbit; scanning b and solving the quadratic in a finds
    both orientations (a,b) and (b,a) of each conjugate pair.
    """
    pairs = []
    b = 1
    while 3 * b * b <= 4 * f:
        disc = 4 * f - 3 * b * b
        d = math.isqrt(disc)
        if d * d == disc and (d - b) % 2 == 0:
            a = (d - b) // 2
            if a > 0 and math.gcd(a, b) == 1:
                pairs.append((a, b))
        b += 1
    return tuple(sorted(pairs, key=lambda ab: (ab[1], ab[0])))


def representations(f: int) -> list[EisensteinInteger]:
    """Coprime representations of f, one per unordered conjugate pair.

    Canonical orientation a >= b; ordered by increasing b. The number of
    representations is 2^(t-1) for t distinct prime divisors.
    """
    _check_modulus(f)
    reps = [EisensteinInteger(a, b) for a, b in _positive_pairs(f) if a >= b]
    if len(reps) != 1 << (len(factorize(f)) - 1):
        raise ArithmeticError(f"representation count off at f={f}")  # pragma: no cover
    return reps


def e_f(f: int) -> list[RatioClass]:
    """The 2^t ratio classes a/b mod f, each of multiplicative order 3."""
    _check_modulus(f)
    out = []
    seen = set()
    for a, b in _positive_pairs(f):
        r = a * pow(b, -1, f) % f
        if r in seen:
            raise ArithmeticError(f"duplicate ratio {r} at f={f}")  # pragma: no cover
        seen.add(r)
        out.append(RatioClass(f, r, EisensteinInteger(a, b)))
    if len(out) != 1 << len(factorize(f)):
        raise ArithmeticError(f"|E_f| != 2^t at f={f}")  # pragma: no cover
    for rc in out:
        if element_order(rc.ratio, f) != 3:
            raise ArithmeticError(f"ratio {rc.ratio} mod {f} not of order 3")  # pragma: no cover
    return out


def order3_subgroups_from_ef(f: int) -> list[Subgroup]:
    """The 2^(t-1) subgroups {1, a/b, b/a} generated by the E_f ratios."""
    subs = []
    seen = set()
    for rc in e_f(f):
        inv = rc.ratio * rc.ratio % f  # r^3 = 1, so r^-1 = r^2
        key = min(rc.ratio, inv)
        if key in seen:
            continue
        seen.add(key)
        subs.append(subgroup_from_elements(f, (1, rc.ratio, inv), generators=(key,)))
    return subs


def divisor_descend(a: int, b: int, delta: int) -> EisensteinInteger:
    """Descend a representation to a divisor: (a',b') with norm delta,
    gcd(a',b') = 1 and a*b' = a'*b (mod delta)."""
    f = a * a + a * b + b * b
    if math.gcd(a, b) != 1:
        raise ValueError("need gcd(a,b) = 1")
    if delta < 1 or f % delta != 0:
        raise ValueError(f"{delta} does not divide {f} = norm(a,b)")
    if delta == 1:
        return EisensteinInteger(1, 0)
    matches = [
        (x, y) for x, y in _positive_pairs(delta) if (a * y - x * b) % delta == 0
    ]
    if len(matches) != 1:
        raise ArithmeticError(
            f"expected one descendant of ({a},{b}) at delta={delta}, got {matches}"
        )  # pragma: no cover
    return EisensteinInteger(*matches[0])


def dedekind_at_ratio(f: int, delta: int, rc: RatioClass) -> Fraction:
    """s(r mod delta, delta) for r in E_f, asserted equal to (delta-1)/(12 delta).

    Also asserts the restricted-sum value tilde s(r,f) = phi(f)/(12f). A
    failure here would mean the Dedekind engine itself is broken.
    """
    if rc.modulus != f:
        raise ValueError("ratio class lives mod a different f")
    if delta < 1 or f % delta != 0:
        raise ValueError(f"{delta} does not divide {f}")
    expected = Fraction(delta - 1, 12 * delta) if delta > 1 else Fraction(0)
    got = dedekind_sum(rc.ratio % delta, delta) if delta > 1 else Fraction(0)
    if got != expected:
        raise ArithmeticError(f"s({rc.ratio} mod {delta}, {delta}) = {got} != {expected}")
    tilde = dedekind_sum_tilde(rc.ratio, f)
    if tilde != Fraction(totient(f), 12 * f):
        raise ArithmeticError(f"tilde s({rc.ratio},{f}) = {tilde} != phi(f)/12f")
    return expected
