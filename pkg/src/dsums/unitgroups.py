"""Structure of the multiplicative group mod f.

CRT-factored generators for (Z/fZ)*, explicit subgroups (element lists,
traces, kernels of reduction maps), and the Dirichlet character group with
exact parity, subgroup-triviality tests, conductors and primitive values.

Character values are complex floats; every *decision* (parity, triviality,
conductor) is made on exact rational phases, never on floats.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numkernel import divisors, factorize, is_prime, totient

__all__ = [
    "DirichletCharacter",
    "Subgroup",
    "TraceValue",
    "UnitGroup",
    "characters",
    "conductor",
    "cyclic_subgroups",
    "element_order",
    "elements_of_order",
    "kernel_subgroup",
    "odd_characters_trivial_on",
    "primitive_root",
    "primitive_value",
    "subgroup_from_elements",
    "subgroup_from_generator",
    "subgroup_of_order",
    "trace",
    "unit_group",
]


@lru_cache(maxsize=1 << 14)
def primitive_root(p: int) -> int:
    """Smallest primitive root modulo an odd prime p (trial search)."""
    if p == 2:
        return 1
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    qs = [q for q, _ in factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
        g += 1


@lru_cache(maxsize=1 << 12)
def _primitive_root_prime_power(p: int, e: int) -> int:
    """Smallest generator of the cyclic group (Z/p^eZ)*, p an odd prime."""
    if e == 1:
        return primitive_root(p)
    q = p**e
    phi = q // p * (p - 1)
    qs = [r for r, _ in factorize(phi)]
    g = 2
    while True:
        if g % p and all(pow(g, phi // r, q) != 1 for r in qs):
            return g
        g += 1


def _crt_lift(g: int, q: int, rest: int) -> int:
    """x with x = g (mod q) and x = 1 (mod rest)."""
    if rest == 1:
        return g % q
    k = (1 - g) * pow(q, -1, rest) % rest
    return (g + q * k) % (q * rest)


class UnitGroup:
    """(Z/fZ)* as a product of cyclic components with explicit generators.

    generators[i] has exact order orders[i] mod f and is congruent to 1 on
    every other prime-power component, so exponent vectors against
    (generators, orders) parameterize the whole group. For odd prime powers
    the component generator is the smallest primitive root; for 2^k (k>=3)
    the components are <-1> and <5>.
    """

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError(f"need modulus >= 2, got {modulus}")
        self.modulus = modulus
        gens: list[int] = []
        orders: list[int] = []
        for p, e in factorize(modulus):
            q = p**e
            rest = modulus // q
            if p == 2:
                if e == 2:
                    comps = [(3, 2)]
                elif e >= 3:
                    comps = [(q - 1, 2), (5, 2 ** (e - 2))]
                else:
                    comps = []
            else:
                comps = [(_primitive_root_prime_power(p, e), q // p * (p - 1))]
            for g, order in comps:
                gens.append(_crt_lift(g, q, rest))
                orders.append(order)
        self.generators = tuple(gens)
        self.orders = tuple(orders)
        self.phi = math.prod(self.orders)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        self._dlog: dict[int, tuple[int, ...]] | None = None

    def _table(self) -> dict[int, tuple[int, ...]]:
        if self._dlog is None:
            f = self.modulus
            pows = []
            for g, s in zip(self.generators, self.orders):
                row = [1] * s
                for e in range(1, s):
                    row[e] = row[e - 1] * g % f
                pows.append(row)
            table = {}
            for combo in itertools.product(*(range(s) for s in self.orders)):
                v = 1
                for row, e in zip(pows, combo):
                    v = v * row[e] % f
                table[v] = combo
            self._dlog = table
        return self._dlog

    @property
    def units(self) -> tuple[int, ...]:
        return tuple(sorted(self._table()))

    def dlog(self, x: int) -> tuple[int, ...]:
        """Exponent vector of x against the generators."""
        x %= self.modulus
        try:
            return self._table()[x]
        except KeyError:
            raise ValueError(f"{x} is not a unit mod {self.modulus}") from None

    def __repr__(self) -> str:  # pragma: no cover
        return f"UnitGroup({self.modulus}, orders={self.orders})"


@lru_cache(maxsize=256)
def unit_group(f: int) -> UnitGroup:
    return UnitGroup(f)


def element_order(x: int, f: int) -> int:
    """Multiplicative order of x mod f."""
    if f < 1:
        raise ValueError("need f >= 1")
    x %= f
    if math.gcd(x, f) != 1:
        raise ValueError(f"gcd({x},{f}) > 1: no multiplicative order")
    if f == 1:
        return 1
    order = totient(f)
    for q, _ in factorize(order):
        while order % q == 0 and pow(x, order // q, f) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of (Z/fZ)* held as its sorted element list."""

    modulus: int
    elements: tuple[int, ...]
    order: int
    generators: tuple[int, ...] = ()

    @property
    def contains_minus_one(self) -> bool:
        return self.modulus - 1 in self.elements

    def is_closed(self) -> bool:
        got = set(self.elements)
        f = self.modulus
        return 1 in got and all(a * b % f in got for a in self.elements for b in self.elements)


def subgroup_from_generator(f: int, g: int) -> Subgroup:
    """Cyclic subgroup <g> of (Z/fZ)*; closed by construction."""
    g %= f
    if math.gcd(g, f) != 1:
        raise ValueError(f"gcd({g},{f}) > 1: not a unit")
    elems = [1]
    x = g
    while x != 1:
        elems.append(x)
        x = x * g % f
    return Subgroup(f, tuple(sorted(elems)), len(elems), (g,))


def subgroup_from_elements(f: int, elements, generators: tuple[int, ...] = ()) -> Subgroup:
    """Build and validate a subgroup from an explicit element list."""
    elems = tuple(sorted(set(x % f for x in elements)))
    sub = Subgroup(f, elems, len(elems), generators)
    if any(math.gcd(x, f) != 1 for x in elems):
        raise ValueError("element list contains a non-unit")
    if not sub.is_closed():
        raise ValueError("element list is not closed under multiplication")
    return sub


def subgroup_of_order(n: int, p: int) -> Subgroup:
    """The unique order-n subgroup of the cyclic group (Z/pZ)*, p odd prime.

    Constructed as <g^((p-1)/n)> for the smallest primitive root g.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if n < 1 or (p - 1) % n != 0:
        raise ValueError(f"{n} does not divide {p} - 1")
    g = primitive_root(p)
    return subgroup_from_generator(p, pow(g, (p - 1) // n, p))


@lru_cache(maxsize=1 << 12)
def kernel_subgroup(f: int, f_prime: int) -> Subgroup:
    """Kernel of the reduction (Z/fZ)* ->> (Z/f'Z)*: units = 1 (mod f')."""
    if f < 2:
        raise ValueError("need f >= 2")
    if f_prime < 1 or f % f_prime != 0:
        raise ValueError(f"{f_prime} does not divide {f}")
    elems = tuple(x for x in range(1, f, f_prime) if math.gcd(x, f) == 1)
    return Subgroup(f, elems, len(elems))


@lru_cache(maxsize=256)
def _units_by_order(f: int) -> dict[int, tuple[int, ...]]:
    g = unit_group(f)
    buckets: dict[int, list[int]] = {}
    if len(g.generators) <= 1:
        # cyclic case: orders drop out of exponents, no modexp needed
        gen = g.generators[0] if g.generators else 1
        phi = g.phi
        val = 1
        for k in range(phi):
            buckets.setdefault(phi // math.gcd(phi, k), []).append(val)
            val = val * gen % f
    else:
        for x in g.units:
            buckets.setdefault(element_order(x, f), []).append(x)
    return {o: tuple(sorted(v)) for o, v in buckets.items()}


def elements_of_order(q: int, f: int) -> tuple[int, ...]:
    """All units of exact multiplicative order q mod f (possibly empty)."""
    if f < 2:
        raise ValueError("need f >= 2")
    g = unit_group(f)
    if len(g.generators) <= 1:
        # cyclic: order-q elements are gen^(phi/q * k), gcd(k,q) = 1
        if g.phi % q:
            return ()
        gen = g.generators[0] if g.generators else 1
        base = pow(gen, g.phi // q, f)
        out = []
        x = 1
        for k in range(q):
            if math.gcd(k, q) == 1:
                out.append(x)
            x = x * base % f
        return tuple(sorted(out))
    return _units_by_order(f).get(q, ())


def cyclic_subgroups(f: int) -> list[Subgroup]:
    """Every cyclic subgroup of (Z/fZ)*, each listed once."""
    by_order = _units_by_order(f)
    subs: list[Subgroup] = []
    for d in sorted(by_order):
        sets: list[set[int]] = []
        for x in by_order[d]:
            if any(x in s for s in sets):
                continue
            sub = subgroup_from_generator(f, x)
            subs.append(sub)
            sets.append(set(sub.elements))
    return subs


@dataclass(frozen=True)
class TraceValue:
    """Sum of subgroup elements mod f, with gcd(f, T); gcd(f, 0) := f."""

    residue: int
    gcd: int


def trace(sub: Subgroup) -> TraceValue:
    t = sum(sub.elements) % sub.modulus
    return TraceValue(t, math.gcd(sub.modulus, t))


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod f as an exponent vector against unit_group(f).

    chi(generators[i]) = exp(2*pi*i * exponents[i] / orders[i]); values off
    the units are 0.
    """

    modulus: int
    exponents: tuple[int, ...]

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    def angle(self, x: int) -> Fraction:
        """Exact phase in [0,1): chi(x) = exp(2*pi*i*angle(x))."""
        g = self.group
        logs = g.dlog(x)
        big = g.exponent
        t = sum(e * l * (big // s) for e, l, s in zip(self.exponents, logs, g.orders)) % big
        return Fraction(t, big)

    def __call__(self, x: int) -> complex:
        if math.gcd(x, self.modulus) != 1:
            return 0j
        a = self.angle(x)
        return cmath.exp(2j * cmath.pi * (a.numerator / a.denominator))

    @property
    def is_odd(self) -> bool:
        return self.angle(self.modulus - 1) == Fraction(1, 2)

    @property
    def is_even(self) -> bool:
        return not self.is_odd

    @property
    def order(self) -> int:
        return math.lcm(*(s // math.gcd(s, e) for s, e in zip(self.group.orders, self.exponents))) if self.exponents else 1

    def is_trivial_on(self, elements) -> bool:
        return all(self.angle(x) == 0 for x in elements)


@lru_cache(maxsize=64)
def characters(f: int) -> tuple[DirichletCharacter, ...]:
    """All phi(f) characters mod f, lexicographic in the exponent vector."""
    if f < 3:
        raise ValueError(f"need f >= 3, got {f}")
    g = unit_group(f)
    return tuple(
        DirichletCharacter(f, exps) for exps in itertools.product(*(range(s) for s in g.orders))
    )


@lru_cache(maxsize=512)
def odd_characters_trivial_on(sub: Subgroup) -> tuple[DirichletCharacter, ...]:
    """X_f^-(H): the phi(f)/(2n) odd characters trivial on H; needs -1 not in H."""
    if sub.contains_minus_one:
        raise ValueError("-1 in H: no odd character is trivial on H")
    probe = sub.generators if sub.generators else sub.elements
    out = tuple(
        ch for ch in characters(sub.modulus) if ch.is_odd and ch.is_trivial_on(probe)
    )
    expected = totient(sub.modulus) // (2 * sub.order)
    if len(out) != expected:
        raise ArithmeticError(
            f"character count mismatch mod {sub.modulus}: got {len(out)}, expected {expected}"
        )
    return out


@lru_cache(maxsize=1 << 12)
def conductor(chi: DirichletCharacter) -> int:
    """Smallest d | f such that chi is trivial on the kernel of f -> d."""
    f = chi.modulus
    for d in divisors(f):
        if chi.is_trivial_on(kernel_subgroup(f, d).elements):
            return d
    return f  # pragma: no cover - d = f always matches


def _unit_lift(f: int, d: int, q: int) -> int:
    """A unit x mod f with x = q (mod d); q must be coprime to d, d | f."""
    x, mod = 0, 1
    for p, e in factorize(f):
        pe = p**e
        target = q % pe if d % p == 0 else 1
        k = (target - x) * pow(mod, -1, pe) % pe
        x, mod = x + mod * k, mod * pe
    return x % f


def primitive_value(chi: DirichletCharacter, q: int) -> complex:
    """chi*(q) for the primitive character chi* inducing chi.

    Zero when q shares a factor with the conductor; otherwise chi evaluated
    at any unit mod f congruent to q modulo the conductor.
    """
    d = conductor(chi)
    if d == 1:
        return 1 + 0j
    if math.gcd(q, d) != 1:
        return 0j
    return chi(_unit_lift(chi.modulus, d, q))
