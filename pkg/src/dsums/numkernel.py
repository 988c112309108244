"""Arithmetic substrate: primality, factorization, multiplicative functions,
and segmented prime enumeration in arithmetic progressions.

Exact rational values everywhere in this package are `fractions.Fraction`:
always reduced, denominator positive, so ``str()`` renders "num/den" in
lowest terms (or just "num" for integers), which is the wire format the
CLI and reports rely on.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

__all__ = [
    "Factorization",
    "PrimeStream",
    "divisors",
    "factorize",
    "is_prime",
    "mobius",
    "primes_in_progression",
    "sieve_upto",
    "totient",
]

# A factorization is a tuple of (prime, exponent) pairs, sorted by prime.
Factorization = tuple[tuple[int, int], ...]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# This witness set makes Miller-Rabin deterministic for every n < 3.3e24,
# in particular for all 64-bit inputs.
_WITNESSES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_ROUNDS_BIG = 64

_TRIAL_LIMIT = 10_000


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in bases:
        a %= n
        if a < 2:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2^64, 64 rounds above.

    Bases above 2^64 come from a PRNG seeded with n itself, so results are
    reproducible run to run.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < 1 << 64:
        return _miller_rabin(n, _WITNESSES_64)
    rng = random.Random(n)
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(_ROUNDS_BIG)])


@lru_cache(maxsize=8)
def sieve_upto(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in sieve_upto(_TRIAL_LIMIT))


def _pollard_rho(n: int) -> int:
    """Brent-cycle rho with a fixed parameter schedule; n composite, odd."""
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")  # pragma: no cover


@lru_cache(maxsize=1 << 15)
def factorize(n: int) -> Factorization:
    """Complete factorization of n >= 1, sorted by prime; 1 -> ()."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n == 1:
        return ()
    out: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if is_prime(v):
                out[v] = out.get(v, 0) + 1
                continue
            d = _pollard_rho(v)
            stack.append(d)
            stack.append(v // d)
    return tuple(sorted(out.items()))


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    """Euler phi(n)."""
    phi = 1
    for p, e in factorize(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


@dataclass(frozen=True)
class PrimeStream:
    """All primes p with lower <= p <= upper and p = residue (mod modulus).

    Backed by a segmented sieve so windows near 1e13 stay cheap: memory is
    proportional to ``segment_size`` plus the base primes up to sqrt(upper).
    """

    lower: int
    upper: int  # inclusive
    modulus: int
    residue: int
    segment_size: int = 1 << 21

    def __iter__(self) -> Iterator[int]:
        for _, _, primes in self.segments():
            yield from primes

    def segments(self, size: int | None = None) -> Iterator[tuple[int, int, list[int]]]:
        """Yield (seg_lo, seg_hi_inclusive, primes) in ascending order."""
        size = size or self.segment_size
        lo = max(self.lower, 0)
        if lo > self.upper:
            return
        base = sieve_upto(max(2, math.isqrt(self.upper)))
        while lo <= self.upper:
            hi = min(lo + size - 1, self.upper)
            yield lo, hi, self._sieve_segment(lo, hi, base)
            lo = hi + 1

    def _sieve_segment(self, lo: int, hi: int, base: np.ndarray) -> list[int]:
        mask = np.ones(hi - lo + 1, dtype=bool)
        for v in (0, 1):
            if lo <= v <= hi:
                mask[v - lo] = False
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start <= hi:
                mask[start - lo :: p] = False
        vals = np.flatnonzero(mask) + lo
        if self.modulus > 1:
            vals = vals[vals % self.modulus == self.residue]
        return [int(v) for v in vals]

    def count(self) -> int:
        return sum(1 for _ in self)


def primes_in_progression(lower: int, span: int, q: int, r: int) -> PrimeStream:
    """Primes p with lower <= p <= lower+span and p = r (mod q), ascending.

    Rejects gcd(r, q) > 1 for q > 1: apart from possibly p | q the class
    contains no primes, and a silently empty survey is worse than an error.
    """
    if lower < 0 or span < 0:
        raise ValueError("need lower >= 0 and span >= 0")
    if q < 1 or not 0 <= r < q:
        raise ValueError(f"need 0 <= r < q, got r={r}, q={q}")
    if q > 1 and math.gcd(r, q) > 1:
        raise ValueError(f"gcd({r},{q}) > 1: progression contains at most one prime")
    return PrimeStream(lower, lower + span, q, r)
