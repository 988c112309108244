"""Relative class numbers h^- of imaginary subfields of Q(zeta_p), and the
upper bounds that follow from the exact mean square values.

h^- comes from the product of L(1,chi) over the odd characters trivial on
the Galois kernel, evaluated in extended precision; the rounding residual
is the correctness monitor. Scope is prime conductor only, where the Hasse
unit index is 1 and the root-of-unity count is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .meansquare import char_value_mp, euler_correction_pi, mean_square_exact
from .numkernel import is_prime
from .unitgroups import DirichletCharacter, Subgroup, odd_characters_trivial_on, subgroup_of_order

__all__ = [
    "FieldContext",
    "PrecisionError",
    "b1_chi_mp",
    "field_context",
    "general_bound",
    "relative_class_number",
    "upper_bound_h3_field",
    "upper_bound_subfield",
]

MAX_CONDUCTOR = 200  # precision budget for the L-value product


class PrecisionError(ArithmeticError):
    """Raised when the rounded h^- sits too far from an integer."""


@dataclass(frozen=True)
class FieldContext:
    """Invariants of the degree-m imaginary subfield K of Q(zeta_p).

    Q_K = 1 (K is cyclic over Q); w_K = 2p only for the full cyclotomic
    field; d_K = p^(m-1) and d_{K+} = p^(m/2-1) by conductor-discriminant.
    """

    p: int
    m: int
    n: int
    q_k: int
    w_k: int
    d_k: int
    d_k_plus: int


def field_context(p: int, m: int) -> FieldContext:
    if not is_prime(p) or p < 3:
        raise ValueError(f"{p} is not an odd prime")
    if m < 2 or m % 2 or (p - 1) % m:
        raise ValueError(f"degree must be an even divisor of p-1, got m={m}")
    return FieldContext(
        p=p,
        m=m,
        n=m // 2,
        q_k=1,
        w_k=2 * p if m == p - 1 else 2,
        d_k=p ** (m - 1),
        d_k_plus=p ** (m // 2 - 1),
    )


def _galois_kernel(p: int, m: int) -> Subgroup:
    return subgroup_of_order((p - 1) // m, p)


def _l_one_mp(chi: DirichletCharacter, cot_table) -> "mp.mpc":
    p = chi.modulus
    acc = mp.mpc(0)
    for a in range(1, p):
        acc += char_value_mp(chi, a) * cot_table[a]
    return mp.pi / (2 * p) * acc


def relative_class_number(p: int, m: int, dps: int = 60) -> int:
    """h^- of the degree-m imaginary subfield of Q(zeta_p).

    Evaluates (w_K/(2 pi)^n) * p^(m/4) * prod L(1,chi) over X_p^-(H) at
    `dps` working digits (>= 50) and rounds; a residual >= 1e-4 raises
    PrecisionError instead of returning a bogus integer.
    """
    if p > MAX_CONDUCTOR:
        raise ValueError(f"conductor {p} beyond the precision budget ({MAX_CONDUCTOR})")
    ctx = field_context(p, m)
    chars = odd_characters_trivial_on(_galois_kernel(p, m))
    if len(chars) != ctx.n:
        raise ArithmeticError(f"expected {ctx.n} characters, got {len(chars)}")
    with mp.workdps(max(50, dps)):
        cot = [None] + [mp.cot(mp.pi * a / p) for a in range(1, p)]
        prod = mp.mpc(1)
        for ch in chars:
            prod *= _l_one_mp(ch, cot)
        h = ctx.w_k / (2 * mp.pi) ** ctx.n * mp.power(p, mp.mpf(ctx.m) / 4) * prod
        if abs(h.imag) > mp.mpf("1e-20"):
            raise PrecisionError(f"h^- came out non-real: {h}")
        value = h.real
        rounded = int(mp.nint(value))
        residual = abs(value - rounded)
        if residual >= mp.mpf("1e-4"):
            raise PrecisionError(f"h^-({p},{m}) = {value}: residual {residual} too large")
    if rounded < 1:
        raise ArithmeticError(f"h^-({p},{m}) rounded to {rounded}")
    return rounded


def b1_chi_mp(chi: DirichletCharacter):
    """Generalized Bernoulli number B_{1,chi} = (1/f) sum_a a*chi(a).

    Independent oracle for h^- = Q w prod(-B_{1,chi}/2) over odd chi; used
    by the test-suite at the current mpmath precision.
    """
    f = chi.modulus
    acc = mp.mpc(0)
    for a in range(1, f):
        acc += a * char_value_mp(chi, a)
    return acc / f


def upper_bound_subfield(p: int, m: int) -> float:
    """Bound h^- <= w_K * (p*M(p,H)/(4 pi^2))^(m/4) with exact M coefficient."""
    ctx = field_context(p, m)
    coef = mean_square_exact(p, _galois_kernel(p, m)).coefficient
    return ctx.w_k * float(Fraction(p, 4) * coef) ** (m / 4)


def upper_bound_h3_field(p: int) -> tuple[float, float]:
    """Bounds for the degree-(p-1)/3 subfield: the M(p,H_3)-based bound and
    the simplified 2*(p/24)^((p-1)/12); returns (sharp, simple), sharp <= simple."""
    if not is_prime(p) or p % 6 != 1:
        raise ValueError(f"need a prime p = 1 mod 6, got {p}")
    coef = mean_square_exact(p, subgroup_of_order(3, p)).coefficient
    expo = (p - 1) / 12
    sharp = 2 * float(Fraction(p, 4) * coef) ** expo
    simple = 2 * (p / 24) ** expo
    if sharp > simple * (1 + 1e-12):
        raise ArithmeticError(f"bound ordering violated at p={p}: {sharp} > {simple}")
    return sharp, simple


def general_bound(f: int, sub: Subgroup, q_k: int, w_k: int, d_ratio_sqrt: float) -> float:
    """Arithmetic-geometric-mean bound for general modulus f:

    h^- <= (Q_K w_K / Pi(f,H)) * sqrt(d_K/d_{K+}) * (M(f,H)/(4 pi^2))^(n/2),
    with n the number of odd characters trivial on H.
    """
    if q_k not in (1, 2):
        raise ValueError("Hasse unit index must be 1 or 2")
    n = len(odd_characters_trivial_on(sub))
    coef = mean_square_exact(f, sub).coefficient
    pi_corr = euler_correction_pi(f, sub)
    return q_k * w_k / pi_corr * d_ratio_sqrt * float(coef / 4) ** (n / 2)
