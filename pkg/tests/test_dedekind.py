import math
import random
from fractions import Fraction

import pytest
from mpmath import mp

from dsums.dedekind import (
    dedekind_sum,
    dedekind_sum_naive,
    dedekind_sum_tilde,
    dedekind_sum_tilde_naive,
    s_near_one_closed,
    s_one,
    tilde_s_one,
)
from dsums.numkernel import sieve_upto


@pytest.mark.parametrize(
    "c,d,want",
    [
        (5, 1, Fraction(0)),
        (1, 9, Fraction(14, 27)),
        (3, 5, Fraction(0)),
        (2, 7, Fraction(1, 14)),
        (4, 9, Fraction(-4, 27)),
        (7, 9, Fraction(-4, 27)),  # 7 = 4^-1 mod 9
        (4, 27, Fraction(73, 162)),
        (13, 27, Fraction(-143, 162)),
    ],
)
def test_pinned_values(c, d, want):
    assert dedekind_sum(c, d) == want
    assert dedekind_sum_naive(c, d) == want


def test_s_one_closed_form():
    assert s_one(1) == 0
    assert s_one(7) == Fraction(5, 14)
    assert s_one(9) == Fraction(14, 27)
    for d in range(1, 200):
        assert s_one(d) == dedekind_sum(1, d)


def test_rejects_non_coprime():
    with pytest.raises(ValueError):
        dedekind_sum(2, 8)
    with pytest.raises(ValueError):
        dedekind_sum_naive(6, 9)
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)


def test_oracle_equivalence_small():
    for d in range(1, 121):
        for c in range(d):
            if math.gcd(c, d) == 1:
                assert dedekind_sum(c, d) == dedekind_sum_naive(c, d)


def test_cotangent_definition_matches():
    """The sawtooth oracle agrees with the defining cotangent sum."""
    with mp.workdps(40):
        for c, d in ((2, 7), (4, 9), (5, 12), (8, 13), (7, 30)):
            cot = sum(
                mp.cot(mp.pi * a / d) * mp.cot(mp.pi * a * c / d)
                for a in range(1, d)
                if (a * c) % d  # cot has poles only at multiples of d
            ) / (4 * d)
            assert abs(cot - mp.mpf(str(dedekind_sum_naive(c, d)))) < mp.mpf("1e-30")


def test_reciprocity_random():
    rng = random.Random(11)
    done = 0
    while done < 500:
        d = rng.randrange(3, 10**6)
        c = rng.randrange(2, d)
        if math.gcd(c, d) != 1:
            continue
        lhs = dedekind_sum(c, d) + dedekind_sum(d, c)
        assert lhs == Fraction(c * c + d * d - 3 * c * d + 1, 12 * c * d)
        done += 1


def test_periodicity_and_negation():
    rng = random.Random(5)
    for _ in range(200):
        d = rng.randrange(2, 5000)
        c = rng.randrange(1, d)
        if math.gcd(c, d) != 1:
            continue
        v = dedekind_sum(c, d)
        assert dedekind_sum(c + d, d) == v
        assert dedekind_sum(c - d, d) == v
        assert dedekind_sum(-c, d) == -v


def test_inverse_invariance_exhaustive():
    for d in range(2, 201):
        for c in range(1, d):
            if math.gcd(c, d) == 1:
                assert dedekind_sum(pow(c, -1, d), d) == dedekind_sum(c, d)


def test_oddness_against_oracle():
    for d in range(2, 201):
        for c in range(1, d):
            if math.gcd(c, d) == 1:
                assert dedekind_sum(d - c, d) == -dedekind_sum_naive(c, d)


def test_denominator_bound_random():
    rng = random.Random(3)
    for _ in range(1000):
        d = rng.randrange(2, 10**6)
        c = rng.randrange(1, d)
        if math.gcd(c, d) != 1:
            continue
        assert (2 * d * math.gcd(3, d) * dedekind_sum(c, d)).denominator == 1


def test_denominator_optimality_witness():
    for p in map(int, sieve_upto(10**4)):
        if p % 12 != 7:
            continue
        v = 2 * p * math.gcd(3, p) * s_one(p)
        assert v == (p - 1) * (p - 2) // 6
        assert int(v) % 2 == 1 and math.gcd(int(v), p) == 1


@pytest.mark.parametrize(
    "c,f,want",
    [
        (29, 91, Fraction(-22, 91)),
        (53, 91, Fraction(-46, 91)),
        (9, 91, Fraction(6, 91)),
    ],
)
def test_tilde_91_values(c, f, want):
    assert dedekind_sum_tilde(c, f) == want


def test_tilde_closed_form():
    assert tilde_s_one(12) == Fraction(7, 12)
    assert tilde_s_one(9) == Fraction(1, 2)
    for p in (5, 7, 11, 13, 101):
        assert tilde_s_one(p) == s_one(p)
    for f in range(2, 150):
        assert dedekind_sum_tilde(1, f) == tilde_s_one(f)


def test_tilde_engines_agree():
    for f in range(2, 80):
        for c in range(1, f):
            if math.gcd(c, f) == 1:
                assert dedekind_sum_tilde(c, f) == dedekind_sum_tilde_naive(c, f)


def test_tilde_matches_restricted_cotangent_sum():
    """Check the restricted-sum definition itself, independently of Moebius."""
    with mp.workdps(40):
        for c, f in ((5, 12), (29, 91), (7, 36), (11, 60)):
            cot = sum(
                mp.cot(mp.pi * n / f) * mp.cot(mp.pi * n * c / f)
                for n in range(1, f)
                if math.gcd(n, f) == 1
            ) / (4 * f)
            assert abs(cot - mp.mpf(str(dedekind_sum_tilde(c, f)))) < mp.mpf("1e-30")


def test_tilde_rejects_bad_args():
    with pytest.raises(ValueError):
        dedekind_sum_tilde(3, 9)
    with pytest.raises(ValueError):
        dedekind_sum_tilde(1, 1)


def test_near_one_closed():
    assert s_near_one_closed(9, 3) == Fraction(-4, 27) == dedekind_sum(4, 9)
    assert s_near_one_closed(25, 5) == Fraction(-4, 25) == dedekind_sum(6, 25)
    assert s_near_one_closed(4, 2) == Fraction(-1, 8) == dedekind_sum(3, 4)
    assert s_near_one_closed(1, 1) == 0


def test_near_one_closed_preconditions():
    with pytest.raises(ValueError):
        s_near_one_closed(27, 3)  # 27 does not divide 9
    with pytest.raises(ValueError):
        s_near_one_closed(9, 2)
