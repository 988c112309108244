import math
from fractions import Fraction

import pytest

from dsums.dedekind import dedekind_sum_tilde
from dsums.eisenstein import (
    dedekind_at_ratio,
    divisor_descend,
    e_f,
    order3_subgroups_from_ef,
    representations,
)
from dsums.meansquare import subgroup_sum_tilde
from dsums.numkernel import divisors, factorize, totient
from dsums.unitgroups import element_order, subgroup_from_generator
from dsums.verify import eisenstein_moduli


def test_representations_examples():
    assert [(r.a, r.b) for r in representations(7)] == [(2, 1)]
    assert [(r.a, r.b) for r in representations(91)] == [(9, 1), (6, 5)]
    assert [(r.a, r.b) for r in representations(49)] == [(5, 3)]
    for f in (7, 49, 91, 1729):
        for r in representations(f):
            assert r.norm == f and math.gcd(r.a, r.b) == 1


def test_representations_reject_bad_modulus():
    for bad in (3, 5, 15, 21, 33, 98):
        with pytest.raises(ValueError):
            representations(bad)


def test_ratio_examples():
    assert sorted(rc.ratio for rc in e_f(7)) == [2, 4]
    assert sorted(rc.ratio for rc in e_f(91)) == [9, 16, 74, 81]
    assert sorted(rc.ratio for rc in e_f(49)) == [18, 30]
    assert len(e_f(1729)) == 8


def test_ratio_properties():
    for f in (7, 13, 49, 91, 133, 169, 1729):
        ratios = [rc.ratio for rc in e_f(f)]
        assert len(set(ratios)) == len(ratios) == 1 << len(factorize(f))
        for rc in e_f(f):
            assert element_order(rc.ratio, f) == 3
            assert rc.ratio == rc.witness.a * pow(rc.witness.b, -1, f) % f


def test_cardinality_sweep():
    for f in eisenstein_moduli(2 * 10**4):
        assert len(e_f(f)) == 1 << len(factorize(f))


def test_order3_subgroups():
    subs = order3_subgroups_from_ef(91)
    assert sorted(tuple(s.elements) for s in subs) == [(1, 9, 81), (1, 16, 74)]
    assert [tuple(s.elements) for s in order3_subgroups_from_ef(7)] == [(1, 2, 4)]
    assert [tuple(s.elements) for s in order3_subgroups_from_ef(49)] == [(1, 18, 30)]
    for f in (91, 133, 1729):
        subs = order3_subgroups_from_ef(f)
        assert len(subs) == 1 << (len(factorize(f)) - 1)
        for s in subs:
            assert s.is_closed()


def test_closed_form_over_ef_subgroups():
    for f in eisenstein_moduli(3000):
        prod = Fraction(1)
        for p, _ in factorize(f):
            prod *= 1 + Fraction(1, p)
        want = Fraction(totient(f), 12) * (prod - Fraction(1, f))
        for sub in order3_subgroups_from_ef(f):
            assert subgroup_sum_tilde(sub) == want


def test_counterexample_at_91():
    want = Fraction(666, 91)
    assert subgroup_sum_tilde(subgroup_from_generator(91, 29)) == Fraction(610, 91) != want
    assert subgroup_sum_tilde(subgroup_from_generator(91, 53)) == Fraction(562, 91) != want
    assert dedekind_sum_tilde(29, 91) == Fraction(-22, 91)
    assert dedekind_sum_tilde(53, 91) == Fraction(-46, 91)
    assert dedekind_sum_tilde(9, 91) == Fraction(6, 91) == Fraction(totient(91), 12 * 91)


def test_divisor_descend():
    d = divisor_descend(9, 1, 7)
    assert (d.a, d.b) == (2, 1)
    for f in (91, 637, 1729):
        for r in representations(f):
            for delta in divisors(f):
                d = divisor_descend(r.a, r.b, delta)
                assert d.norm == delta and math.gcd(d.a, d.b) == 1
                if delta > 1:
                    assert (r.a * d.b - d.a * r.b) % delta == 0
    assert divisor_descend(9, 1, 91).norm == 91
    with pytest.raises(ValueError):
        divisor_descend(9, 1, 5)


def test_dedekind_at_ratio():
    rc9 = next(rc for rc in e_f(91) if rc.ratio == 9)
    assert dedekind_at_ratio(91, 13, rc9) == Fraction(1, 13)
    assert dedekind_at_ratio(91, 91, rc9) == Fraction(90, 12 * 91)
    rc7 = next(rc for rc in e_f(7) if rc.ratio == 2)
    assert dedekind_at_ratio(7, 7, rc7) == Fraction(1, 14)
    for rc in e_f(133):
        for delta in divisors(133):
            assert dedekind_at_ratio(133, delta, rc) == (
                Fraction(delta - 1, 12 * delta) if delta > 1 else 0
            )
