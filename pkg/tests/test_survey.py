import json
import os

import pytest

from dsums.survey import (
    n_record,
    ratio_decimal,
    resume,
    scan_all_odd_subgroups,
    scan_fixed_n,
    scan_window,
)


def test_ratio_decimal():
    assert ratio_decimal(838, 1592) == "0.52638"
    assert ratio_decimal(4, 4) == "1.00000"
    assert ratio_decimal(1, 3, digits=7) == "0.3333333"
    assert ratio_decimal(1, 0) == "nan"


def test_n_record_examples():
    rec = n_record(7, 3)
    assert (rec.two_S, rec.N, rec.nonpositive) == (1, -1, True)
    rec = n_record(31, 5)
    assert (rec.N, rec.nonpositive) == (35, False)
    rec = n_record(8191, 13)
    assert rec.N == 2 * 8191 - 75
    with pytest.raises(ValueError):
        n_record(7, 1)


def test_record_parity_invariants():
    for p, n in ((19, 9), (31, 15), (61, 5), (1009, 9), (151, 75)):
        rec = n_record(p, n)
        assert (rec.two_S - (p - 1) // 2) % 2 == 0
        assert rec.N % 2 == 1
        assert rec.N == 6 * rec.two_S - p
        assert rec.nonpositive == (rec.N < 0)


def test_scan_small_counts():
    rep = scan_fixed_n(9, 10**4)
    assert (rep.c_prime, rep.c_leq0) == (203, 116)
    assert rep.rho == ratio_decimal(116, 203)
    assert rep.n == 9 and rep.to_json()["range"] == "p <= 10000"


def test_window_from_zero_equals_fixed():
    a = scan_fixed_n(9, 30000)
    b = scan_window(9, 0, 30000)
    assert (a.c_prime, a.c_leq0) == (b.c_prime, b.c_leq0)


def test_scan_all_odd_subgroups():
    rep = scan_all_odd_subgroups(7)
    assert (rep.c_prime, rep.c_leq0) == (4, 4) and rep.rho == "1.00000"
    # 8 pairs through B=13: (11,5) joins the three the smaller bound had
    rep = scan_all_odd_subgroups(13)
    assert (rep.c_prime, rep.c_leq0) == (8, 8)
    rep31 = scan_all_odd_subgroups(31)
    assert rep31.c_prime == 20
    # (31,5) carries N = 35 > 0, so not everything is counted
    assert rep31.c_leq0 < rep31.c_prime
    assert rep31.to_json()["n"] == "all"


def test_threads_deterministic():
    seq = scan_fixed_n(5, 40000, segment_size=1 << 12)
    par = scan_fixed_n(5, 40000, threads=2, segment_size=1 << 12)
    assert seq == par


def test_records_csv(tmp_path):
    path = str(tmp_path / "records.csv")
    rep = scan_fixed_n(9, 3000, records=path)
    lines = open(path).read().strip().splitlines()
    assert lines[0] == "p,n,two_S,N,nonpositive"
    assert len(lines) == rep.c_prime + 1
    p, n, two_s, big_n, flag = lines[1].split(",")
    assert n == "9" and int(big_n) == 6 * int(two_s) - int(p)
    assert flag in ("true", "false")
    assert sum(1 for ln in lines[1:] if ln.endswith("true")) == rep.c_leq0
    # rows ascend in p
    ps = [int(ln.split(",")[0]) for ln in lines[1:]]
    assert ps == sorted(ps)


def test_checkpoint_resume_matches_fresh(tmp_path):
    B, mid = 30000, 15000
    full = scan_fixed_n(9, B)
    half = scan_fixed_n(9, mid)
    ck = str(tmp_path / "ck.json")
    with open(ck, "w") as fh:
        json.dump(
            {
                "version": 1,
                "mode": "fixed",
                "n": 9,
                "A": 0,
                "span_or_B": B,
                "last_p": mid,
                "c_prime": half.c_prime,
                "c_leq0": half.c_leq0,
            },
            fh,
        )
    resumed = scan_fixed_n(9, B, checkpoint=ck)
    assert (resumed.c_prime, resumed.c_leq0) == (full.c_prime, full.c_leq0)
    # checkpoint now marks completion: resuming again is a no-op
    again = resume(ck)
    assert again == resumed


def test_checkpoint_mismatch_errors(tmp_path):
    ck = str(tmp_path / "ck.json")
    scan_fixed_n(9, 2000, checkpoint=ck)
    with pytest.raises(ValueError):
        scan_fixed_n(7, 2000, checkpoint=ck)
    with pytest.raises(ValueError):
        scan_fixed_n(9, 4000, checkpoint=ck)
    with pytest.raises(ValueError):
        scan_window(9, 0, 2000, checkpoint=ck)


def test_checkpoint_written_during_scan(tmp_path):
    ck = str(tmp_path / "ck.json")
    scan_fixed_n(9, 20000, checkpoint=ck, segment_size=1 << 12)
    data = json.load(open(ck))
    assert data["mode"] == "fixed" and data["n"] == 9
    assert data["last_p"] == 20000
    assert os.path.exists(ck) and not os.path.exists(ck + ".tmp")


def test_scan_rejects_even_n():
    with pytest.raises(ValueError):
        scan_fixed_n(4, 1000)
    with pytest.raises(ValueError):
        scan_fixed_n(1, 1000)
