"""Prime scans for the sign of N(H_n,p) = 12*S(H_n,p) - p.

For each prime p = 1 (mod 2n) the scanner builds the order-n subgroup of
(Z/pZ)* (smallest primitive root, then one power), evaluates the n Dedekind
sums with the O(log p) descent in pure integer arithmetic, and records the
exact integers 2S and N. No float ever enters the N <= 0 decision, and
every record passes the parity audit (2S = (p-1)/2 mod 2, N odd) or the
scan aborts: a violation would mean the engine is broken, not the data.

Scans checkpoint at segment boundaries (atomic JSON rename) and can resume;
segments may also fan out to worker processes, with counts merged in
ascending order so reports are identical for any worker count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .dedekind import dedekind_sum_parts
from .numkernel import divisors, primes_in_progression
from .unitgroups import primitive_root

__all__ = [
    "DensityReport",
    "SurveyRecord",
    "n_record",
    "ratio_decimal",
    "resume",
    "scan_all_odd_subgroups",
    "scan_fixed_n",
    "scan_window",
]

CSV_HEADER = "p,n,two_S,N,nonpositive"


@dataclass(frozen=True)
class SurveyRecord:
    """Exact survey data for one prime: two_S = 2*S(H_n,p), N = 12*S - p."""

    p: int
    n: int
    two_S: int
    N: int
    nonpositive: bool

    def csv_row(self) -> str:
        return f"{self.p},{self.n},{self.two_S},{self.N},{'true' if self.nonpositive else 'false'}"


@dataclass(frozen=True)
class DensityReport:
    """Aggregate counts for a scan; rho is exactly c_leq0/c_prime as text."""

    n: int | None  # None for the all-odd-subgroups scan
    range_desc: str
    c_prime: int
    c_leq0: int
    rho: str

    def to_json(self) -> dict:
        return {
            "n": self.n if self.n is not None else "all",
            "range": self.range_desc,
            "c_prime": self.c_prime,
            "c_leq0": self.c_leq0,
            "rho": self.rho,
        }


def ratio_decimal(num: int, den: int, digits: int = 5) -> str:
    """Truncated decimal expansion of num/den to `digits` places."""
    if den == 0:
        return "nan"
    whole, rem = divmod(num, den)
    out = [str(whole), "."]
    for _ in range(digits):
        rem *= 10
        d, rem = divmod(rem, den)
        out.append(str(d))
    return "".join(out)


def n_record(p: int, n: int) -> SurveyRecord:
    """Exact record for the order-n subgroup of (Z/pZ)*; needs n > 1, n | p-1."""
    if n <= 1:
        raise ValueError("n_record needs n > 1")
    g = primitive_root(p)
    h0 = pow(g, (p - 1) // n, p)
    num, den = 0, 1
    h = 1
    for _ in range(n):
        a, b = dedekind_sum_parts(h, p)
        num = num * b + a * den
        den *= b
        gg = math.gcd(num, den)
        if gg > 1:
            num //= gg
            den //= gg
        h = h * h0 % p
    if den not in (1, 2):
        raise ArithmeticError(f"2*S(H_{n},{p}) is not an integer (den={den})")
    two_s = 2 * num // den
    if (two_s - (p - 1) // 2) % 2:
        raise ArithmeticError(f"parity audit failed at p={p}, n={n}: 2S={two_s}")
    big_n = 6 * two_s - p
    if big_n % 2 == 0:
        raise ArithmeticError(f"N(H_{n},{p}) = {big_n} is even")
    return SurveyRecord(p, n, two_s, big_n, big_n <= 0)


# ---------------------------------------------------------------------------
# checkpointing


@dataclass
class _Checkpoint:
    mode: str  # "fixed" or "window"
    n: int
    A: int
    span_or_B: int
    last_p: int
    c_prime: int
    c_leq0: int


def _load_checkpoint(path: str) -> _Checkpoint | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    data.pop("version", None)
    return _Checkpoint(**data)


def _save_checkpoint(path: str, ck: _Checkpoint) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"version": 1, **asdict(ck)}, fh)
    os.replace(tmp, path)


class _RecordSink:
    """CSV sink for record streams; appends on resume, headers once."""

    def __init__(self, path: str | None, fresh: bool):
        self.path = path
        self.fh = None
        if path is not None:
            exists = os.path.exists(path) and os.path.getsize(path) > 0
            self.fh = open(path, "w" if fresh or not exists else "a")
            if fresh or not exists:
                self.fh.write(CSV_HEADER + "\n")

    def write(self, records) -> None:
        if self.fh is not None:
            for rec in records:
                self.fh.write(rec.csv_row() + "\n")

    def close(self) -> None:
        if self.fh is not None:
            self.fh.close()


# ---------------------------------------------------------------------------
# scan drivers


def _segment_worker(args: tuple[int, int, int, bool]):
    n, lo, hi, want_records = args
    c_p = c_le = 0
    rows: list[SurveyRecord] = []
    for p in primes_in_progression(lo, hi - lo, 2 * n, 1):
        rec = n_record(p, n)
        c_p += 1
        c_le += rec.nonpositive
        if want_records:
            rows.append(rec)
    return c_p, c_le, rows


def _scan(
    mode: str,
    n: int,
    lower: int,
    upper: int,
    span_or_b: int,
    *,
    threads: int = 1,
    segment_size: int = 1 << 20,
    checkpoint: str | None = None,
    records: str | None = None,
) -> DensityReport:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need odd n >= 3, got {n}")
    start = max(lower, 2)
    c_p = c_le = 0
    fresh = True
    if checkpoint:
        ck = _load_checkpoint(checkpoint)
        if ck is not None:
            if (ck.mode, ck.n, ck.A, ck.span_or_B) != (mode, n, lower, span_or_b):
                raise ValueError(
                    f"checkpoint mismatch: file has {(ck.mode, ck.n, ck.A, ck.span_or_B)}, "
                    f"scan wants {(mode, n, lower, span_or_b)}"
                )
            start = ck.last_p + 1
            c_p, c_le = ck.c_prime, ck.c_leq0
            fresh = False
    sink = _RecordSink(records, fresh)
    try:
        if start <= upper:
            segments = []
            lo = start
            while lo <= upper:
                hi = min(lo + segment_size - 1, upper)
                segments.append((n, lo, hi, records is not None))
                lo = hi + 1
            if threads > 1:
                with ProcessPoolExecutor(max_workers=threads) as pool:
                    results = pool.map(_segment_worker, segments, chunksize=1)
                    for (seg_n, seg_lo, seg_hi, _), (dp, dl, rows) in zip(segments, results):
                        c_p += dp
                        c_le += dl
                        sink.write(rows)
                        if checkpoint:
                            _save_checkpoint(
                                checkpoint,
                                _Checkpoint(mode, n, lower, span_or_b, seg_hi, c_p, c_le),
                            )
            else:
                for seg in segments:
                    dp, dl, rows = _segment_worker(seg)
                    c_p += dp
                    c_le += dl
                    sink.write(rows)
                    if checkpoint:
                        _save_checkpoint(
                            checkpoint,
                            _Checkpoint(mode, n, lower, span_or_b, seg[2], c_p, c_le),
                        )
        if checkpoint:
            _save_checkpoint(checkpoint, _Checkpoint(mode, n, lower, span_or_b, upper, c_p, c_le))
    finally:
        sink.close()
    desc = f"p <= {upper}" if mode == "fixed" else f"{lower} <= p <= {upper}"
    return DensityReport(n, desc, c_p, c_le, ratio_decimal(c_le, c_p))


def scan_fixed_n(n: int, limit: int, **kwargs) -> DensityReport:
    """Density report over primes p = 1 (mod 2n), p <= limit."""
    return _scan("fixed", n, 0, limit, limit, **kwargs)


def scan_window(n: int, lower: int, span: int, **kwargs) -> DensityReport:
    """Density report over primes p = 1 (mod 2n), lower <= p <= lower+span."""
    if lower < 0:
        raise ValueError("need lower >= 0")
    return _scan("window", n, lower, lower + span, span, **kwargs)


def resume(checkpoint: str, *, threads: int = 1, records: str | None = None) -> DensityReport:
    """Continue the scan described by a checkpoint file to completion."""
    ck = _load_checkpoint(checkpoint)
    if ck is None:
        raise ValueError(f"no checkpoint at {checkpoint}")
    if ck.mode == "fixed":
        return scan_fixed_n(ck.n, ck.span_or_B, checkpoint=checkpoint, threads=threads, records=records)
    return scan_window(ck.n, ck.A, ck.span_or_B, checkpoint=checkpoint, threads=threads, records=records)


def scan_all_odd_subgroups(limit: int) -> DensityReport:
    """Pairs (p, n): p odd prime <= limit, n an odd divisor of p-1 (n = 1 included).

    The n = 1 pair carries N = (2-3p)/p < 0 and always counts as
    nonpositive; pairs with n > 1 use the exact integer N.
    """
    if limit < 3:
        raise ValueError("need limit >= 3")
    pairs = nonpos = 0
    for p in primes_in_progression(3, limit - 3, 1, 0):
        for d in divisors(p - 1):
            if d % 2 == 0:
                continue
            pairs += 1
            if d == 1 or n_record(p, d).nonpositive:
                nonpos += 1
    return DensityReport(None, f"p <= {limit}", pairs, nonpos, ratio_decimal(nonpos, pairs))
