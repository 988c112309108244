"""Command-line entry point.

Subcommands: dedekind, survey, tables, verify, ef, class-number,
mean-square. Exit codes: 0 success, 1 verification failure, 2 usage error.
Numeric output is exact-rational by default; pass --decimal N for decimals.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import survey as survey_mod
from .classnumber import relative_class_number, upper_bound_h3_field, upper_bound_subfield
from .dedekind import dedekind_sum, dedekind_sum_naive
from .eisenstein import e_f, order3_subgroups_from_ef, representations
from .meansquare import (
    mean_square_exact,
    mean_square_numeric,
    subgroup_sum_S,
    subgroup_sum_tilde,
)
from .unitgroups import kernel_subgroup, subgroup_from_elements, subgroup_from_generator, subgroup_of_order
from .verify import run_suite

_TABLE_N = {"rho5": 5, "rho7": 7, "rho9": 9, "rho11": 11, "rho13": 13, "rho15": 15}


def _intexpr(text: str) -> int:
    """Accept 100000, 1e5 or 10**5 on the command line."""
    try:
        return int(text)
    except ValueError:
        pass
    if "**" in text:
        base, expo = text.split("**")
        return int(base) ** int(expo)
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(value)


def _decimal(fr: Fraction, digits: int) -> str:
    sign = "-" if fr < 0 else ""
    return sign + survey_mod.ratio_decimal(abs(fr.numerator), fr.denominator, digits)


def _fmt_limit(v: int) -> str:
    k = len(str(v)) - 1
    return f"10^{k}" if v == 10**k else str(v)


def _default_threads() -> int:
    return int(os.environ.get("DSUMS_THREADS", "1"))


def cmd_dedekind(args) -> int:
    fn = dedekind_sum_naive if args.naive else dedekind_sum
    value = fn(args.c, args.d)
    print(_decimal(value, args.decimal) if args.decimal else value)
    return 0


def cmd_survey(args) -> int:
    kwargs = dict(threads=args.threads, checkpoint=args.checkpoint, records=args.records)
    if args.all_odd:
        report = survey_mod.scan_all_odd_subgroups(args.limit)
    elif args.window_from is not None:
        report = survey_mod.scan_window(args.n, args.window_from, args.span, **kwargs)
    else:
        report = survey_mod.scan_fixed_n(args.n, args.limit, **kwargs)
    if args.out == "csv":
        print("n,range,c_prime,c_leq0,rho")
        d = report.to_json()
        print(f"{d['n']},{d['range']},{d['c_prime']},{d['c_leq0']},{d['rho']}")
    else:
        print(json.dumps(report.to_json()))
    return 0


def cmd_tables(args) -> int:
    if args.table == "rho9-window":
        if args.window_from is None or args.span is None:
            raise SystemExit("rho9-window needs --from and --span")
        rep = survey_mod.scan_window(9, args.window_from, args.span, threads=args.threads)
        print(f"{_fmt_limit(args.window_from)} | {_fmt_limit(args.span)} | "
              f"{rep.c_prime} | {rep.c_leq0} | {rep.rho}...")
        return 0
    n = _TABLE_N[args.table]
    limit = args.limit or 10**5
    rep = survey_mod.scan_fixed_n(n, limit, threads=args.threads)
    print(f"{_fmt_limit(limit)} | {rep.c_prime} | {rep.c_leq0} | {rep.rho}...")
    return 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.max_modulus, args.seed)
    failed = False
    for rep in reports:
        print(rep.summary())
        failed = failed or not rep.ok
    return 1 if failed else 0


def cmd_ef(args) -> int:
    f = args.f
    reps = representations(f)
    ratios = e_f(f)
    subs = order3_subgroups_from_ef(f)
    from .numkernel import factorize, totient

    prod = Fraction(1)
    for p, _ in factorize(f):
        prod *= 1 + Fraction(1, p)
    closed = Fraction(totient(f), 12) * (prod - Fraction(1, f))
    out = {
        "f": f,
        "representations": [[r.a, r.b] for r in reps],
        "ratios": sorted(rc.ratio for rc in ratios),
        "subgroups": [list(s.elements) for s in subs],
        "closed_form_tilde_S": str(closed),
        "closed_form_holds": {
            str(list(s.elements)): subgroup_sum_tilde(s) == closed for s in subs
        },
    }
    print(json.dumps(out))
    return 0


def cmd_class_number(args) -> int:
    p = args.p
    m = args.degree or (p - 1)
    h = relative_class_number(p, m, dps=args.dps)
    bound10 = upper_bound_subfield(p, m)
    if m == (p - 1) // 3 and p % 6 == 1:
        bound_special = upper_bound_h3_field(p)[1]
    else:
        bound_special = 2 * p * (p / 24) ** ((p - 1) / 4) if m == p - 1 else None
    out = {
        "p": p,
        "degree": m,
        "h_minus": h,
        "bound_eq10": bound10,
        "bound_eq12_or_13": bound_special,
        "satisfied": h <= bound10 and (bound_special is None or h <= bound_special),
    }
    print(json.dumps(out))
    return 0 if out["satisfied"] else 1


def _parse_subgroup(args, f: int):
    if args.elements:
        return subgroup_from_elements(f, [int(x) for x in args.elements.split(",")])
    if args.gen is not None:
        return subgroup_from_generator(f, args.gen)
    if args.kernel is not None:
        return kernel_subgroup(f, args.kernel)
    if args.order is not None:
        return subgroup_of_order(args.order, f)
    return subgroup_from_elements(f, (1,))


def cmd_mean_square(args) -> int:
    f = args.f
    sub = _parse_subgroup(args, f)
    ms = mean_square_exact(f, sub)
    out = {
        "f": f,
        "subgroup": list(sub.elements),
        "S": str(subgroup_sum_S(sub)),
        "tilde_S": str(subgroup_sum_tilde(sub)),
        "M": ms.to_json(),
    }
    if args.numeric:
        out["M_numeric"] = mean_square_numeric(f, sub)
    print(json.dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dsums", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dedekind", help="print s(c,d) exactly")
    p.add_argument("c", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--naive", action="store_true", help="use the O(d) sawtooth oracle")
    p.add_argument("--decimal", type=int, default=0, metavar="N", help="print N decimal places instead")
    p.set_defaults(fn=cmd_dedekind)

    p = sub.add_parser("survey", help="scan primes for the sign of N(H_n,p)")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--limit", type=_intexpr, default=10**5)
    p.add_argument("--from", dest="window_from", type=_intexpr, default=None)
    p.add_argument("--span", type=_intexpr, default=None)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--records", default=None, help="CSV path for per-prime records")
    p.add_argument("--checkpoint", default=None, help="JSON checkpoint path (resume-aware)")
    p.add_argument("--all-odd", action="store_true", help="scan pairs (p,n) over all odd n | p-1")
    p.set_defaults(fn=cmd_survey)

    p = sub.add_parser("tables", help="reproduce the density table rows")
    p.add_argument("--table", choices=sorted(_TABLE_N) + ["rho9-window"], required=True)
    p.add_argument("--limit", type=_intexpr, default=None)
    p.add_argument("--from", dest="window_from", type=_intexpr, default=None)
    p.add_argument("--span", type=_intexpr, default=None)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("verify", help="run an identity-verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-modulus", type=_intexpr, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("ef", help="representations f=a^2+ab+b^2 and their subgroups")
    p.add_argument("--f", type=int, required=True)
    p.set_defaults(fn=cmd_ef)

    p = sub.add_parser("class-number", help="relative class number and bounds")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--dps", type=int, default=60)
    p.set_defaults(fn=cmd_class_number)

    p = sub.add_parser("mean-square", help="exact M(f,H) as a rational multiple of pi^2")
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--elements", default=None, help="comma-separated subgroup elements")
    p.add_argument("--gen", type=int, default=None, help="subgroup generator")
    p.add_argument("--order", type=int, default=None, help="order-n subgroup (prime f)")
    p.add_argument("--kernel", type=int, default=None, help="kernel of reduction mod f'")
    p.add_argument("--numeric", action="store_true", help="also average |L(1,chi)|^2 in floats")
    p.set_defaults(fn=cmd_mean_square)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
