"""Command-line front end: build, simulate, verify, report, compare.

Exit codes: 0 success, 1 verification or bound failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .adders import build_gidney_adder, build_qcla_adder, build_ripple_adder
from .circuit import Circuit
from .compnsub import Variant, build_compnsub
from .dividers import Algorithm, NrVariant, build_division, read_result
from .export import to_qasm
from .lowering import Strategy, lower
from .resources import (BASELINE_FOR, BaselineId, MetricUnavailable, canonical, formula_compnsub,
                        formula_division, formula_strategy, measure, ratio_report,
                        validate_bounds)
from .sim import decode, encode, simulate
from .verify import verify_adder, verify_compnsub, verify_division

DIVISIONS = {"long": Algorithm.LONG, "restoring": Algorithm.RESTORING, "nonrestoring": Algorithm.NON_RESTORING}
ADDERS = ("ripple", "qcla", "gidney")
ALGS = ("compnsub",) + tuple(DIVISIONS) + ADDERS
BASELINES = {"OPF24": BaselineId.OPF24_Long, "TMCVH19": None}


class UsageError(Exception):
    pass


def _variants(alg: str) -> list[str]:
    if alg == "nonrestoring":
        return [v.value for v in NrVariant]
    return [v.value for v in Variant]


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--alg {args.alg} needs " + ", ".join("--" + n for n in missing))


def build_from_args(args) -> Circuit:
    if args.alg == "compnsub":
        _need(args, "variant", "k")
        return build_compnsub(args.variant, args.k)
    if args.alg in DIVISIONS:
        _need(args, "variant", "n")
        if args.variant not in _variants(args.alg):
            raise UsageError(f"variant {args.variant} not available for {args.alg}")
        return build_division(DIVISIONS[args.alg], args.variant, args.n, args.m)
    _need(args, "k")
    if args.alg == "ripple":
        return build_ripple_adder(args.k)
    if args.alg == "qcla":
        return build_qcla_adder(args.k)
    return build_gidney_adder(args.k, carry_out=True)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, sort_keys=True, indent=1) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        if not rows:
            return
        cols = list(rows[0])
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
        out.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(r[c]).ljust(widths[c]) for c in cols).rstrip() + "\n")


# verbs ----------------------------------------------------------------------------

def cmd_build(args, out) -> int:
    c = build_from_args(args)
    if args.lower:
        c = lower(c, Strategy(args.lower))
    text = to_qasm(c)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_simulate(args, out) -> int:
    c = build_from_args(args)
    if args.alg in DIVISIONS:
        _need(args, "N", "D")
        final = simulate(c, encode(c, {"B": args.N, "A": args.D}))
        res = read_result(c, final)
        out.write(f"quotient={res.quotient} remainder={res.remainder} divisor={res.divisor}"
                  + ("" if res.contract_ok else " contract=violated") + "\n")
        return 0
    _need(args, "a", "b")
    final = simulate(c, encode(c, {"A": args.a, "B": args.b}))
    names = [n for n in ("A", "B", "Z") if n in c.registers]
    out.write(" ".join(f"{n}={decode(c, final, n)}" for n in names) + "\n")
    return 0


def _default_grid(alg: str) -> list[dict]:
    if alg == "compnsub":
        return [dict(variant=v.value, k=k) for v in Variant for k in range(2, 9)]
    if alg == "long":
        return [dict(variant=v.value, n=n, m=m) for v in Variant for n in range(2, 7) for m in range(1, n + 1)]
    if alg in DIVISIONS:
        return [dict(variant=v, n=n) for v in _variants(alg) for n in range(2, 6)]
    return [dict(k=k) for k in range(1, 7)]


def cmd_verify(args, out) -> int:
    if args.k is None and args.n is None:
        points = _default_grid(args.alg)
        if args.variant:
            points = [p for p in points if p.get("variant") == args.variant]
    else:
        points = [dict(variant=args.variant, k=args.k, n=args.n, m=args.m)]
    ok_all = True
    for p in points:
        if args.alg == "compnsub":
            if p.get("variant") is None or p.get("k") is None:
                raise UsageError("--alg compnsub needs --variant and --k")
            res = verify_compnsub(p["variant"], p["k"])
            label = f"compnsub {p['variant']} k={p['k']}"
        elif args.alg in DIVISIONS:
            if p.get("variant") is None or p.get("n") is None:
                raise UsageError(f"--alg {args.alg} needs --variant and --n")
            res = verify_division(DIVISIONS[args.alg], p["variant"], p["n"], p.get("m"),
                                  exact_width=args.exact_width)
            label = f"{args.alg} {p['variant']} n={p['n']}" + (f" m={p['m']}" if p.get("m") else "")
        else:
            if p.get("k") is None:
                raise UsageError(f"--alg {args.alg} needs --k")
            res = verify_adder(args.alg, p["k"])
            label = f"{args.alg} k={p['k']}"
        ok_all &= res.ok
        out.write(str(res) + ("" if len(points) == 1 else f"  [{label}]") + "\n")
    return 0 if ok_all else 1


def _bounds_for(args):
    if args.alg == "compnsub":
        return formula_compnsub(args.variant, args.k)
    if args.alg in DIVISIONS:
        return formula_division(DIVISIONS[args.alg], args.variant, args.n, args.m)
    raise UsageError("report supports compnsub and the division algorithms")


def cmd_report(args, out) -> int:
    c = build_from_args(args)
    bounds = _bounds_for(args)
    strategy = Strategy(args.strategy) if args.strategy else formula_strategy(args.variant)
    rep = measure(c, strategy)
    verdicts = validate_bounds(rep, bounds)
    if args.metric:
        key = canonical(args.metric)
        verdicts = [v for v in verdicts if v.metric == key]
        if not verdicts:
            raise UsageError(f"no formula for metric {args.metric!r} here")
    rows = [dict(metric=v.metric, measured=v.measured, formula=v.bound.value, kind=v.bound.kind.value,
                 verdict="ok" if v.ok else "FAIL") for v in verdicts]
    _emit_rows(rows, args.format, out)
    return 0 if all(v.ok for v in verdicts) else 1


def cmd_compare(args, out) -> int:
    if args.alg not in DIVISIONS:
        raise UsageError("compare needs a division algorithm")
    algo = DIVISIONS[args.alg]
    baseline = BASELINE_FOR[algo]
    if args.baseline:
        named = BASELINES.get(args.baseline, "?")
        if named == "?" or (named is not None and named is not baseline) or (
                named is None and algo is Algorithm.LONG):
            raise UsageError(f"baseline {args.baseline} has no {args.alg} circuit")
    if not args.asymptotic:
        _need(args, "n")
    metric = canonical(args.metric)
    rows = []
    for v in _variants(args.alg):
        try:
            r = ratio_report(metric, (algo, v), ("baseline", baseline), args.n, args.m, asymptotic=args.asymptotic)
            rows.append(dict(variant=v, baseline=baseline.value, metric=metric, ratio=f"{r:.2f}"))
        except MetricUnavailable:
            rows.append(dict(variant=v, baseline=baseline.value, metric=metric, ratio="n/a"))
    _emit_rows(rows, args.format, out)
    return 0


VERBS = {"build": cmd_build, "simulate": cmd_simulate, "verify": cmd_verify,
         "report": cmd_report, "compare": cmd_compare}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdiv", description="Build, check and cost integer division circuits.")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        sp = sub.add_parser(verb)
        sp.add_argument("--alg", choices=ALGS, required=True)
        sp.add_argument("--variant")
        sp.add_argument("--k", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
        sp.set_defaults(format="table")
        if verb == "build":
            sp.add_argument("--lower", choices=[s.value for s in Strategy])
            sp.add_argument("-o", "--output")
        if verb == "simulate":
            for name in ("a", "b", "N", "D"):
                sp.add_argument(f"--{name}", type=int)
        if verb == "verify":
            sp.add_argument("--exact-width", action="store_true",
                            help="only divisors with their top bit set")
        if verb == "report":
            sp.add_argument("--metric")
            sp.add_argument("--strategy", choices=[s.value for s in Strategy],
                            help="lowering for T-level metrics (default: the one the formulas assume)")
        if verb == "compare":
            sp.add_argument("--baseline")
            sp.add_argument("--metric", default="t_count")
            sp.add_argument("--asymptotic", action="store_true")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return VERBS[args.verb](args, out)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"qdiv: error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
