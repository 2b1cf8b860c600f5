"""Command-line interface.

Exit codes: 0 when everything passes, 1 when a verification or cross-check
fails, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import re
import sys
import time
from typing import Optional, Sequence

from . import series
from .identities import closed_form_convolution, general_form, self_convolution, terms_for
from .oeis import BFileError, EmptyOverlapError, cross_check, load_bfile
from .sequences import narayana_spec, term_at, term_iter, terms
from .verify import CHECK_GROUPS, CampaignConfig, run_campaign

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ITER_CUTOFF = 10**7
FORMATS = ("table", "csv", "json-tree")
SERIES_OBJECTS = ("gf", "A", "Bclosed", "Bdef", "Cclosed", "Cdef", "diff")

_POW_RE = re.compile(r"^\s*([0-9_]+)\s*(?:\^|\*\*)\s*([0-9_]+)\s*$")


def exact_int(text: str) -> int:
    """Integer argument: digits with optional underscores, or an exact power ``a^b`` / ``a**b``."""
    m = _POW_RE.match(text)
    try:
        if m:
            return int(m.group(1)) ** int(m.group(2))
        return int(text)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"not an exact integer: {text!r}")


def _nonneg(text: str) -> int:
    v = exact_int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _k_arg(text: str) -> int:
    v = exact_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"k must be >= 2: {text!r}")
    return v


def _modulus(text: str) -> int:
    v = exact_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"modulus must be >= 2: {text!r}")
    return v


class UsageError(Exception):
    pass


def _emit_values(name: str, values: Sequence[int], start: int, fmt: str, meta: dict, out) -> None:
    if fmt == "table":
        print(" ".join(str(v) for v in values), file=out)
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", name])
        for i, v in enumerate(values, start=start):
            w.writerow([i, v])
    else:
        print(json.dumps({**meta, "start_index": start, "values": list(values)}), file=out)


def cmd_seq(args, out) -> int:
    spec = narayana_spec(args.k)
    if args.at is not None:
        value = term_at(spec, args.at, args.mod) if args.fast else term_iter(spec, args.at, args.mod)
        _emit_values("value", [value], args.at, args.format, {"k": args.k, "modulus": args.mod}, out)
        return EXIT_OK
    if args.n is None:
        raise UsageError("seq needs -n N_MAX or --at N")
    tv = terms(spec, args.n, args.mod)
    _emit_values("value", tv.values, 0, args.format, {"k": args.k, "modulus": args.mod}, out)
    return EXIT_OK


def cmd_conv(args, out) -> int:
    spec = narayana_spec(args.k)
    if args.closed_form:
        form = general_form(args.k)
        tv = terms_for(form, args.n)
        values = [closed_form_convolution(form, tv, n) for n in range(args.n + 1)]
    else:
        values = [c.value for c in self_convolution(spec, args.n)]
    meta = {"k": args.k, "method": "closed-form" if args.closed_form else "oracle"}
    _emit_values("convolution", values, 0, args.format, meta, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    forms = None
    if args.forms:
        forms = tuple(f.strip() for f in args.forms.split(",") if f.strip())
    order = args.series_order if args.series_order is not None else series.default_order()
    try:
        config = CampaignConfig(
            k_min=args.k_min,
            k_max=args.k_max,
            n_max=args.n_max,
            series_order=order,
            lemma_m_max=args.lemma_m_max,
            forms=forms,
            modulus=args.mod,
            mutate=args.mutate,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_campaign(config, jobs=args.jobs)
    if args.format == "table":
        print(report.to_text(), file=out)
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        print(report.to_json(), file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _series_object(k: int, order: int, name: str) -> series.LaurentSeries:
    if name == "gf":
        return series.narayana_gf(k, order)
    if name == "A":
        return series.A_gf(k, order)
    if name == "Bclosed":
        return series.B_gf_closed(k, order)
    if name == "Bdef":
        return series.B_gf_def(k, order)
    if name == "Cclosed":
        return series.C_gf_closed(k, order)
    if name == "Cdef":
        return series.C_gf_def(k, order)
    return series.B_gf_closed(k, order) - series.C_gf_closed(k, order) - series.A_gf(k, order)


def cmd_series(args, out) -> int:
    order = args.order if args.order is not None else series.default_order()
    s = _series_object(args.k, order, args.object)
    print(series.format_series(s, show_order=not args.no_big_o), file=out)
    if args.object == "diff" and not s.is_zero():
        return EXIT_FAIL
    return EXIT_OK


def _digest(value: int) -> str:
    return hashlib.sha256(str(value).encode()).hexdigest()[:16]


def cmd_bench(args, out) -> int:
    spec = narayana_spec(args.k)
    strategies = [s.strip() for s in args.strategy.split(",") if s.strip()]
    unknown = [s for s in strategies if s not in ("iter", "polyexp")]
    if unknown or not strategies:
        raise UsageError(f"unknown strategy: {', '.join(unknown) or '(none)'}")
    runners = {
        "iter": lambda: term_iter(spec, args.at, args.mod),
        "polyexp": lambda: term_at(spec, args.at, args.mod),
    }
    rows, results = [], {}
    for name in strategies:
        if name == "iter" and args.at > ITER_CUTOFF:
            rows.append([name, args.k, args.at, args.mod or "", args.repeat, "", "", "", f"skipped: n > {ITER_CUTOFF}"])
            continue
        best = None
        for _ in range(args.repeat):
            t0 = time.perf_counter_ns()
            value = runners[name]()
            dt = time.perf_counter_ns() - t0
            best = dt if best is None else min(best, dt)
        results[name] = value
        rows.append([name, args.k, args.at, args.mod or "", args.repeat, best, len(str(abs(value))), _digest(value), "ok"])
    if len(set(results.values())) > 1:
        detail = ", ".join(f"{k}={_digest(v)}" for k, v in results.items())
        print(f"strategies disagree: {detail}", file=sys.stderr)
        return EXIT_FAIL
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["strategy", "k", "n", "modulus", "repeat", "nanoseconds", "digits", "digest", "status"])
    w.writerows(rows)
    return EXIT_OK


def cmd_oeis(args, out) -> int:
    kind, k_text = args.target
    try:
        k = _k_arg(k_text)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    if kind not in ("seq", "conv"):
        raise UsageError(f"--target kind must be 'seq' or 'conv', got {kind!r}")
    try:
        bfile = load_bfile(args.fixture)
    except (OSError, BFileError) as exc:
        raise UsageError(f"cannot read fixture: {exc}") from None
    top = max(bfile.indices, default=0) + max(args.offset, 0)
    spec = narayana_spec(k)
    computed = terms(spec, top) if kind == "seq" else self_convolution(spec, top)
    try:
        rec = cross_check(bfile, computed, args.offset)
    except EmptyOverlapError as exc:
        raise UsageError(str(exc)) from None
    print(rec.to_line(), file=out)
    if not rec.passed:
        first = rec.counterexample["inputs"]["oeis_index"]
        print(f"first differing index: {first}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="narayana", description="k-step Narayana sequences and their self-convolution identities")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="print k-step Narayana terms")
    s.add_argument("-k", type=_k_arg, required=True)
    s.add_argument("-n", type=_nonneg, help="print terms 0..N")
    s.add_argument("--at", type=_nonneg, help="print the single term at this index")
    s.add_argument("--fast", action="store_true", help="use polynomial exponentiation for --at")
    s.add_argument("--mod", type=_modulus)
    s.add_argument("--format", choices=FORMATS, default="table")
    s.set_defaults(func=cmd_seq)

    c = sub.add_parser("conv", help="print self-convolution values")
    c.add_argument("-k", type=_k_arg, required=True)
    c.add_argument("-n", type=_nonneg, required=True)
    c.add_argument("--closed-form", action="store_true")
    c.add_argument("--format", choices=FORMATS, default="table")
    c.set_defaults(func=cmd_conv)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--k-min", type=_k_arg, default=2)
    v.add_argument("--k-max", type=_k_arg, default=8)
    v.add_argument("--n-max", type=_nonneg, default=200)
    v.add_argument("--series-order", type=_nonneg, default=None)
    v.add_argument("--lemma-m-max", type=_nonneg, default=64)
    v.add_argument("--forms", help=f"comma-separated subset of {', '.join(CHECK_GROUPS)} or catalog identity names")
    v.add_argument("--mod", type=_modulus)
    v.add_argument("--format", choices=FORMATS, default="table")
    v.add_argument("--jobs", type=_nonneg, default=None, help="worker processes (default: all cores)")
    v.add_argument("--mutate", action="store_true", help="self-test: corrupt the general identity so it must fail")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("series", help="print a generating-function series")
    r.add_argument("-k", type=_k_arg, required=True)
    r.add_argument("--order", type=_nonneg, default=None)
    r.add_argument("--object", choices=SERIES_OBJECTS, default="gf")
    r.add_argument("--no-big-o", action="store_true", help="omit the trailing O(x^N) term")
    r.set_defaults(func=cmd_series)

    b = sub.add_parser("bench", help="time term evaluation strategies")
    b.add_argument("-k", type=_k_arg, required=True)
    b.add_argument("--at", type=_nonneg, required=True)
    b.add_argument("--strategy", default="iter,polyexp")
    b.add_argument("--mod", type=_modulus)
    b.add_argument("--repeat", type=exact_int, default=1)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oeis", help="cross-check a b-file fixture")
    o.add_argument("--fixture", required=True)
    o.add_argument("--target", nargs=2, metavar=("KIND", "K"), required=True, help="'seq K' or 'conv K'")
    o.add_argument("--offset", type=exact_int, default=0)
    o.set_defaults(func=cmd_oeis)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    # exact terms routinely exceed the default int-to-str digit limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "repeat", 1) < 1:
        print("narayana: error: --repeat must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"narayana {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
