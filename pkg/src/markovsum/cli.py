"""Command-line surface.

Subcommands: enumerate, sum, check-muc, mcshane, orbits.  Delimited output
(CSV by default, JSON with --format json) goes to stdout or --output; the
report paths for sum and mcshane can additionally render a figure with
--plot.  MARKOVSUM_PRECISION overrides the default working precision.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 a
uniqueness-conjecture counterexample was found.  The last one is distinct
and loud on purpose: it is the one outcome that must never be mistaken
for a failed run.
"""

from __future__ import annotations

import argparse
import os
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

import mpmath as mp

from . import __version__
from .enumeration import CheckpointError, MarkovStream
from .muc import check_muc, report_json
from .precision import PrecisionReal, log10_float
from .series import (
    InsufficientPrecisionError,
    default_precision,
    mcshane_profile,
    series_profile,
    target_constant,
)
from .slopes import canonical_slopes, dihedral_orbit, farey_markov, holonomy_trace
from . import reports

PRECISION_ENV = "MARKOVSUM_PRECISION"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_COUNTEREXAMPLE = 3


class UsageError(ValueError):
    """Semantically invalid configuration that argparse cannot catch."""


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    computation failures, so route usage problems to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with_usage(message))

    def exit_with_usage(self, message) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE


def parse_bound(text: str) -> int:
    """Accept plain integers plus 1e6 / 10^1000 / 10**1000 spellings.

    Bounds like 10^1000 are normal usage here, so scientific notation must
    parse exactly (Decimal, not float)."""
    t = text.strip().replace(" ", "")
    try:
        if "**" in t:
            base, _, expo = t.partition("**")
            v = int(base) ** int(expo)
        elif "^" in t:
            base, _, expo = t.partition("^")
            v = int(base) ** int(expo)
        elif "e" in t.lower():
            d = Decimal(t)
            if d != d.to_integral_value():
                raise ValueError
            v = int(d)
        else:
            v = int(t)
    except (ValueError, InvalidOperation, ArithmeticError):
        raise argparse.ArgumentTypeError(f"not an integer bound: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"bound must be >= 1, got {text!r}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _env_precision() -> int | None:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw == "":
        return None
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}")
    if v < 2:
        raise ValueError(f"{PRECISION_ENV} must be >= 2, got {v}")
    return v


def _resolve_precision(args_precisions: int | None, fallback: int) -> int:
    if args_precisions is not None:
        return args_precisions
    env = _env_precision()
    if env is not None:
        return env
    return fallback


def _open_output(path: str):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit(args, header, csv_rows, json_doc) -> None:
    fh, close = _open_output(args.output)
    try:
        if args.format == "csv":
            reports.write_csv(fh, header, csv_rows)
        else:
            fh.write(reports.dump_json(json_doc))
    finally:
        if close:
            fh.close()


def _geometric_samples(n: int, extra) -> list[int]:
    samples = set(extra or [])
    k = 1
    while k <= n:
        samples.add(k)
        k *= 2
    samples.add(n)
    return sorted(samples)


# -- subcommands ---------------------------------------------------------------


def cmd_enumerate(args) -> int:
    stream = MarkovStream()
    if args.checkpoint and Path(args.checkpoint).exists():
        stream = MarkovStream.restore(Path(args.checkpoint).read_bytes())

    emissions = []
    if args.limit_n is not None:
        target = stream.distinct + args.limit_n
        while stream.distinct < target:
            emissions.append(stream.next_markov())
        # drain equal maxima so a boundary duplicate is never hidden
        while emissions and stream.peek_next_value() == emissions[-1].value:
            emissions.append(stream.next_markov())
    else:
        while stream.peek_next_value() <= args.limit_value:
            emissions.append(stream.next_markov())

    if args.checkpoint:
        Path(args.checkpoint).write_bytes(stream.checkpoint())

    config = {
        "limit_n": args.limit_n,
        "limit_value": args.limit_value,
        "checkpoint": args.checkpoint,
    }
    doc = reports.json_envelope(
        "enumerate", config, None, {"rows": [reports.enumerate_json_row(e) for e in emissions]}
    )
    _emit(args, reports.ENUMERATE_HEADER, [reports.enumerate_csv_row(e) for e in emissions], doc)
    return EXIT_COUNTEREXAMPLE if any(e.duplicate for e in emissions) else EXIT_OK


def cmd_sum(args) -> int:
    n = args.limit_n
    prec = _resolve_precision(args.precision, default_precision(n))
    samples = _geometric_samples(n, args.sample)
    if samples[-1] > n:
        raise UsageError(f"sample point {samples[-1]} exceeds the term limit {n}")
    profile = series_profile(n, samples=samples, prec=prec)

    csv_rows = [reports.sum_csv_row(r, args.digits) for r in profile]
    config = {"limit_n": n, "samples": samples, "digits": args.digits}
    doc = reports.json_envelope(
        "sum",
        config,
        prec,
        {
            "target_constant": reports.sci_string(target_constant(prec), args.digits),
            "rows": [reports.sum_json_row(r, args.digits) for r in profile],
        },
    )
    _emit(args, reports.SUM_HEADER, csv_rows, doc)

    if args.plot:
        from .plots import plot_remainder_profile

        rows = [(r.n, log10_float(r.remainder), log10_float(r.zagier_tail)) for r in profile]
        plot_remainder_profile(rows, args.plot)
    return EXIT_OK


def cmd_check_muc(args) -> int:
    stream = MarkovStream()
    if args.checkpoint and Path(args.checkpoint).exists():
        stream = MarkovStream.restore(Path(args.checkpoint).read_bytes())
    report = check_muc(
        max_value=args.limit_value,
        count=args.limit_n,
        stream=stream,
        progress=not args.quiet,
    )
    if args.checkpoint:
        Path(args.checkpoint).write_bytes(stream.checkpoint())

    fh, close = _open_output(args.output)
    try:
        fh.write(report_json(report))
    finally:
        if close:
            fh.close()
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def cmd_mcshane(args) -> int:
    prec = _resolve_precision(args.precision, 50)
    sums = mcshane_profile(args.limit_n, prec)
    half = PrecisionReal.from_str("0.5", prec)
    gaps = [half - s for s in sums]
    csv_rows = [
        [str(k), reports.sci_string(s, args.digits), reports.sci_string(g, args.digits)]
        for k, (s, g) in enumerate(zip(sums, gaps), start=1)
    ]
    config = {"limit_n": args.limit_n, "digits": args.digits}
    doc = reports.json_envelope(
        "mcshane",
        config,
        prec,
        {
            "rows": [
                {
                    "box": k,
                    "partial_sum": reports.sci_string(s, args.digits),
                    "gap_to_half": reports.sci_string(g, args.digits),
                }
                for k, (s, g) in enumerate(zip(sums, gaps), start=1)
            ]
        },
    )
    _emit(args, reports.MCSHANE_HEADER, csv_rows, doc)

    if args.plot:
        from .plots import plot_mcshane_convergence

        plot_mcshane_convergence(
            [(k, log10_float(g)) for k, g in enumerate(gaps, start=1)], args.plot
        )
    return EXIT_OK


def cmd_orbits(args) -> int:
    rows = []
    json_rows = []
    for slope in canonical_slopes(args.limit_n):
        markov = farey_markov(slope)
        trace = holonomy_trace(slope)
        size = len(dihedral_orbit(slope))
        rows.append([str(slope), reports.int_cell(markov), reports.int_cell(trace), str(size)])
        json_rows.append(
            {"slope": str(slope), "markov": markov, "trace": trace, "orbit_size": size}
        )
    config = {"limit_n": args.limit_n}
    doc = reports.json_envelope("orbits", config, None, {"rows": json_rows})
    _emit(args, reports.ORBITS_HEADER, rows, doc)
    return EXIT_OK


# -- wiring --------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="markovsum",
        description="Markov numbers, Lagrange numbers, the gap series, and "
        "uniqueness-conjecture checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, fmt=True):
        p.add_argument("--output", default="-", help="output path, '-' for stdout")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("enumerate", help="emit Markov numbers in increasing order")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--limit-n", type=_nonnegative, help="number of distinct values to emit")
    group.add_argument("--limit-value", type=parse_bound, help="emit while value <= bound")
    p.add_argument("--checkpoint", help="state file: resumed if present, written after the run")
    add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sum", help="gap-series partial sums, remainders, and tail model")
    p.add_argument("--limit-n", type=_positive, required=True, help="terms to sum")
    p.add_argument("--precision", type=_positive, help="working digits (default: policy)")
    p.add_argument("--digits", type=_positive, help="printed significant digits")
    p.add_argument(
        "--sample",
        action="append",
        type=_positive,
        help="extra exact sample point (repeatable); geometric points are always included",
    )
    p.add_argument("--plot", help="also render the remainder/tail figure to this file")
    add_common(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("check-muc", help="verify uniqueness of triple maxima up to a bound")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--limit-n", type=_positive, help="distinct values to verify")
    group.add_argument("--limit-value", type=parse_bound, help="verify all values <= bound")
    p.add_argument("--checkpoint", help="state file: resumed if present, written after the run")
    p.add_argument("--quiet", action="store_true", help="suppress stderr progress lines")
    add_common(p, fmt=False)
    p.set_defaults(func=cmd_check_muc)

    p = sub.add_parser("mcshane", help="truncated length-series sums approaching 1/2")
    p.add_argument("--limit-n", type=_positive, required=True, help="slope box bound")
    p.add_argument("--precision", type=_positive, help="working digits (default: 50)")
    p.add_argument("--digits", type=_positive, help="printed significant digits")
    p.add_argument("--plot", help="also render the convergence figure to this file")
    add_common(p)
    p.set_defaults(func=cmd_mcshane)

    p = sub.add_parser("orbits", help="slope table: Markov number, trace, dihedral orbit size")
    p.add_argument("--limit-n", type=_positive, required=True, help="slope box bound")
    add_common(p)
    p.set_defaults(func=cmd_orbits)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"markovsum: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (
        InsufficientPrecisionError,
        CheckpointError,
        ValueError,
        OSError,
    ) as e:
        print(f"markovsum: {e}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
