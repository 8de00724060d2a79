"""
Command-line interface for the character-sum laboratory.

Subcommands: sweep, hist, moments, tail, constants, shapes, verify, aggregate.
Exit codes: 0 success, 1 failure (budget exceeded, failed verification,
corrupt input), 2 usage error.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from charmax import __version__, config
from charmax.analytic import (
    SHAPES,
    MainTermShape,
    a_adaptive,
    a_gauss_legendre,
    constant_A,
    corollary_shape,
    divisor_square_series,
    halfpoint_limit_constant,
    interval_moment_shape,
    moment_lower_shape,
    moment_upper_shape,
    proposition_bound,
    tail_lower_shape,
    tail_upper_shape,
    theorem2b_main,
    two_adic_factor,
)
from charmax.charsums import ENGINES, SweepBudget, sweep
from charmax.errors import (
    BudgetExceededError,
    CharmaxError,
    ConfigError,
    DomainError,
)
from charmax.experiments.histogram import (
    NORMALIZATIONS,
    HistogramSpec,
    compute_histogram,
    write_histogram_csv,
    write_histogram_svg,
)
from charmax.experiments.reports import ReportWriter
from charmax.experiments.tablefile import ChunkCheckpoint, load_table, save_table, table_summary
from charmax.experiments.verify import SUITES, run_suite
from charmax.moments import (
    STATISTICS,
    aggregate_GN,
    empirical_moment,
    gn_breakdown,
    markov_tail_bound,
    tail_F,
    tail_g,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(CharmaxError):
    """Bad flag combination detected after argument parsing."""


def parse_grid(text: str) -> List[float]:
    """Parse "a..b[:step]" (inclusive, default step 1) or a comma list.

    Examples:
        "5..15" -> 5, 6, ..., 15
        "1..2:0.25" -> 1, 1.25, 1.5, 1.75, 2
        "1,1.5,2" -> 1, 1.5, 2
    """
    text = text.strip()
    try:
        if ".." in text:
            span, _, step_text = text.partition(":")
            lo_text, hi_text = span.split("..", 1)
            lo, hi = float(lo_text), float(hi_text)
            step = float(step_text) if step_text else 1.0
            if step <= 0 or hi < lo:
                raise UsageError(f"Empty or invalid range {text!r}")
            count = math.floor((hi - lo) / step + 1e-9) + 1
            return [lo + i * step for i in range(count)]
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise UsageError(f"Cannot parse grid {text!r}") from e


def parse_int_list(text: str) -> List[int]:
    values = parse_grid(text)
    if any(v != int(v) for v in values):
        raise UsageError(f"Expected integers, got {text!r}")
    return [int(v) for v in values]


def _rule(title: str) -> None:
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)


# ============================================================================
# Commands
# ============================================================================


def cmd_sweep(args: argparse.Namespace) -> int:
    q = args.modulus
    out = Path(args.out or f"q{q}-{args.engine}.tbl")
    checkpoint = ChunkCheckpoint(out, q, args.engine)
    preloaded = checkpoint.load() if args.resume else None
    budget = SweepBudget(
        max_rows=args.budget_rows if args.budget_rows is not None else config.SWEEP_MAX_ROWS,
        max_seconds=(
            args.budget_seconds if args.budget_seconds is not None else config.SWEEP_MAX_SECONDS
        ),
    )

    try:
        table = sweep(
            q,
            engine=args.engine,
            workers=args.threads,
            budget=budget,
            progress=not args.quiet,
            preloaded=preloaded,
            on_chunk=checkpoint.save_chunk,
            summary=not args.quiet,
        )
    except BudgetExceededError as e:
        partial = e.partial
        partial.metadata["budget"] = str(e)
        save_table(partial, out)
        print(f"Budget exceeded: {e}")
        print(f"Partial table ({len(partial)} rows, incomplete) written to {out}")
        print(f"Re-run with the same --out to resume from {checkpoint.directory}")
        return EXIT_FAILURE

    save_table(table, out)
    checkpoint.clear()
    summary = table_summary(table, out)
    if not args.quiet:
        _rule(f"Sweep q={q} ({args.engine})")
        for key in ("rows", "odd_rows", "primitive_rows", "certified", "complete"):
            print(f"{key}: {summary[key]}")
        print(f"Table: {out}")
    return EXIT_OK


def cmd_hist(args: argparse.Namespace) -> int:
    table = load_table(args.table)
    lo, hi = args.range if args.range else (None, None)
    spec = HistogramSpec(
        bins=args.bins,
        lo=lo,
        hi=hi,
        split_parity=args.split_parity,
        normalization=args.normalization,
    )
    hist = compute_histogram(table, spec)
    prefix = Path(args.out) if args.out else Path(args.table).with_suffix("")
    prefix.parent.mkdir(parents=True, exist_ok=True)

    written = []
    if args.format in ("csv", "both"):
        written.append(write_histogram_csv(hist, prefix.with_name(prefix.name + "-hist.csv")))
    if args.format in ("svg", "both"):
        written.append(write_histogram_svg(hist, prefix.with_name(prefix.name + "-hist.svg")))

    if not args.quiet:
        _rule(f"Histogram q={table.q}")
        even, odd = int(hist.count_even.sum()), int(hist.count_odd.sum())
        print(f"Rows: {len(table)} (even {even}, odd {odd})")
        print(f"Outside [{spec.lo}, {spec.hi}]: {hist.outside}")
        for path in written:
            print(f"Wrote {path}")
    return EXIT_OK


def cmd_moments(args: argparse.Namespace) -> int:
    ks = parse_int_list(args.k)
    reports = []
    for path in args.table:
        table = load_table(path)
        for k in ks:
            reports.append(empirical_moment(table, k, args.statistic))

    writer = ReportWriter(args.out_dir)
    writer.log_moments(reports)
    writer.log_summary(
        {"command": "moments", "tables": args.table, "k": ks, "statistic": args.statistic}
    )

    if not args.quiet:
        _rule(f"Moments of {args.statistic}")
        for r in reports:
            line = f"q={r.q} k={r.k}: normalized={r.normalized:.10g} raw={r.raw:.6g}"
            if r.comparison is not None:
                line += f" limit={r.comparison:.10g}"
            print(line)
        print(f"Reports: {writer.get_output_directory()}")
    return EXIT_OK


def cmd_tail(args: argparse.Namespace) -> int:
    table = load_table(args.table)
    alphas = parse_grid(args.alpha)
    report = tail_F(table, alphas) if args.statistic == "F" else tail_g(table, alphas)

    writer = ReportWriter(args.out_dir)
    writer.log_tail(report, name=f"tail_{args.statistic}")
    markov = []
    if args.markov_k:
        for alpha in alphas:
            if alpha > 0:
                observed, bound = markov_tail_bound(table, alpha, args.markov_k)
                markov.append(
                    {"alpha": alpha, "k": args.markov_k, "observed": observed, "bound": bound}
                )
        writer.write_json("markov", markov)
    writer.log_summary({"command": "tail", "table": args.table, "statistic": args.statistic})

    if not args.quiet:
        fractions = report.F_q if report.F_q is not None else report.g_q
        _rule(f"Tail {args.statistic}_q, q={table.q}")
        for alpha, count, fraction in zip(report.alphas, report.counts, fractions):
            print(f"alpha={alpha:g}: {int(count)}/{report.total} = {fraction:.8f}")
        for row in markov:
            print(
                f"Markov alpha={row['alpha']:g}: "
                f"observed {row['observed']:.3g} <= bound {row['bound']:.3g}"
            )
        print(f"Reports: {writer.get_output_directory()}")
    return EXIT_OK


def cmd_constants(args: argparse.Namespace) -> int:
    writer = ReportWriter(args.out_dir)
    record: Dict[str, Any]
    if args.what == "A":
        result = constant_A(args.tol)
        record = {
            "A": result,
            "adaptive": a_adaptive(args.tol),
            "gauss_legendre": a_gauss_legendre(),
        }
        lines = [f"A = {result.value:.15f} (error <= {result.est_error:.3g})"]
    elif args.what == "halfpoint":
        ks = parse_int_list(args.k)
        record = {str(k): halfpoint_limit_constant(k, args.tol) for k in ks}
        lines = [f"k={k}: {v:.15g}" for k, v in record.items()]
    elif args.what == "series":
        ks = parse_int_list(args.k)
        record = {str(k): divisor_square_series(k, args.sigma, args.tol) for k in ks}
        lines = [
            f"k={k} sigma={args.sigma}: {v.value:.15g} "
            f"(tail <= {v.tail_bound:.3g}, P={v.prime_cutoff})"
            for k, v in record.items()
        ]
    else:
        ks = parse_int_list(args.k)
        record = {str(k): two_adic_factor(k) for k in ks}
        lines = [f"k={k}: {v:.15g}" for k, v in record.items()]

    writer.write_json(f"constants_{args.what}", record)
    writer.log_summary({"command": "constants", "what": args.what, "tol": args.tol})
    if not args.quiet:
        _rule(f"Constants: {args.what}")
        for line in lines:
            print(line)
    return EXIT_OK


def _shape_builders(args: argparse.Namespace) -> Dict[str, Callable[[], List[MainTermShape]]]:
    def over_k(fn: Callable[[int], MainTermShape]) -> Callable[[], List[MainTermShape]]:
        return lambda: [fn(k) for k in parse_int_list(args.k)]

    def over_alpha(fn: Callable[[float], MainTermShape]) -> Callable[[], List[MainTermShape]]:
        return lambda: [fn(a) for a in parse_grid(args.alpha)]

    return {
        "C_k": over_k(moment_upper_shape),
        "c_k": over_k(moment_lower_shape),
        "theorem2b": over_k(lambda k: theorem2b_main(k, args.q)),
        "corollary2b": over_alpha(corollary_shape),
        "theorem3_upper": over_alpha(tail_upper_shape),
        "theorem3_lower": over_alpha(lambda a: tail_lower_shape(a, args.B)),
        "interval_moment": over_k(lambda k: interval_moment_shape(k, args.q, args.width)),
        "proposition": over_k(lambda k: proposition_bound(k, args.sigma)),
    }


def cmd_shapes(args: argparse.Namespace) -> int:
    shapes = _shape_builders(args)[args.which]()
    writer = ReportWriter(args.out_dir)
    writer.log_shapes(shapes, name=f"shapes_{args.which}")
    writer.log_summary({"command": "shapes", "which": args.which})
    if not args.quiet:
        _rule(f"Shape {args.which}")
        for shape in shapes:
            params = " ".join(f"{k}={v:g}" for k, v in sorted(shape.params.items()))
            print(f"{params}: log={shape.log_value:.10g} value={shape.value:.6g}")
        if shapes:
            print(f"Caveat: {shapes[0].caveat}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = [
        run_suite(name, modulus=args.modulus, k=args.k, cases=args.cases) for name in names
    ]

    writer = ReportWriter(args.out_dir)
    writer.write_json(
        "verify",
        [
            {
                "suite": r.suite,
                "passed": r.passed,
                "max_residual": r.max_residual,
                "params": r.params,
                "checks": r.checks,
            }
            for r in results
        ],
    )
    writer.log_summary(
        {"command": "verify", "suites": names, "passed": all(r.passed for r in results)}
    )

    if not args.quiet:
        _rule("Verification")
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{r.suite:<14} {status}  checks={len(r.checks):<5} "
                f"max residual={r.max_residual:.3g}"
            )
            for check in r.failures()[:5]:
                print(
                    f"    failed: {check.name} "
                    f"residual {check.residual:.3g} > {check.tolerance:.3g}"
                )
        print("=" * 60)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def cmd_aggregate(args: argparse.Namespace) -> int:
    tables = [load_table(path) for path in args.table]
    value = aggregate_GN(tables, args.alpha, prime_only=args.prime_only)
    pooled = [t for t in tables if t.modulus.is_prime] if args.prime_only else tables
    breakdown = gn_breakdown(pooled, args.alpha)

    writer = ReportWriter(args.out_dir)
    writer.write_json(
        "aggregate",
        {
            "alpha": args.alpha,
            "prime_only": args.prime_only,
            "N": max(breakdown),
            "G_N": value,
            "breakdown": {
                str(q): {"count": c, "total": t} for q, (c, t) in sorted(breakdown.items())
            },
        },
    )
    writer.write_csv(
        "aggregate",
        ["q", "count", "total", "fraction"],
        [[q, c, t, c / t] for q, (c, t) in sorted(breakdown.items())],
    )
    writer.log_summary({"command": "aggregate", "tables": args.table})

    if not args.quiet:
        _rule(f"G_N(alpha={args.alpha:g}), N={max(breakdown)}")
        print(f"Moduli pooled: {len(breakdown)}{' (primes only)' if args.prime_only else ''}")
        print(f"G_N = {value:.8f}")
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charmax", description="Maxima of Dirichlet character sums: sweeps, moments and tails"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML file overriding constants in charmax.config")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="No progress bar or summaries")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="Compute M, N and S(q/2) for every character mod q")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="exact")
    p.add_argument(
        "--threads", type=int, default=None, help="Worker processes (default: CHARMAX_THREADS)"
    )
    p.add_argument("--out", help="Table path (default: q<Q>-<engine>.tbl)")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--budget-rows", type=int, default=None)
    p.add_argument("--no-resume", dest="resume", action="store_false", help="Ignore checkpoints")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hist", help="Histogram of M/sqrt(q)")
    p.add_argument("--table", required=True)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--split-parity", action="store_true")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="density")
    p.add_argument("--format", choices=("csv", "svg", "both"), default="both")
    p.add_argument("--out", help="Output prefix (default: table path without suffix)")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("moments", help="Empirical 2k-th moments")
    p.add_argument("--table", required=True, nargs="+")
    p.add_argument("--k", default="1,2")
    p.add_argument("--statistic", choices=STATISTICS, default="M")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("tail", help="Tail fractions F_q or g_q")
    p.add_argument("--table", required=True)
    p.add_argument("--alpha", required=True, help='Grid "a..b[:step]" or "a,b,c"')
    p.add_argument("--statistic", choices=("F", "g"), default="F")
    p.add_argument("--markov-k", type=int, default=None, help="Also report the Markov bound")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("constants", help="A, half-point limits, divisor series")
    p.add_argument("--what", choices=("A", "halfpoint", "series", "two_adic"), default="A")
    p.add_argument("--k", default="1")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("shapes", help="Main-term shapes")
    p.add_argument("--which", choices=SHAPES, required=True)
    p.add_argument("--alpha", default="3..10")
    p.add_argument("--k", default="3..10")
    p.add_argument("--q", type=int, default=100003)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--width", type=float, default=0.5)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_shapes)

    p = sub.add_parser("verify", help="Run verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument(
        "--cases",
        type=int,
        default=None,
        help="Random cases for the dyadic suite (default: VERIFY_DYADIC_CASES = 1000)",
    )
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("aggregate", help="Pooled G_N over many tables")
    p.add_argument("--table", required=True, nargs="+")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--prime-only", action="store_true")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_aggregate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        if args.config:
            config.load_overrides(args.config)
        if getattr(args, "threads", 0) is None:
            args.threads = config.default_threads()
        return args.func(args)
    except (UsageError, DomainError, ConfigError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CharmaxError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\nInterrupted; finished chunks are checkpointed.", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
