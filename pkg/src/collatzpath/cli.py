"""Batch command-line front end.

Every analysis the library performs is reachable here, and everything is
emitted as CSV (or TSV) so downstream plotting is two columns away.  Exit
codes: 0 success, 1 verification mismatch, 2 usage or expression parse
error, 3 runtime failure (guard trips, checkpoint damage, I/O).
"""

from __future__ import annotations

import argparse
import os
import sys
from csv import QUOTE_MINIMAL, writer as csv_writer
from typing import TextIO

from .catalog import (
    CATALOG_SIZE,
    catalog_entries,
    catalog_entry,
    lucas_lehmer,
    mersenne_number,
)
from .checkpoint import checkpoint_read, checkpoint_write
from .engine import (
    DEFAULT_CYCLE_GUARD,
    PathResult,
    advance,
    initial_state,
    path_length,
    trace,
)
from .errors import CollatzPathError, OriginMismatch, ParseError, RangeError
from .expressions import NumberExpression, parse_expression
from .heuristics import fit_loglog, mersenne_heuristic
from .survey import (
    SetLabel,
    generate_set_A,
    generate_set_B,
    fixture_set_C,
    fixture_set_D,
    mersenne_set,
    ratio_stats,
    reference_pairs,
    scan_ratios,
)

DEFAULT_CHECKPOINT_INTERVAL = 10**7

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

# Above this exponent a recomputation stops being an interactive wait.
_SLOW_EXPONENT = 200_000


class _UsageError(Exception):
    """Flag combinations argparse cannot catch on its own."""


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _center_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return value


def _bool_cell(flag: bool) -> str:
    return "true" if flag else "false"


def _make_writer(args: argparse.Namespace, out: TextIO):
    delimiter = "\t" if args.format == "tsv" else ","
    return csv_writer(out, delimiter=delimiter, lineterminator="\n", quoting=QUOTE_MINIMAL)


def parse_rank_range(text: str) -> tuple[int, int]:
    """Parse 'A..B' into an inclusive catalog rank range."""
    first, sep, second = text.partition("..")
    if not sep or not first.isdigit() or not second.isdigit():
        raise _UsageError(f"--ranks expects A..B with decimal ranks, got {text!r}")
    low, high = int(first), int(second)
    if not (1 <= low <= high <= CATALOG_SIZE):
        raise _UsageError(
            f"ranks must satisfy 1 <= A <= B <= {CATALOG_SIZE}, got {text!r}"
        )
    return low, high


def _pathlen_d_worker(args: tuple[int, int]) -> int:
    n, guard = args
    return path_length(mersenne_number(n), cycle_guard=guard).d


def _map_jobs(jobs: int, work: list[tuple[int, int]]):
    """Yield worker results in input order, fanning out when jobs > 1."""
    if jobs > 1 and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(_pathlen_d_worker, work)
    else:
        for item in work:
            yield _pathlen_d_worker(item)


def _run_checkpointed(
    expr: NumberExpression, path: str, interval: int, guard: int
) -> PathResult:
    if os.path.exists(path):
        cp = checkpoint_read(path)
        if cp.origin != expr:
            raise OriginMismatch(
                f"checkpoint is for {cp.origin.source_text!r}, "
                f"refusing to resume {expr.source_text!r}"
            )
        state = cp.to_state()
    else:
        state = initial_state(expr.resolve(), origin=expr)
    while not state.halted:
        state = advance(state, interval, cycle_guard=guard)
        checkpoint_write(path, state)
    return PathResult(
        d=state.steps,
        odd_steps=state.odd_steps,
        even_steps=state.even_steps,
        peak_bit_length=state.peak_bit_length,
    )


def _cmd_pathlen(args: argparse.Namespace, out: TextIO) -> int:
    expr = parse_expression(args.expr)
    if args.checkpoint:
        result = _run_checkpointed(expr, args.checkpoint, args.checkpoint_interval, args.cycle_guard)
    else:
        result = path_length(expr.resolve(), cycle_guard=args.cycle_guard)
    exponent = expr.mersenne_exponent()
    header = ["expr", "n", "d", "odd_steps", "even_steps", "peak_bit_length"]
    row = [
        expr.source_text,
        "" if exponent is None else exponent,
        result.d,
        result.odd_steps,
        result.even_steps,
        result.peak_bit_length,
    ]
    if args.trace_limit is not None:
        entries = trace(expr.resolve(), args.trace_limit, cycle_guard=args.cycle_guard)
        header.append("trace")
        row.append(" ".join(str(v) for v in entries))
    w = _make_writer(args, out)
    w.writerow(header)
    w.writerow(row)
    return EXIT_OK


def _cmd_catalog(args: argparse.Namespace, out: TextIO) -> int:
    entries = catalog_entries()
    if args.csv:
        w = _make_writer(args, out)
        w.writerow(["rank", "exponent", "reference_d", "reference_ratio"])
        for e in entries:
            w.writerow([e.rank, e.exponent, e.reference_d, e.reference_ratio])
        return EXIT_OK
    print(f"{'rank':>4}  {'exponent':>10}  {'reference_d':>12}  {'reference_ratio':>15}", file=out)
    for e in entries:
        print(f"{e.rank:>4}  {e.exponent:>10}  {e.reference_d:>12}  {e.reference_ratio:>15}", file=out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    low, high = parse_rank_range(args.ranks)
    rows = [catalog_entry(k) for k in range(low, high + 1)]
    work = [(e.exponent, args.cycle_guard) for e in rows]
    w = _make_writer(args, out)
    w.writerow(["rank", "exponent", "reference_d", "computed_d", "match"])
    mismatched = False
    for entry, computed in zip(rows, _map_jobs(args.jobs, work)):
        ok = computed == entry.reference_d
        mismatched = mismatched or not ok
        w.writerow([entry.rank, entry.exponent, entry.reference_d, computed, _bool_cell(ok)])
    return EXIT_MISMATCH if mismatched else EXIT_OK


def _cmd_scan(args: argparse.Namespace, out: TextIO) -> int:
    records = scan_ratios(
        args.center,
        args.each_side,
        args.stride,
        args.primes_only,
        jobs=args.jobs,
        cycle_guard=args.cycle_guard,
    )
    w = _make_writer(args, out)
    w.writerow(["n", "is_prime", "d", "ratio"])
    for r in records:
        w.writerow([r.exponent, _bool_cell(r.is_prime_index), r.d, r.ratio])
    return EXIT_OK


def _stats_index_set(args: argparse.Namespace):
    label = SetLabel(args.set_label)
    has_range = args.from_rank is not None or args.to_rank is not None
    if label in (SetLabel.C, SetLabel.D):
        if has_range:
            raise _UsageError(f"set {label.value} is a fixture; it takes no rank range")
        return label, (fixture_set_C() if label is SetLabel.C else fixture_set_D())
    defaults = {SetLabel.MERSENNE: (26, 38), SetLabel.A: (26, 38), SetLabel.B: (25, 38)}
    low, high = defaults[label]
    if args.from_rank is not None:
        low = args.from_rank
    if args.to_rank is not None:
        high = args.to_rank
    try:
        if label is SetLabel.MERSENNE:
            return label, mersenne_set(low, high)
        if label is SetLabel.A:
            return label, generate_set_A(mersenne_set(low, high))
        return label, generate_set_B(low, high)
    except RangeError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    label, index_set = _stats_index_set(args)
    pairs = None
    if not args.recompute:
        if label is SetLabel.MERSENNE:
            known = {e.exponent: e.reference_d for e in catalog_entries()}
        else:
            known = dict(reference_pairs(label))
        if all(n in known for n in index_set.indices):
            pairs = [(n, known[n]) for n in index_set.indices]
    if pairs is None:
        top = max(index_set.indices)
        if top > _SLOW_EXPONENT:
            print(
                f"warning: recomputing D up to n={top} runs for hours to days; "
                f"reference values cover the default ranges",
                file=sys.stderr,
            )
        work = [(n, args.cycle_guard) for n in index_set.indices]
        pairs = list(zip(index_set.indices, _map_jobs(args.jobs, work)))
    stats = ratio_stats(pairs)
    w = _make_writer(args, out)
    w.writerow(["label", "count", "mean", "sample_variance"])
    w.writerow([label.value, stats.count, stats.mean, stats.sample_variance])
    return EXIT_OK


def _cmd_fit(args: argparse.Namespace, out: TextIO) -> int:
    result = fit_loglog([(e.rank, e.exponent) for e in catalog_entries()])
    w = _make_writer(args, out)
    w.writerow(["intercept", "slope", "rms_residual"])
    w.writerow([result.intercept, result.slope, result.rms_residual])
    return EXIT_OK


def _cmd_heuristic(args: argparse.Namespace, out: TextIO) -> int:
    estimate = mersenne_heuristic(args.n)
    w = _make_writer(args, out)
    w.writerow(["n", "estimate"])
    w.writerow([args.n, estimate])
    return EXIT_OK


def _cmd_lucas_lehmer(args: argparse.Namespace, out: TextIO) -> int:
    verdict = _bool_cell(lucas_lehmer(args.p))
    w = _make_writer(args, out)
    w.writerow(["p", "mersenne_prime"])
    w.writerow([args.p, verdict])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "tsv"), default="csv",
        help="output delimiter family (default csv)",
    )
    common.add_argument(
        "--jobs", type=_positive_int, default=os.cpu_count() or 1, metavar="J",
        help="worker processes for batch computations (default: available parallelism)",
    )
    common.add_argument(
        "--cycle-guard", type=_positive_int, default=DEFAULT_CYCLE_GUARD, metavar="STEPS",
        help="step ceiling before an iteration fails loudly (default 10^12)",
    )

    parser = argparse.ArgumentParser(
        prog="collatzpath",
        description="Collatz path lengths, the Mersenne catalog, and survey statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pathlen", parents=[common], help="compute D(x) for one expression")
    p.add_argument("expr", help="e.g. 27, 2^20, M9689, Mp31")
    p.add_argument("--checkpoint", metavar="FILE", help="persist progress and resume from FILE")
    p.add_argument(
        "--checkpoint-interval", type=_positive_int, default=DEFAULT_CHECKPOINT_INTERVAL,
        metavar="N", help="steps between checkpoint writes (default 10^7)",
    )
    p.add_argument(
        "--trace-limit", type=_nonnegative_int, metavar="K",
        help="also emit the first K visited values",
    )
    p.set_defaults(handler=_cmd_pathlen)

    p = sub.add_parser("catalog", parents=[common], help="dump the 47-row reference table")
    p.add_argument("--csv", action="store_true", help="machine format instead of aligned text")
    p.set_defaults(handler=_cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="recompute catalog rows and compare")
    p.add_argument("--ranks", required=True, metavar="A..B", help="inclusive rank range, e.g. 1..17")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="D and D/n over a window of exponents")
    p.add_argument("--center", type=_center_int, required=True, metavar="N")
    p.add_argument("--each-side", type=_nonnegative_int, default=25, metavar="C")
    p.add_argument("--stride", type=_positive_int, default=5, metavar="S")
    p.add_argument("--primes-only", action="store_true")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("stats", parents=[common], help="ratio statistics for a comparison set")
    p.add_argument("--set", required=True, choices=[label.value for label in SetLabel],
                   dest="set_label")
    p.add_argument("--from-rank", type=_positive_int, metavar="K")
    p.add_argument("--to-rank", type=_positive_int, metavar="L")
    p.add_argument(
        "--recompute", action="store_true",
        help="measure D with the engine instead of using reference values",
    )
    p.set_defaults(handler=_cmd_stats)

    p = sub.add_parser("fit", parents=[common], help="log-log least-squares line of the catalog")
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("heuristic", parents=[common], help="closed-form estimate of D(2^n - 1)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(handler=_cmd_heuristic)

    p = sub.add_parser("lucas-lehmer", parents=[common], help="primality of 2^p - 1")
    p.add_argument("p", type=int)
    p.set_defaults(handler=_cmd_lucas_lehmer)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.handler(args, sys.stdout)
    except ParseError as exc:
        print(f"collatzpath: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _UsageError as exc:
        print(f"collatzpath: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CollatzPathError as exc:
        print(f"collatzpath: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"collatzpath: i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main_entry() -> None:
    sys.exit(main())
