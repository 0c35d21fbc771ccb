"""Command line front end: build, count, invert, stats and bench."""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction

from . import io as index_io
from .blocked import DEFAULT_BLOCK_SIZE
from .build import convert, table_from_bwt
from .corpora import mutated_copies, random_patterns, random_text
from .query import count, invert, profile_scans
from .rlbwt import bwt_from_sa, prepare_text, read_fasta, runs_from_bwt, suffix_array
from .splitting import SplitConfig
from .table import PredecessorLF


class CliError(Exception):
    pass


def _positive_int(value):
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return v


def _factor(value):
    try:
        f = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid split factor {value!r}") from None
    if f <= 0:
        raise argparse.ArgumentTypeError("split factor must be positive")
    return f


def _balance_d(value):
    d = int(value)
    if d < 2:
        raise argparse.ArgumentTypeError("--balance needs d >= 2")
    return d


def _add_layout_flags(p):
    split = p.add_mutually_exclusive_group()
    split.add_argument("--split-factor", type=_factor, metavar="F",
                       help="cut runs longer than ceil(F * n / r)")
    split.add_argument("--balance", type=_balance_d, metavar="D",
                       help="insert run heads until every LF scan covers fewer than 2D rows")
    p.add_argument("--backend", choices=("blocked", "move"), default="blocked",
                   help="blocked (compressed, default) or move (uncompressed table)")
    p.add_argument("--dest-encoding", choices=("bv", "dac", "interp"), default="bv")
    p.add_argument("--block-size", type=_positive_int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--dac-rate", type=_positive_int, default=5)
    p.add_argument("--interp-rate", type=_positive_int, default=16)


def _split_config(args) -> SplitConfig:
    if args.split_factor is not None:
        return SplitConfig.max_length(args.split_factor)
    if args.balance is not None:
        return SplitConfig.balanced(args.balance)
    return SplitConfig.none()


def _read_input(path, fasta: bool) -> bytes:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return read_fasta(data) if fasta else data


def _read_patterns(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return lines


def _load(path):
    try:
        return index_io.load(path)
    except index_io.IndexFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _text_and_bwt(data: bytes):
    if not data:
        raise CliError("input is empty")
    try:
        text = prepare_text(data)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return text, bwt_from_sa(text, suffix_array(text))


def cmd_build(args, out=None):
    out = out or sys.stdout
    if args.interp_rate < 2:
        raise CliError("--interp-rate must be >= 2")
    text, bwt = _text_and_bwt(_read_input(args.input, args.fasta))
    r = runs_from_bwt(bwt).r
    table = table_from_bwt(bwt, _split_config(args), terminator=text[-1])
    try:
        index = convert(table, args.backend, args.block_size, args.dest_encoding,
                        args.dac_rate, args.interp_rate)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    written = index_io.save(index, args.output)
    n = len(text)
    print(f"n={n}", file=out)
    print(f"r={r}", file=out)
    print(f"n/r={n / r:.4f}", file=out)
    print(f"rows={table.r}", file=out)
    print(f"bytes={written}", file=out)


def cmd_count(args, out=None):
    out = out or sys.stdout
    index = _load(args.index)
    for pattern in _read_patterns(args.patterns):
        print(count(index, pattern) if pattern else 0, file=out)


def cmd_invert(args, out=None):
    text = invert(_load(args.index))
    if not args.keep_terminator:
        text = text[:-1]
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(text)
    else:
        (out or sys.stdout.buffer).write(text)


def cmd_stats(args, out=None):
    out = out or sys.stdout
    index = _load(args.index)
    hist = profile_scans(index, _read_patterns(args.patterns))
    text = hist.to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


BENCH_FIELDS = ["backend", "build_seconds", "index_bytes", "ns_per_lf_step", "ns_per_count_query", "n", "r", "rows"]


def _time_lf_walk(step, start, steps):
    p = start
    t0 = time.perf_counter()
    for _ in range(steps):
        p = step(p)
    return (time.perf_counter() - t0) * 1e9 / steps


def run_bench(text: bytes, queries: int = 1000, lf_steps: int = 100_000, seed: int = 0,
              encodings=("bv", "dac", "interp"), block_size: int = DEFAULT_BLOCK_SIZE,
              split: SplitConfig = SplitConfig(), bwt: bytes = None):
    """Benchmark rows (dicts) for the move table, blocked tables and the predecessor baseline.

    Pass *bwt* to reuse an already computed transform of *text*.
    """
    text = prepare_text(text)
    if bwt is None:
        bwt = bwt_from_sa(text, suffix_array(text))
    r = runs_from_bwt(bwt).r
    patterns = random_patterns(text, queries, 1, 64, seed=seed)
    t0 = time.perf_counter()
    table = table_from_bwt(bwt, split, terminator=text[-1])
    table_seconds = time.perf_counter() - t0

    results = []
    backends = [("move", table, table_seconds)]
    for enc in encodings:
        t0 = time.perf_counter()
        bt = convert(table, "blocked", block_size, enc)
        backends.append((f"blocked-{enc}", bt, table_seconds + time.perf_counter() - t0))
    for name, index, seconds in backends:
        lf_ns = _time_lf_walk(index.lf_step, (0, 0), lf_steps)
        t0 = time.perf_counter()
        for p in patterns:
            count(index, p)
        q_ns = (time.perf_counter() - t0) * 1e9 / max(1, len(patterns))
        results.append(dict(backend=name, build_seconds=f"{seconds:.4f}",
                            index_bytes=len(index_io.dumps(index)), ns_per_lf_step=f"{lf_ns:.1f}",
                            ns_per_count_query=f"{q_ns:.1f}", n=len(text), r=r, rows=index.r))

    t0 = time.perf_counter()
    base = PredecessorLF.from_table(table)
    base_seconds = table_seconds + time.perf_counter() - t0
    lf_ns = _time_lf_walk(base.lf, 0, lf_steps)
    results.append(dict(backend="predecessor-baseline", build_seconds=f"{base_seconds:.4f}",
                        index_bytes=16 * len(base._heads), ns_per_lf_step=f"{lf_ns:.1f}",
                        ns_per_count_query="", n=len(text), r=r, rows=len(base._heads)))
    return results


def cmd_bench(args, out=None):
    out = out or sys.stdout
    if args.input:
        text = _read_input(args.input, args.fasta)
    else:
        base = random_text(max(1, args.size // args.copies), 4, args.seed)
        text = mutated_copies(base, args.copies, args.mutation_rate, args.seed + 1)
    rows = run_bench(text, args.queries, args.lf_steps, args.seed, block_size=args.block_size,
                     split=_split_config(args))
    fh = open(args.output, "w", newline="") if args.output else out
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            fh.close()


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="movetable", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a text file")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="index file to write")
    p.add_argument("--fasta", action="store_true", help="strip FASTA headers and newlines first")
    _add_layout_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", help="count each pattern (one per line)")
    p.add_argument("index")
    p.add_argument("patterns")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("invert", help="reconstruct the indexed text")
    p.add_argument("index")
    p.add_argument("-o", "--output")
    p.add_argument("--keep-terminator", action="store_true")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("stats", help="LF scan-length histogram over count queries, as CSV")
    p.add_argument("index")
    p.add_argument("patterns")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time every backend on a generated or supplied text")
    p.add_argument("--input", help="text to index instead of a generated collection")
    p.add_argument("--fasta", action="store_true")
    p.add_argument("--size", type=_positive_int, default=1_000_000, help="generated text length")
    p.add_argument("--copies", type=_positive_int, default=16)
    p.add_argument("--mutation-rate", type=float, default=0.001)
    p.add_argument("--queries", type=_positive_int, default=1000)
    p.add_argument("--lf-steps", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--block-size", type=_positive_int, default=DEFAULT_BLOCK_SIZE)
    split = p.add_mutually_exclusive_group()
    split.add_argument("--split-factor", type=_factor, metavar="F")
    split.add_argument("--balance", type=_balance_d, metavar="D")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"movetable: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1
    except OSError as exc:
        print(f"movetable: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
