"""Command-line interface.

Subcommands: `generate` (workload files), `match` (run one engine or route
automatically), `bench` (size and pattern-count sweeps to CSV), `calibrate`
(persist a dispatch threshold), and `run` (auto-dispatched matching against
a calibration).

Match listings go to standard output; everything diagnostic (summaries,
progress, warnings) goes to standard error, so benchmark-relevant code
paths never print. Exit codes: 0 success, 1 runtime or I/O error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import bench
from .automaton import build_automaton, build_trie
from .bench import ReplayClock
from .dispatch import (
    Calibration,
    CalibrationError,
    calibrate,
    dispatch_match,
    load_calibration,
    save_calibration,
)
from .engines import (
    EngineKind,
    MatchSemantics,
    longest_per_start,
    match_parallel,
    match_serial,
    serialize_matches,
)
from .patterns import PatternSetError, read_pattern_file, write_pattern_file
from .workload import gen_patterns, gen_text


def _nonnegative_int(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return number


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return number


def _resolve_semantics(flag: str | None, engine: str) -> MatchSemantics:
    if flag == "all":
        return MatchSemantics.ALL_MATCHES
    if flag == "longest":
        return MatchSemantics.LONGEST_PER_START
    # Unset: the parallel engine defaults to its longest-per-start behavior,
    # serial and auto default to the full event stream.
    return MatchSemantics.LONGEST_PER_START if engine == "parallel" else MatchSemantics.ALL_MATCHES


def _load_clock(args) -> ReplayClock | None:
    if getattr(args, "fake_clock", None):
        return ReplayClock.from_file(args.fake_clock)
    return None


def _check_pattern_count(patterns, calibration: Calibration) -> None:
    if len(patterns) != calibration.pattern_count:
        print(
            f"warning: calibration was made with {calibration.pattern_count} patterns, "
            f"input has {len(patterns)}; the threshold may not transfer",
            file=sys.stderr,
        )


def _emit_matches(events, engine: EngineKind) -> None:
    sys.stdout.write(serialize_matches(events))
    print(f"# matches={len(events)} engine={engine.value}", file=sys.stderr)


def _cmd_generate(args) -> int:
    text = gen_text(args.size)
    patterns = gen_patterns(args.patterns, args.seed)
    Path(args.out_text).write_bytes(text)
    write_pattern_file(patterns, args.out_patterns)
    return 0


def _cmd_match(args) -> int:
    if args.engine == "auto" and args.calibration is None:
        args.parser.error("--engine auto requires --calibration")
    patterns = read_pattern_file(args.patterns)
    text = Path(args.text).read_bytes()
    semantics = _resolve_semantics(args.semantics, args.engine)
    if args.engine == "serial":
        events = match_serial(build_automaton(patterns), text)
        if semantics is MatchSemantics.LONGEST_PER_START:
            events = longest_per_start(events)
        _emit_matches(events, EngineKind.SERIAL_AC)
    elif args.engine == "parallel":
        workers = args.workers if args.workers is not None else 4
        events = match_parallel(build_trie(patterns), text, workers, semantics)
        _emit_matches(events, EngineKind.PARALLEL_FLAC)
    else:
        calibration = load_calibration(args.calibration)
        _check_pattern_count(patterns, calibration)
        choice, events = dispatch_match(patterns, text, calibration, semantics, workers=args.workers)
        _emit_matches(events, choice.engine)
    return 0


def _cmd_bench(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    clock = _load_clock(args)

    def note(path: Path) -> None:
        print(f"wrote {path}", file=sys.stderr)

    if args.mode == "coarse":
        series = bench.sweep_sizes(
            bench.COARSE_BASE, bench.SWEEP_STEPS, 5, args.workers, args.reps, args.seed, clock=clock
        )
        path = out_dir / "sweep_coarse.csv"
        bench.write_sweep_csv(series, path)
        note(path)
    elif args.mode == "fine":
        series = bench.sweep_sizes(
            bench.FINE_BASE, bench.SWEEP_STEPS, 5, args.workers, args.reps, args.seed, clock=clock
        )
        sweep_path = out_dir / "sweep_fine.csv"
        bench.write_sweep_csv(series, sweep_path)
        note(sweep_path)
        report = bench.find_crossover(series)
        crossover_path = out_dir / "crossover_fine.csv"
        bench.write_crossover_csv([report], crossover_path)
        note(crossover_path)
    else:  # patterns
        reports = bench.sweep_pattern_counts(
            bench.DEFAULT_PATTERN_COUNTS,
            workers=args.workers,
            repetitions=args.reps,
            seed=args.seed,
            clock=clock,
        )
        for count, report in reports:
            sweep_path = out_dir / f"sweep_patterns_p{count}.csv"
            bench.write_sweep_csv(report.series, sweep_path)
            note(sweep_path)
        crossover_path = out_dir / "crossover_patterns.csv"
        bench.write_crossover_csv([report for _, report in reports], crossover_path)
        note(crossover_path)
    return 0


def _cmd_calibrate(args) -> int:
    clock = _load_clock(args)
    calibration = calibrate(5, args.workers, repetitions=args.reps, seed=args.seed, clock=clock)
    save_calibration(calibration, args.out)
    threshold = calibration.threshold_bytes
    shown = "inf" if math.isinf(threshold) else str(int(threshold))
    print(f"wrote {args.out} (threshold_bytes={shown})", file=sys.stderr)
    return 0


def _cmd_run(args) -> int:
    patterns = read_pattern_file(args.patterns)
    text = Path(args.text).read_bytes()
    calibration = load_calibration(args.calibration)
    _check_pattern_count(patterns, calibration)
    semantics = _resolve_semantics(args.semantics, "auto")
    choice, events = dispatch_match(patterns, text, calibration, semantics, workers=args.workers)
    _emit_matches(events, choice.engine)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchpoint",
        description="Multi-pattern matching with serial and data-parallel engines, "
        "benchmark sweeps, and size-based engine dispatch.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a workload text file and pattern file")
    gen.add_argument("--size", type=_nonnegative_int, required=True, help="text size in bytes")
    gen.add_argument("--patterns", type=_positive_int, default=5, help="number of patterns (default 5)")
    gen.add_argument("--seed", type=int, default=0, help="workload seed (default 0)")
    gen.add_argument("--out-text", required=True, help="output path for the text file")
    gen.add_argument("--out-patterns", required=True, help="output path for the pattern file")
    gen.set_defaults(handler=_cmd_generate)

    match = sub.add_parser("match", help="match patterns against a text file")
    match.add_argument("--text", required=True, help="input text file (raw bytes)")
    match.add_argument("--patterns", required=True, help="pattern file, one pattern per line")
    match.add_argument("--engine", choices=("serial", "parallel", "auto"), default="serial")
    match.add_argument(
        "--workers",
        type=_positive_int,
        default=None,
        help="parallel worker count (default 4, or the calibrated value with --engine auto)",
    )
    match.add_argument(
        "--semantics",
        choices=("all", "longest"),
        default=None,
        help="event semantics (default: all; parallel engine defaults to longest)",
    )
    match.add_argument("--calibration", default=None, help="calibration JSON (required for auto)")
    match.set_defaults(handler=_cmd_match, parser=match)

    bench_cmd = sub.add_parser("bench", help="run a timing sweep and write CSV reports")
    bench_cmd.add_argument("--mode", choices=("coarse", "fine", "patterns"), required=True)
    bench_cmd.add_argument("--reps", type=_positive_int, default=bench.DEFAULT_REPETITIONS)
    bench_cmd.add_argument("--workers", type=_positive_int, default=4)
    bench_cmd.add_argument("--seed", type=int, default=0)
    bench_cmd.add_argument("--out", required=True, help="output directory for CSV files")
    bench_cmd.add_argument("--fake-clock", help=argparse.SUPPRESS)
    bench_cmd.set_defaults(handler=_cmd_bench)

    cal = sub.add_parser("calibrate", help="measure this machine and write a calibration file")
    cal.add_argument("--reps", type=_positive_int, default=bench.DEFAULT_REPETITIONS)
    cal.add_argument("--workers", type=_positive_int, default=4)
    cal.add_argument("--seed", type=int, default=0)
    cal.add_argument("--out", required=True, help="output path for the calibration JSON")
    cal.add_argument("--fake-clock", help=argparse.SUPPRESS)
    cal.set_defaults(handler=_cmd_calibrate)

    run = sub.add_parser("run", help="match with the engine picked by a calibration")
    run.add_argument("--text", required=True)
    run.add_argument("--patterns", required=True)
    run.add_argument("--calibration", required=True)
    run.add_argument("--workers", type=_positive_int, default=None)
    run.add_argument("--semantics", choices=("all", "longest"), default=None)
    run.set_defaults(handler=_cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, PatternSetError, CalibrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
