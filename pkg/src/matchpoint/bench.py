"""Timing harness: noise-hardened measurement, size sweeps, crossover detection, CSV reports.

Measurement rules: every sample starts with one untimed warm-up execution
so one-time costs (worker pool startup, cache warming) stay out of the
numbers; the timed region covers matching only, never output formatting;
the reported statistic is the median over the repetitions, which absorbs
scheduler noise without requiring any OS-level tuning.

The clock is injectable, so the whole protocol (including the crossover
detector downstream of it) is unit-testable with scripted durations.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

from .automaton import AcAutomaton, FailurelessTrie, build_automaton, build_trie
from .engines import EngineKind, MatchSemantics, match_parallel, match_serial
from .workload import gen_patterns, gen_text

# Sweep defaults: both published ranges are exactly 41 times their smallest
# size, so the grid is k * base for k = 1..41.
COARSE_BASE = 16375
FINE_BASE = 1310
SWEEP_STEPS = 41
DEFAULT_REPETITIONS = 11
DEFAULT_WINDOW = 3
DEFAULT_PATTERN_COUNTS = (5, 10)

Clock = Callable[[], int]


class ReplayClock:
    """Deterministic monotonic clock for tests and the CLI's hidden test mode.

    Calls come in (start, stop) pairs around a timed region; each stop call
    advances the clock by the next scripted duration.
    """

    def __init__(self, durations_ns: Iterable[int]) -> None:
        self._durations = iter(durations_ns)
        self._now = 0
        self._mid_interval = False

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayClock":
        """Load durations from a file with one integer (nanoseconds) per line."""
        lines = Path(path).read_text(encoding="ascii").split()
        return cls(int(line) for line in lines)

    def __call__(self) -> int:
        if self._mid_interval:
            try:
                self._now += next(self._durations)
            except StopIteration:
                raise RuntimeError("replay clock exhausted: not enough scripted durations") from None
            self._mid_interval = False
        else:
            self._mid_interval = True
        return self._now


@dataclass(frozen=True)
class TimingSample:
    """Median-of-repetitions timing for one engine on one input."""

    engine: EngineKind
    text_size: int
    pattern_count: int
    workers: int
    repetitions: int
    times: tuple[int, ...]
    median: float


class SweepPoint(NamedTuple):
    size: int
    serial_ns: float
    parallel_ns: float


@dataclass(frozen=True)
class SweepSeries:
    """Both engines' medians across a strictly increasing size grid."""

    points: tuple[SweepPoint, ...]
    pattern_count: int
    workers: int
    seed: int
    repetitions: int

    def __post_init__(self) -> None:
        points = tuple(SweepPoint(*p) for p in self.points)
        object.__setattr__(self, "points", points)
        if len(points) < 2:
            raise ValueError("sweep series needs at least 2 points")
        sizes = [p.size for p in points]
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("sweep sizes must be strictly increasing")

    @property
    def sizes(self) -> list[int]:
        return [p.size for p in self.points]


@dataclass(frozen=True)
class CrossoverReport:
    """Where the parallel engine first beats the serial one, and stays ahead.

    `crossover_size` is the interpolated root of serial(n) - parallel(n)
    between the last grid point where parallel was not faster and the first
    point of the confirmed run; None when parallel never sustainably wins.
    """

    crossover_size: float | None
    size_below: int | None
    size_at: int | None
    confirmation_window: int
    series: SweepSeries


def _make_runner(engine, machine, text, workers, semantics):
    if engine is EngineKind.SERIAL_AC:
        if not isinstance(machine, AcAutomaton):
            raise TypeError(f"SERIAL_AC requires an AcAutomaton, got {type(machine).__name__}")
        return lambda: match_serial(machine, text)
    if engine is EngineKind.PARALLEL_FLAC:
        if not isinstance(machine, FailurelessTrie):
            raise TypeError(f"PARALLEL_FLAC requires a FailurelessTrie, got {type(machine).__name__}")
        sem = MatchSemantics.LONGEST_PER_START if semantics is None else semantics
        return lambda: match_parallel(machine, text, workers, sem)
    raise TypeError(f"unknown engine {engine!r}")


def measure(
    engine: EngineKind,
    machine: AcAutomaton | FailurelessTrie,
    text: bytes,
    repetitions: int,
    *,
    workers: int = 4,
    semantics: MatchSemantics | None = None,
    clock: Clock | None = None,
) -> TimingSample:
    """Time one engine on one text: one untimed warm-up, then `repetitions`
    timed runs, median recorded.

    The timed region covers matching only; results are materialized in
    memory and never formatted or printed inside it. The parallel engine is
    timed under its default longest-per-start semantics unless told
    otherwise.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    run = _make_runner(engine, machine, text, workers, semantics)
    if clock is None:
        clock = time.perf_counter_ns
    run()  # warm-up, untimed
    times = []
    for _ in range(repetitions):
        t0 = clock()
        run()
        t1 = clock()
        times.append(t1 - t0)
    return TimingSample(
        engine=engine,
        text_size=len(text),
        pattern_count=machine.pattern_count,
        workers=workers,
        repetitions=repetitions,
        times=tuple(times),
        median=float(statistics.median(times)),
    )


def sweep_sizes(
    base_size: int,
    steps: int,
    pattern_count: int = 5,
    workers: int = 4,
    repetitions: int = DEFAULT_REPETITIONS,
    seed: int = 0,
    *,
    clock: Clock | None = None,
) -> SweepSeries:
    """Measure both engines at sizes k * base_size for k = 1..steps.

    Machines are built once and reused across all sizes; construction time
    is deliberately outside the timed regions. Measurements run strictly
    one at a time so they cannot contaminate each other.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if base_size < 1:
        raise ValueError("base_size must be >= 1")
    patterns = gen_patterns(pattern_count, seed)
    automaton = build_automaton(patterns)
    trie = build_trie(patterns)
    points = []
    for k in range(1, steps + 1):
        text = gen_text(k * base_size)
        serial = measure(EngineKind.SERIAL_AC, automaton, text, repetitions, workers=workers, clock=clock)
        parallel = measure(EngineKind.PARALLEL_FLAC, trie, text, repetitions, workers=workers, clock=clock)
        points.append(SweepPoint(len(text), serial.median, parallel.median))
    return SweepSeries(tuple(points), pattern_count, workers, seed, repetitions)


def sweep_pattern_counts(
    counts: Sequence[int],
    *,
    base_size: int = FINE_BASE,
    steps: int = SWEEP_STEPS,
    workers: int = 4,
    repetitions: int = DEFAULT_REPETITIONS,
    seed: int = 0,
    confirmation_window: int = DEFAULT_WINDOW,
    clock: Clock | None = None,
) -> list[tuple[int, CrossoverReport]]:
    """Run one size sweep per pattern count and report each crossover."""
    if not counts:
        raise ValueError("counts must be non-empty")
    reports = []
    for count in counts:
        series = sweep_sizes(base_size, steps, count, workers, repetitions, seed, clock=clock)
        reports.append((count, find_crossover(series, confirmation_window)))
    return reports


def find_crossover(series: SweepSeries, confirmation_window: int = DEFAULT_WINDOW) -> CrossoverReport:
    """Find the first size where parallel beats serial and keeps doing so.

    A crossover needs parallel_median < serial_median at a grid point and at
    the following confirmation_window - 1 points (or through the end of the
    grid); the window keeps single-point timing disturbances from counting.
    The reported size is the linearly interpolated root of
    serial(n) - parallel(n) between the bracketing grid points, since the
    true crossing generally falls between them.
    """
    if confirmation_window < 1:
        raise ValueError("confirmation_window must be >= 1")
    points = series.points
    gaps = [p.serial_ns - p.parallel_ns for p in points]  # > 0 where parallel is faster
    n = len(points)
    for i in range(n):
        window_end = min(i + confirmation_window, n)
        if all(g > 0 for g in gaps[i:window_end]):
            if i == 0:
                return CrossoverReport(float(points[0].size), None, points[0].size, confirmation_window, series)
            d0, d1 = gaps[i - 1], gaps[i]
            s0, s1 = points[i - 1].size, points[i].size
            crossover = s0 + (s1 - s0) * (-d0) / (d1 - d0)
            return CrossoverReport(crossover, s0, s1, confirmation_window, series)
    return CrossoverReport(None, None, None, confirmation_window, series)


# --- CSV interchange -------------------------------------------------------

SWEEP_HEADER = "size_bytes,pattern_count,workers,engine,median_ns,reps,seed"
CROSSOVER_HEADER = "pattern_count,crossover_bytes,confirmed_window,grid_base,grid_steps"


class CrossoverRow(NamedTuple):
    """One parsed crossover CSV row."""

    pattern_count: int
    crossover_bytes: float | None
    confirmed_window: int
    grid_base: int
    grid_steps: int


def _write_text(dest, content: str) -> None:
    if hasattr(dest, "write"):
        dest.write(content)
    else:
        Path(dest).write_text(content, encoding="ascii", newline="\n")


def _read_text(src) -> str:
    if hasattr(src, "read"):
        return src.read()
    return Path(src).read_text(encoding="ascii")


def write_sweep_csv(series: SweepSeries, dest) -> None:
    """Write a sweep as CSV: sizes ascending, serial row before parallel row."""
    lines = [SWEEP_HEADER]
    for point in series.points:
        for engine, median in (
            (EngineKind.SERIAL_AC, point.serial_ns),
            (EngineKind.PARALLEL_FLAC, point.parallel_ns),
        ):
            lines.append(
                f"{point.size},{series.pattern_count},{series.workers},"
                f"{engine.value},{median},{series.repetitions},{series.seed}"
            )
    _write_text(dest, "\n".join(lines) + "\n")


def parse_sweep_csv(src) -> SweepSeries:
    """Inverse of `write_sweep_csv`; validates header, row pairing and metadata."""
    lines = [line for line in _read_text(src).splitlines() if line]
    if not lines or lines[0] != SWEEP_HEADER:
        raise ValueError("unrecognized sweep CSV header")
    rows = [line.split(",") for line in lines[1:]]
    if not rows or len(rows) % 2:
        raise ValueError("expected serial/parallel row pairs")
    points = []
    meta: tuple[int, int, int, int] | None = None
    for serial_row, parallel_row in zip(rows[::2], rows[1::2]):
        if len(serial_row) != 7 or len(parallel_row) != 7:
            raise ValueError("malformed sweep CSV row")
        if serial_row[3] != EngineKind.SERIAL_AC.value or parallel_row[3] != EngineKind.PARALLEL_FLAC.value:
            raise ValueError("expected a serial row followed by a parallel row per size")
        if serial_row[0] != parallel_row[0]:
            raise ValueError("engine rows for one size must share the size")
        row_meta = (int(serial_row[1]), int(serial_row[2]), int(serial_row[5]), int(serial_row[6]))
        if (int(parallel_row[1]), int(parallel_row[2]), int(parallel_row[5]), int(parallel_row[6])) != row_meta:
            raise ValueError("engine rows for one size must share metadata")
        if meta is None:
            meta = row_meta
        elif meta != row_meta:
            raise ValueError("inconsistent metadata across sweep rows")
        points.append(SweepPoint(int(serial_row[0]), float(serial_row[4]), float(parallel_row[4])))
    assert meta is not None
    return SweepSeries(tuple(points), pattern_count=meta[0], workers=meta[1], seed=meta[3], repetitions=meta[2])


def write_crossover_csv(reports: Iterable[CrossoverReport], dest) -> None:
    """Write crossover reports as CSV; `crossover_bytes` is empty for no crossing."""
    lines = [CROSSOVER_HEADER]
    for report in reports:
        crossover = "" if report.crossover_size is None else str(report.crossover_size)
        lines.append(
            f"{report.series.pattern_count},{crossover},{report.confirmation_window},"
            f"{report.series.points[0].size},{len(report.series.points)}"
        )
    _write_text(dest, "\n".join(lines) + "\n")


def parse_crossover_csv(src) -> list[CrossoverRow]:
    lines = [line for line in _read_text(src).splitlines() if line]
    if not lines or lines[0] != CROSSOVER_HEADER:
        raise ValueError("unrecognized crossover CSV header")
    rows = []
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 5:
            raise ValueError("malformed crossover CSV row")
        rows.append(
            CrossoverRow(
                pattern_count=int(fields[0]),
                crossover_bytes=float(fields[1]) if fields[1] else None,
                confirmed_window=int(fields[2]),
                grid_base=int(fields[3]),
                grid_steps=int(fields[4]),
            )
        )
    return rows
