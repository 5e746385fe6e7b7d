"""Size-threshold calibration and automatic engine routing.

The serial engine wins on small inputs, the data-parallel one on large
inputs; `calibrate` locates the crossover on this machine and persists it,
and `route` then picks the engine per input with a single size comparison.
The threshold is a step function of text size only; the calibration records
its pattern count and sweep parameters so callers can judge whether it
still applies.
"""

from __future__ import annotations

import json
import math
import platform
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import NamedTuple

from .automaton import AcAutomaton, FailurelessTrie, build_automaton, build_trie
from .bench import (
    DEFAULT_REPETITIONS,
    DEFAULT_WINDOW,
    FINE_BASE,
    SWEEP_STEPS,
    Clock,
    find_crossover,
    sweep_sizes,
)
from .engines import (
    EngineKind,
    MatchEvent,
    MatchSemantics,
    longest_per_start,
    match_parallel,
    match_serial,
)
from .patterns import PatternSet


class CalibrationError(ValueError):
    """Calibration file does not match the expected schema."""


@dataclass(frozen=True)
class SweepParams:
    """Sweep parameters a calibration was produced with."""

    base: int
    steps: int
    reps: int
    window: int


@dataclass(frozen=True)
class Calibration:
    """Persisted dispatch threshold with provenance metadata.

    `threshold_bytes` is `math.inf` when the parallel engine never won the
    calibration sweep; routing then always picks the serial engine. Stale
    calibrations are never auto-invalidated: `created_at` and `host_label`
    exist so operators can judge staleness themselves.
    """

    threshold_bytes: int | float
    pattern_count: int
    workers: int
    seed: int
    created_at: datetime
    host_label: str
    sweep: SweepParams

    def __post_init__(self) -> None:
        if not self.threshold_bytes > 0:
            raise ValueError("threshold_bytes must be positive")
        if self.pattern_count < 1:
            raise ValueError("pattern_count must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


class EngineChoice(NamedTuple):
    """A routing decision together with what decided it."""

    engine: EngineKind
    threshold_bytes: int | float
    input_size: int


def calibrate(
    pattern_count: int = 5,
    workers: int = 4,
    *,
    base_size: int = FINE_BASE,
    steps: int = SWEEP_STEPS,
    repetitions: int = DEFAULT_REPETITIONS,
    confirmation_window: int = DEFAULT_WINDOW,
    seed: int = 0,
    clock: Clock | None = None,
    host_label: str | None = None,
) -> Calibration:
    """Run the fine size sweep and turn its crossover into a threshold.

    The interpolated crossover is rounded to the nearest byte; when the
    sweep shows no sustained crossing the threshold becomes the
    always-serial infinity sentinel.
    """
    series = sweep_sizes(base_size, steps, pattern_count, workers, repetitions, seed, clock=clock)
    report = find_crossover(series, confirmation_window)
    threshold: int | float
    if report.crossover_size is None:
        threshold = math.inf
    else:
        threshold = round(report.crossover_size)
    return Calibration(
        threshold_bytes=threshold,
        pattern_count=pattern_count,
        workers=workers,
        seed=seed,
        created_at=datetime.now(timezone.utc).replace(microsecond=0),
        host_label=host_label if host_label is not None else (platform.node() or "unknown-host"),
        sweep=SweepParams(base=base_size, steps=steps, reps=repetitions, window=confirmation_window),
    )


def route(input_size: int, calibration: Calibration) -> EngineChoice:
    """Pick the engine for an input size: at or above the threshold goes parallel."""
    if input_size < 0:
        raise ValueError("input_size must be >= 0")
    engine = (
        EngineKind.PARALLEL_FLAC
        if input_size >= calibration.threshold_bytes
        else EngineKind.SERIAL_AC
    )
    return EngineChoice(engine, calibration.threshold_bytes, input_size)


def dispatch_match(
    patterns: PatternSet,
    text: bytes,
    calibration: Calibration,
    semantics: MatchSemantics = MatchSemantics.ALL_MATCHES,
    *,
    workers: int | None = None,
    automaton: AcAutomaton | None = None,
    trie: FailurelessTrie | None = None,
) -> tuple[EngineChoice, list[MatchEvent]]:
    """Route by text size, run the chosen engine, and return both.

    Prebuilt machines are reused when provided; otherwise only the machine
    the route selects is built. Under ALL_MATCHES the match list is the same
    whichever engine the threshold picks.
    """
    choice = route(len(text), calibration)
    if choice.engine is EngineKind.SERIAL_AC:
        machine = automaton if automaton is not None else build_automaton(patterns)
        events = match_serial(machine, text)
        if semantics is MatchSemantics.LONGEST_PER_START:
            events = longest_per_start(events)
    else:
        flac = trie if trie is not None else build_trie(patterns)
        effective_workers = workers if workers is not None else calibration.workers
        events = match_parallel(flac, text, effective_workers, semantics)
    return choice, events


# --- calibration file format -------------------------------------------------

_TOP_KEYS = {"threshold_bytes", "pattern_count", "workers", "seed", "created_at", "host_label", "sweep"}
_SWEEP_KEYS = {"base", "steps", "reps", "window"}


def _require_int(obj: dict, key: str) -> int:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise CalibrationError(f"key {key!r} must be an integer")
    return value


def calibration_to_dict(calibration: Calibration) -> dict:
    threshold = calibration.threshold_bytes
    return {
        "threshold_bytes": "inf" if math.isinf(threshold) else int(threshold),
        "pattern_count": calibration.pattern_count,
        "workers": calibration.workers,
        "seed": calibration.seed,
        "created_at": calibration.created_at.isoformat(),
        "host_label": calibration.host_label,
        "sweep": {
            "base": calibration.sweep.base,
            "steps": calibration.sweep.steps,
            "reps": calibration.sweep.reps,
            "window": calibration.sweep.window,
        },
    }


def calibration_from_dict(obj: dict) -> Calibration:
    if not isinstance(obj, dict):
        raise CalibrationError("calibration must be a JSON object")
    if set(obj) != _TOP_KEYS:
        unknown = set(obj) - _TOP_KEYS
        missing = _TOP_KEYS - set(obj)
        detail = []
        if unknown:
            detail.append(f"unknown keys {sorted(unknown)}")
        if missing:
            detail.append(f"missing keys {sorted(missing)}")
        raise CalibrationError("bad calibration schema: " + "; ".join(detail))
    raw_threshold = obj["threshold_bytes"]
    threshold: int | float
    if raw_threshold == "inf":
        threshold = math.inf
    elif isinstance(raw_threshold, int) and not isinstance(raw_threshold, bool):
        threshold = raw_threshold
    else:
        raise CalibrationError("threshold_bytes must be an integer or the string 'inf'")
    sweep_obj = obj["sweep"]
    if not isinstance(sweep_obj, dict) or set(sweep_obj) != _SWEEP_KEYS:
        raise CalibrationError(f"sweep must be an object with keys {sorted(_SWEEP_KEYS)}")
    if not isinstance(obj["host_label"], str):
        raise CalibrationError("host_label must be a string")
    if not isinstance(obj["created_at"], str):
        raise CalibrationError("created_at must be an ISO-8601 string")
    try:
        created_at = datetime.fromisoformat(obj["created_at"])
    except ValueError as exc:
        raise CalibrationError(f"bad created_at timestamp: {exc}") from None
    if created_at.tzinfo is None:
        raise CalibrationError("created_at must carry a UTC offset")
    try:
        return Calibration(
            threshold_bytes=threshold,
            pattern_count=_require_int(obj, "pattern_count"),
            workers=_require_int(obj, "workers"),
            seed=_require_int(obj, "seed"),
            created_at=created_at.astimezone(timezone.utc),
            host_label=obj["host_label"],
            sweep=SweepParams(
                base=_require_int(sweep_obj, "base"),
                steps=_require_int(sweep_obj, "steps"),
                reps=_require_int(sweep_obj, "reps"),
                window=_require_int(sweep_obj, "window"),
            ),
        )
    except ValueError as exc:
        raise CalibrationError(str(exc)) from None


def save_calibration(calibration: Calibration, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(calibration_to_dict(calibration), indent=2) + "\n", encoding="utf-8"
    )


def load_calibration(path: str | Path) -> Calibration:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CalibrationError(f"calibration file is not valid JSON: {exc}") from None
    return calibration_from_dict(obj)
