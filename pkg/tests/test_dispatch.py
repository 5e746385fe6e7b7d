import json
import math
import random
from datetime import datetime, timezone

import pytest

from matchpoint import (
    Calibration,
    CalibrationError,
    EngineKind,
    MatchSemantics,
    PatternSet,
    ReplayClock,
    SweepParams,
    build_automaton,
    calibrate,
    dispatch_match,
    load_calibration,
    match_serial,
    route,
    save_calibration,
    serialize_matches,
)
from matchpoint.dispatch import calibration_from_dict, calibration_to_dict

from _oracles import random_instance


def make_calibration(threshold=40000, pattern_count=5, workers=4):
    return Calibration(
        threshold_bytes=threshold,
        pattern_count=pattern_count,
        workers=workers,
        seed=0,
        created_at=datetime(2024, 5, 2, 12, 30, 0, tzinfo=timezone.utc),
        host_label="testhost",
        sweep=SweepParams(base=1310, steps=41, reps=11, window=3),
    )


def synthetic_calibration_clock(base=1310, steps=41, reps=11):
    # serial 2.0n vs parallel 60000 + 0.5n: analytic crossing at n = 40000
    durations = []
    for k in range(1, steps + 1):
        size = k * base
        durations.extend([2 * size] * reps)
        durations.extend([60000 + size // 2] * reps)
    return ReplayClock(durations)


def always_serial_clock(base=1310, steps=41, reps=11):
    durations = []
    for k in range(1, steps + 1):
        size = k * base
        durations.extend([size] * reps)
        durations.extend([1000000 + size] * reps)
    return ReplayClock(durations)


# --- routing ------------------------------------------------------------------


def test_route_below_threshold_goes_serial():
    choice = route(39999, make_calibration())
    assert choice.engine is EngineKind.SERIAL_AC
    assert choice.threshold_bytes == 40000
    assert choice.input_size == 39999


def test_route_tie_goes_parallel():
    assert route(40000, make_calibration()).engine is EngineKind.PARALLEL_FLAC


def test_route_always_serial_with_infinite_threshold():
    cal = make_calibration(threshold=math.inf)
    for size in (0, 1, 10**12):
        assert route(size, cal).engine is EngineKind.SERIAL_AC


def test_route_is_a_monotone_step_function():
    cal = make_calibration()
    sizes = range(0, 100001, 2500)
    choices = [route(size, cal).engine for size in sizes]
    flipped = False
    for engine in choices:
        if engine is EngineKind.PARALLEL_FLAC:
            flipped = True
        elif flipped:
            pytest.fail("routing flipped back to serial above the threshold")
    assert choices[0] is EngineKind.SERIAL_AC
    assert choices[-1] is EngineKind.PARALLEL_FLAC


def test_route_rejects_negative_size():
    with pytest.raises(ValueError):
        route(-1, make_calibration())


def test_calibration_validation():
    with pytest.raises(ValueError):
        make_calibration(threshold=0)
    with pytest.raises(ValueError):
        make_calibration(pattern_count=0)


# --- calibrate ----------------------------------------------------------------


def test_calibrate_finds_synthetic_threshold():
    cal = calibrate(5, 4, seed=0, clock=synthetic_calibration_clock(), host_label="rig")
    assert cal.threshold_bytes == 40000
    assert cal.pattern_count == 5
    assert cal.workers == 4
    assert cal.host_label == "rig"
    assert cal.sweep == SweepParams(base=1310, steps=41, reps=11, window=3)


def test_calibrate_always_serial_when_parallel_never_wins():
    cal = calibrate(5, 4, clock=always_serial_clock())
    assert math.isinf(cal.threshold_bytes)
    assert route(10**9, cal).engine is EngineKind.SERIAL_AC


def test_calibrate_is_deterministic_up_to_created_at():
    first = calibrate(5, 4, seed=3, clock=synthetic_calibration_clock(), host_label="rig")
    second = calibrate(5, 4, seed=3, clock=synthetic_calibration_clock(), host_label="rig")
    assert calibration_to_dict(first) | {"created_at": ""} == calibration_to_dict(second) | {
        "created_at": ""
    }


def test_calibrate_rounds_to_nearest_byte():
    # crossing at 300000/9.5 = 31578.94...: rounded, not truncated
    base, steps, reps = 5000, 10, 1
    durations = []
    for k in range(1, steps + 1):
        size = k * base
        durations.append(10 * size)
        durations.append(300000 + size // 2)
    cal = calibrate(5, 4, base_size=base, steps=steps, repetitions=reps, clock=ReplayClock(durations))
    assert cal.threshold_bytes == 31579


# --- dispatch_match -------------------------------------------------------------


def test_dispatch_worked_example_serial(sample_patterns):
    choice, events = dispatch_match(sample_patterns, b"ABEDE", make_calibration(threshold=40000))
    assert choice.engine is EngineKind.SERIAL_AC
    assert [(e.pattern_id, e.start) for e in events] == [(0, 0), (2, 1), (3, 2)]


def test_dispatch_same_matches_when_forced_parallel(sample_patterns):
    serial_choice, serial_events = dispatch_match(
        sample_patterns, b"ABEDE", make_calibration(threshold=40000)
    )
    parallel_choice, parallel_events = dispatch_match(
        sample_patterns, b"ABEDE", make_calibration(threshold=1)
    )
    assert serial_choice.engine is EngineKind.SERIAL_AC
    assert parallel_choice.engine is EngineKind.PARALLEL_FLAC
    assert parallel_events == serial_events


def test_dispatch_empty_text_goes_serial(sample_patterns):
    choice, events = dispatch_match(sample_patterns, b"", make_calibration(threshold=1))
    assert choice.engine is EngineKind.SERIAL_AC
    assert events == []


def test_dispatch_engine_transparency_under_all_matches():
    rng = random.Random(41)
    for _ in range(30):
        patterns, text = random_instance(rng, max_text=128)
        forced_serial = dispatch_match(
            patterns, text, make_calibration(threshold=math.inf), MatchSemantics.ALL_MATCHES
        )[1]
        forced_parallel = dispatch_match(
            patterns, text, make_calibration(threshold=1), MatchSemantics.ALL_MATCHES
        )[1]
        if text:
            assert serialize_matches(forced_parallel) == serialize_matches(forced_serial)


def test_dispatch_longest_semantics_via_serial_engine():
    patterns = PatternSet([b"AB", b"ABG"])
    choice, events = dispatch_match(
        patterns, b"ABG", make_calibration(threshold=40000), MatchSemantics.LONGEST_PER_START
    )
    assert choice.engine is EngineKind.SERIAL_AC
    assert [(e.pattern_id, e.start) for e in events] == [(1, 0)]


def test_dispatch_reuses_prebuilt_machines(sample_patterns):
    auto = build_automaton(sample_patterns)
    choice, events = dispatch_match(
        sample_patterns, b"ABEDE", make_calibration(threshold=40000), automaton=auto
    )
    assert events == match_serial(auto, b"ABEDE")


# --- calibration file format ----------------------------------------------------


def test_calibration_json_round_trip(tmp_path):
    cal = make_calibration()
    path = tmp_path / "calibration.json"
    save_calibration(cal, path)
    assert load_calibration(path) == cal


def test_calibration_json_round_trip_infinite(tmp_path):
    cal = make_calibration(threshold=math.inf)
    path = tmp_path / "calibration.json"
    save_calibration(cal, path)
    loaded = load_calibration(path)
    assert math.isinf(loaded.threshold_bytes)
    assert loaded == cal
    assert json.loads(path.read_text())["threshold_bytes"] == "inf"


def test_calibration_dict_shape():
    obj = calibration_to_dict(make_calibration())
    assert obj == {
        "threshold_bytes": 40000,
        "pattern_count": 5,
        "workers": 4,
        "seed": 0,
        "created_at": "2024-05-02T12:30:00+00:00",
        "host_label": "testhost",
        "sweep": {"base": 1310, "steps": 41, "reps": 11, "window": 3},
    }
    assert calibration_from_dict(obj) == make_calibration()


def test_calibration_rejects_unknown_keys():
    obj = calibration_to_dict(make_calibration())
    obj["extra"] = 1
    with pytest.raises(CalibrationError, match="unknown"):
        calibration_from_dict(obj)


def test_calibration_rejects_missing_keys():
    obj = calibration_to_dict(make_calibration())
    del obj["workers"]
    with pytest.raises(CalibrationError, match="missing"):
        calibration_from_dict(obj)


def test_calibration_rejects_unknown_sweep_keys():
    obj = calibration_to_dict(make_calibration())
    obj["sweep"]["note"] = "hi"
    with pytest.raises(CalibrationError):
        calibration_from_dict(obj)


def test_calibration_rejects_bad_threshold():
    obj = calibration_to_dict(make_calibration())
    obj["threshold_bytes"] = "huge"
    with pytest.raises(CalibrationError):
        calibration_from_dict(obj)
    obj["threshold_bytes"] = 1.5
    with pytest.raises(CalibrationError):
        calibration_from_dict(obj)


def test_calibration_rejects_naive_timestamp():
    obj = calibration_to_dict(make_calibration())
    obj["created_at"] = "2024-05-02T12:30:00"
    with pytest.raises(CalibrationError):
        calibration_from_dict(obj)


def test_calibration_rejects_non_json_file(tmp_path):
    path = tmp_path / "calibration.json"
    path.write_text("{not json")
    with pytest.raises(CalibrationError):
        load_calibration(path)
