import random

import pytest

from matchpoint import (
    MatchEvent,
    MatchSemantics,
    PatternSet,
    build_automaton,
    build_trie,
    longest_per_start,
    match_parallel,
    match_serial,
    serialize_matches,
    walk_from,
)

from _oracles import longest_filter, naive_matches, random_instance

ALL = MatchSemantics.ALL_MATCHES
LONGEST = MatchSemantics.LONGEST_PER_START


def test_serial_worked_example(sample_patterns):
    auto = build_automaton(sample_patterns)
    assert match_serial(auto, b"ABEDE") == [
        MatchEvent(0, 0, 2),   # AB
        MatchEvent(2, 1, 5),   # BEDE
        MatchEvent(3, 2, 4),   # ED
    ]


def test_serial_empty_text(sample_patterns):
    assert match_serial(build_automaton(sample_patterns), b"") == []


def test_serial_overlapping_matches():
    auto = build_automaton(PatternSet([b"AA"]))
    assert match_serial(auto, b"AAAA") == [
        MatchEvent(0, 0, 2),
        MatchEvent(0, 1, 3),
        MatchEvent(0, 2, 4),
    ]


def test_serial_rejects_trie(sample_patterns):
    with pytest.raises(TypeError):
        match_serial(build_trie(sample_patterns), b"x")


def test_serial_equals_naive_oracle(backend):
    rng = random.Random(21)
    for _ in range(300):
        patterns, text = random_instance(rng)
        auto = build_automaton(patterns)
        assert match_serial(auto, text) == naive_matches(patterns, text)


def test_walk_from_worked_example(sample_patterns):
    trie = build_trie(sample_patterns)
    expected = [MatchEvent(2, 1, 5)]  # BEDE
    assert walk_from(trie, b"ABEDE", 1, ALL) == expected
    assert walk_from(trie, b"ABEDE", 1, LONGEST) == expected


def test_walk_from_semantics_switch():
    trie = build_trie(PatternSet([b"AB", b"ABG"]))
    assert walk_from(trie, b"ABG", 0, ALL) == [MatchEvent(0, 0, 2), MatchEvent(1, 0, 3)]
    assert walk_from(trie, b"ABG", 0, LONGEST) == [MatchEvent(1, 0, 3)]


def test_walk_from_at_text_end(sample_patterns):
    trie = build_trie(sample_patterns)
    assert walk_from(trie, b"ABEDE", 5) == []


def test_walk_from_rejects_out_of_range(sample_patterns):
    trie = build_trie(sample_patterns)
    with pytest.raises(ValueError):
        walk_from(trie, b"ABEDE", 6)
    with pytest.raises(ValueError):
        walk_from(trie, b"ABEDE", -1)


def test_walk_from_agrees_with_filtered_naive(backend):
    rng = random.Random(22)
    for _ in range(100):
        patterns, text = random_instance(rng, max_text=64)
        trie = build_trie(patterns)
        oracle = naive_matches(patterns, text)
        for start in range(len(text) + 1):
            at_start = [e for e in oracle if e.start == start]
            assert walk_from(trie, text, start, ALL) == at_start
            assert walk_from(trie, text, start, LONGEST) == longest_filter(at_start)


def test_parallel_equals_serial_under_all_matches(backend):
    rng = random.Random(23)
    for _ in range(150):
        patterns, text = random_instance(rng)
        auto = build_automaton(patterns)
        trie = build_trie(patterns)
        expected = match_serial(auto, text)
        for workers in (1, 2, 4, 8):
            assert match_parallel(trie, text, workers, ALL) == expected


def test_parallel_longest_drops_sub_patterns():
    trie = build_trie(PatternSet([b"AB", b"ABG"]))
    assert match_parallel(trie, b"ABGABG", 2, LONGEST) == [
        MatchEvent(1, 0, 3),
        MatchEvent(1, 3, 6),
    ]


def test_parallel_empty_text(sample_patterns):
    trie = build_trie(sample_patterns)
    for workers in (1, 3):
        assert match_parallel(trie, b"", workers) == []


def test_parallel_rejects_zero_workers(sample_patterns):
    trie = build_trie(sample_patterns)
    with pytest.raises(ValueError):
        match_parallel(trie, b"AB", 0)


def test_parallel_rejects_automaton(sample_patterns):
    with pytest.raises(TypeError):
        match_parallel(build_automaton(sample_patterns), b"AB", 1)


def test_parallel_workers_exceeding_text_length(sample_patterns):
    trie = build_trie(sample_patterns)
    auto = build_automaton(sample_patterns)
    text = b"ABEDE"
    assert match_parallel(trie, text, 64, ALL) == match_serial(auto, text)


def test_longest_semantics_is_a_filter_of_all(backend):
    rng = random.Random(24)
    for _ in range(150):
        patterns, text = random_instance(rng)
        trie = build_trie(patterns)
        all_events = match_parallel(trie, text, 3, ALL)
        assert match_parallel(trie, text, 3, LONGEST) == longest_filter(all_events)


def test_parallel_output_is_deterministic(backend):
    rng = random.Random(25)
    patterns, text = random_instance(rng, max_text=256)
    trie = build_trie(patterns)
    outputs = {
        serialize_matches(match_parallel(trie, text, workers, ALL))
        for workers in (1, 2, 4, 8)
        for _ in range(3)
    }
    assert len(outputs) == 1


def test_walk_inspects_at_most_one_past_longest_pattern():
    # the work model behind the parallel engine: a failure-less walk cannot
    # run deeper than the deepest trie path
    rng = random.Random(26)
    for _ in range(50):
        patterns, text = random_instance(rng, max_text=64)
        trie = build_trie(patterns)
        max_len = max(len(p) for p in patterns)
        for start in range(len(text)):
            inspected = 0
            state = 0
            pos = start
            found = []
            while pos < len(text):
                inspected += 1
                nxt = trie.goto(state, text[pos])
                if nxt is None:
                    break
                state = nxt
                pos += 1
                for pid in trie.final_ids(state):
                    found.append(MatchEvent(pid, start, pos))
            assert inspected <= 1 + max_len
            assert sorted(found, key=lambda e: (e.start, e.pattern_id)) == walk_from(
                trie, text, start, ALL
            )


def test_event_invariants(backend):
    rng = random.Random(27)
    for _ in range(100):
        patterns, text = random_instance(rng)
        auto = build_automaton(patterns)
        for event in match_serial(auto, text):
            assert event.end - event.start == len(patterns[event.pattern_id])
            assert text[event.start : event.end] == patterns[event.pattern_id]


def test_serialize_format(sample_patterns):
    auto = build_automaton(sample_patterns)
    assert serialize_matches(match_serial(auto, b"ABEDE")) == "0\t2\t0\n1\t5\t2\n2\t4\t3\n"
    assert serialize_matches([]) == ""


def test_serialize_sorts_events():
    events = [MatchEvent(1, 4, 6), MatchEvent(0, 0, 2), MatchEvent(0, 4, 6)]
    assert serialize_matches(events) == "0\t2\t0\n4\t6\t0\n4\t6\t1\n"


def test_longest_per_start_helper():
    events = [MatchEvent(0, 0, 2), MatchEvent(1, 0, 3), MatchEvent(0, 3, 5)]
    assert longest_per_start(events) == [MatchEvent(1, 0, 3), MatchEvent(0, 3, 5)]
    assert longest_per_start([]) == []
