import pytest

from matchpoint import (
    DuplicatePatternError,
    InvalidPatternError,
    PatternSet,
    parse_pattern_file,
    read_pattern_file,
    write_pattern_file,
)


def test_ids_are_positions():
    ps = PatternSet([b"xy", b"z"])
    assert len(ps) == 2
    assert ps[0] == b"xy"
    assert ps[1] == b"z"
    assert list(ps) == [b"xy", b"z"]


def test_empty_set_rejected():
    with pytest.raises(InvalidPatternError):
        PatternSet([])


def test_empty_pattern_rejected():
    with pytest.raises(InvalidPatternError, match="pattern 1 is empty"):
        PatternSet([b"a", b""])


def test_duplicate_rejected_with_offender():
    with pytest.raises(DuplicatePatternError, match="AB"):
        PatternSet([b"AB", b"AB"])


def test_non_bytes_pattern_rejected():
    with pytest.raises(TypeError):
        PatternSet(["AB"])
    with pytest.raises(TypeError):
        PatternSet([5])


def test_equality_and_hash():
    assert PatternSet([b"a", b"b"]) == PatternSet([b"a", b"b"])
    assert PatternSet([b"a", b"b"]) != PatternSet([b"b", b"a"])
    assert hash(PatternSet([b"a"])) == hash(PatternSet([b"a"]))


def test_parse_lf_lines():
    ps = parse_pattern_file(b"AB\nABG\nBEDE\nED\n")
    assert list(ps) == [b"AB", b"ABG", b"BEDE", b"ED"]


def test_parse_crlf_lines():
    ps = parse_pattern_file(b"AB\r\nED\r\n")
    assert list(ps) == [b"AB", b"ED"]


def test_parse_final_line_without_terminator():
    ps = parse_pattern_file(b"AB\nED")
    assert list(ps) == [b"AB", b"ED"]


def test_parse_rejects_empty_line():
    with pytest.raises(InvalidPatternError, match="line 2"):
        parse_pattern_file(b"AB\n\nED\n")
    # a CRLF-only line is an empty pattern too
    with pytest.raises(InvalidPatternError):
        parse_pattern_file(b"AB\n\r\n")


def test_parse_rejects_empty_file():
    with pytest.raises(InvalidPatternError):
        parse_pattern_file(b"")


def test_file_round_trip(tmp_path):
    path = tmp_path / "patterns.txt"
    ps = PatternSet([b"AB", b"ABG", b"BEDE", b"ED"])
    write_pattern_file(ps, path)
    assert path.read_bytes() == b"AB\nABG\nBEDE\nED\n"
    assert read_pattern_file(path) == ps


def test_write_rejects_terminator_bytes(tmp_path):
    with pytest.raises(InvalidPatternError):
        write_pattern_file(PatternSet([b"a\nb"]), tmp_path / "p.txt")
    with pytest.raises(InvalidPatternError):
        write_pattern_file(PatternSet([b"a\rb"]), tmp_path / "p.txt")
