"""Pattern sets and the one-pattern-per-line file format."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator


class PatternSetError(ValueError):
    """Invalid pattern set construction or pattern file contents."""


class InvalidPatternError(PatternSetError):
    """An empty pattern, or no patterns at all."""


class DuplicatePatternError(PatternSetError):
    """Two patterns with identical bytes; their ids would alias silently."""


class PatternSet:
    """Ordered, duplicate-free collection of non-empty byte patterns.

    A pattern's id is its position in the set. Match events and automaton
    output sets refer to patterns by these ids, so construction rejects
    anything that would make the mapping ambiguous (duplicates) or useless
    (empty patterns).
    """

    __slots__ = ("_patterns",)

    def __init__(self, patterns: Iterable[bytes]) -> None:
        items = []
        for p in patterns:
            if not isinstance(p, (bytes, bytearray, memoryview)):
                raise TypeError(f"patterns must be bytes-like, got {type(p).__name__}")
            items.append(bytes(p))
        if not items:
            raise InvalidPatternError("pattern set must contain at least one pattern")
        seen: dict[bytes, int] = {}
        for idx, pat in enumerate(items):
            if not pat:
                raise InvalidPatternError(f"pattern {idx} is empty")
            if pat in seen:
                raise DuplicatePatternError(
                    f"duplicate pattern {pat!r} (ids {seen[pat]} and {idx})"
                )
            seen[pat] = idx
        self._patterns = tuple(items)

    @property
    def patterns(self) -> tuple[bytes, ...]:
        return self._patterns

    def __len__(self) -> int:
        return len(self._patterns)

    def __getitem__(self, pattern_id: int) -> bytes:
        return self._patterns[pattern_id]

    def __iter__(self) -> Iterator[bytes]:
        return iter(self._patterns)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternSet):
            return NotImplemented
        return self._patterns == other._patterns

    def __hash__(self) -> int:
        return hash(self._patterns)

    def __repr__(self) -> str:
        return f"PatternSet({list(self._patterns)!r})"


def parse_pattern_file(data: bytes) -> PatternSet:
    """Parse pattern-file bytes: one pattern per LF-terminated line.

    A line is the raw bytes up to the terminator; the LF and an optional
    preceding CR are excluded. A final line without a terminator still
    counts. Empty lines are rejected because they would encode an empty
    pattern.
    """
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    patterns = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw[:-1] if raw.endswith(b"\r") else raw
        if not line:
            raise InvalidPatternError(f"empty pattern at line {lineno}")
        patterns.append(line)
    if not patterns:
        raise InvalidPatternError("pattern file contains no patterns")
    return PatternSet(patterns)


def read_pattern_file(path: str | Path) -> PatternSet:
    return parse_pattern_file(Path(path).read_bytes())


def write_pattern_file(patterns: PatternSet, path: str | Path) -> None:
    """Write patterns one per line. Patterns containing LF or CR cannot be
    represented in this format and are rejected."""
    for pid, pat in enumerate(patterns):
        if b"\n" in pat or b"\r" in pat:
            raise InvalidPatternError(
                f"pattern {pid} contains a line terminator byte and cannot be written"
            )
    Path(path).write_bytes(b"".join(p + b"\n" for p in patterns))
