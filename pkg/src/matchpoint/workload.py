"""Benchmark workload generation: repeated-alphabet texts and permutation patterns.

Texts are the lowercase English alphabet repeated and truncated to an exact
byte size. Pattern sets consist of the identity alphabet (so the workload
always contains real matches) plus distinct random permutations of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .patterns import PatternSet

ALPHABET = b"abcdefghijklmnopqrstuvwxyz"

# Generator identity, recorded so sweeps are reproducible across machines:
# CPython Mersenne Twister seeded with the workload seed, driving an
# explicit Fisher-Yates shuffle.
RNG_ALGORITHM = "mt19937-fisher-yates"


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters pinning one benchmark input."""

    text_size: int
    pattern_count: int
    seed: int

    def __post_init__(self) -> None:
        if self.text_size < 0:
            raise ValueError("text_size must be >= 0")
        if self.pattern_count < 1:
            raise ValueError("pattern_count must be >= 1")

    def materialize(self) -> tuple[bytes, PatternSet]:
        return gen_text(self.text_size), gen_patterns(self.pattern_count, self.seed)


def gen_text(size: int) -> bytes:
    """Alphabet repeated and truncated to exactly `size` bytes."""
    if size < 0:
        raise ValueError("size must be >= 0")
    reps = size // len(ALPHABET) + 1
    return (ALPHABET * reps)[:size]


def _shuffled_alphabet(rng: random.Random) -> bytes:
    letters = bytearray(ALPHABET)
    for i in range(len(letters) - 1, 0, -1):
        j = rng.randrange(i + 1)
        letters[i], letters[j] = letters[j], letters[i]
    return bytes(letters)


def gen_patterns(count: int, seed: int) -> PatternSet:
    """Identity alphabet as pattern 0, then `count - 1` distinct permutations.

    Draws come from a generator seeded with `seed`, so the same seed always
    yields the same set; a permutation colliding with an earlier one is
    simply redrawn.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    patterns = [ALPHABET]
    seen = {ALPHABET}
    while len(patterns) < count:
        perm = _shuffled_alphabet(rng)
        if perm not in seen:
            seen.add(perm)
            patterns.append(perm)
    return PatternSet(patterns)
