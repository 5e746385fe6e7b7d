"""Construction of the multi-pattern matching machines.

Two machines are built from the same trie skeleton:

* ``AcAutomaton`` is the classic Aho-Corasick machine: a trie of pattern
  prefixes plus, per state, a failure link (the state spelling the longest
  proper suffix of the current path that is itself a pattern prefix) and a
  failure-closed output set (every pattern ending at the state's path,
  including those inherited through the failure chain).
* ``FailurelessTrie`` is the same trie with no failure links at all. Each
  state only knows the pattern that ends exactly there. It supports
  independent walks restarted at every text position, which is what the
  data-parallel engine runs.

States are numbered canonically: breadth-first from the root with ties
broken by ascending byte. Building from a permuted pattern list therefore
yields the identical structure (up to the pattern-id permutation), which
lets tests pin exact state numbers.

Transitions are stored hybrid: states at depth 0 and 1 carry a dense
256-entry row (root transitions are the hot path of the serial scan),
deeper states carry sorted (byte, next-state) pairs, laid out in flat
arrays so the compiled kernels can walk them without touching Python
objects.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left
from collections import deque
from typing import Iterator

from .patterns import PatternSet

# Depth up to which states get a dense 256-entry transition row.
_DENSE_DEPTH = 1


class _Machine:
    """Shared trie skeleton: canonical state numbering and transition lookup."""

    def __init__(
        self,
        patterns: PatternSet,
        dense_limit: int,
        dense: array,
        row_start: array,
        row_byte: array,
        row_next: array,
        depths: array,
        pat_len: array,
    ) -> None:
        self.patterns = patterns
        self.state_count = len(depths)
        self._dense_limit = dense_limit
        self._dense = dense
        self._row_start = row_start
        self._row_byte = row_byte
        self._row_next = row_next
        self._depth = depths
        self._pat_len = pat_len

    @property
    def pattern_count(self) -> int:
        return len(self.patterns)

    def depth(self, state: int) -> int:
        """Length of the byte string spelling the root-to-state path."""
        return self._depth[state]

    def goto(self, state: int, byte: int) -> int | None:
        """Next state on `byte`, or None when the trie has no transition."""
        if not 0 <= state < self.state_count:
            raise IndexError(f"state {state} out of range")
        if not 0 <= byte <= 255:
            raise ValueError(f"byte value {byte} out of range")
        if state < self._dense_limit:
            nxt = self._dense[(state << 8) | byte]
        else:
            lo = self._row_start[state]
            hi = self._row_start[state + 1]
            i = bisect_left(self._row_byte, byte, lo, hi)
            nxt = self._row_next[i] if i < hi and self._row_byte[i] == byte else -1
        return None if nxt < 0 else nxt

    def transitions(self, state: int) -> Iterator[tuple[int, int]]:
        """Yield (byte, next_state) pairs in ascending byte order."""
        for i in range(self._row_start[state], self._row_start[state + 1]):
            yield self._row_byte[i], self._row_next[i]

    def state_of(self, word: bytes) -> int | None:
        """State spelled by `word` from the root, or None if not a prefix."""
        state = 0
        for byte in word:
            nxt = self.goto(state, byte)
            if nxt is None:
                return None
            state = nxt
        return state

    def __repr__(self) -> str:
        return f"<{type(self).__name__} states={self.state_count} patterns={self.pattern_count}>"


class FailurelessTrie(_Machine):
    """Pattern-prefix trie without failure links.

    `final_ids(s)` holds the pattern whose full byte string spells the
    root-to-s path (at most one, since duplicate patterns are rejected).
    Use `build_trie` to construct.
    """

    def __init__(self, *, final: array, **kwargs) -> None:
        super().__init__(**kwargs)
        self._final = final

    def final_ids(self, state: int) -> frozenset[int]:
        fid = self._final[state]
        return frozenset() if fid < 0 else frozenset((fid,))


class AcAutomaton(_Machine):
    """Aho-Corasick machine: trie plus failure links and output sets.

    Use `build_automaton` (or the staged `build_failure` / `build_output`)
    to construct.
    """

    def __init__(self, *, fail: array, out_start: array, out_id: array, **kwargs) -> None:
        super().__init__(**kwargs)
        self._fail = fail
        self._out_start = out_start
        self._out_id = out_id

    def failure(self, state: int) -> int:
        if not 0 <= state < self.state_count:
            raise IndexError(f"state {state} out of range")
        return self._fail[state]

    def outputs(self, state: int) -> frozenset[int]:
        return frozenset(self._out_id[self._out_start[state] : self._out_start[state + 1]])


def build_trie(patterns: PatternSet) -> FailurelessTrie:
    """Build the failure-less trie over all pattern prefixes.

    The resulting state numbering is canonical (BFS, byte-ascending), so the
    structure does not depend on pattern insertion order.
    """
    if not isinstance(patterns, PatternSet):
        patterns = PatternSet(patterns)

    # Raw trie keyed by insertion order; renumbered canonically below.
    children: list[dict[int, int]] = [{}]
    depths = [0]
    final = [-1]
    for pid, pat in enumerate(patterns):
        node = 0
        for byte in pat:
            nxt = children[node].get(byte)
            if nxt is None:
                children.append({})
                depths.append(depths[node] + 1)
                final.append(-1)
                nxt = len(children) - 1
                children[node][byte] = nxt
            node = nxt
        final[node] = pid

    order: list[int] = []
    queue = deque([0])
    while queue:
        old = queue.popleft()
        order.append(old)
        for byte in sorted(children[old]):
            queue.append(children[old][byte])
    remap = {old: new for new, old in enumerate(order)}

    n = len(order)
    row_start = array("i", [0])
    row_byte = array("B")
    row_next = array("i")
    for old in order:
        for byte in sorted(children[old]):
            row_byte.append(byte)
            row_next.append(remap[children[old][byte]])
        row_start.append(len(row_byte))
    new_depth = array("i", (depths[old] for old in order))
    new_final = array("i", (final[old] for old in order))

    # BFS numbering puts the root and all depth-1 states first, so the dense
    # rows occupy a contiguous id prefix.
    dense_limit = 1 + sum(1 for s in range(n) if new_depth[s] == 1)
    dense = array("i", [-1]) * (dense_limit * 256)
    for s in range(dense_limit):
        for i in range(row_start[s], row_start[s + 1]):
            dense[(s << 8) | row_byte[i]] = row_next[i]

    return FailurelessTrie(
        final=new_final,
        patterns=patterns,
        dense_limit=dense_limit,
        dense=dense,
        row_start=row_start,
        row_byte=row_byte,
        row_next=row_next,
        depths=new_depth,
        pat_len=array("i", (len(p) for p in patterns)),
    )


def build_failure(trie: FailurelessTrie) -> AcAutomaton:
    """Attach failure links to a trie, breadth-first from the root.

    The returned automaton's output sets hold only the patterns ending
    exactly at each state; `build_output` closes them over failure links.
    """
    n = trie.state_count
    fail = array("i", [0]) * n
    # Canonical numbering is BFS order, so iterating ids ascending processes
    # every parent before its children.
    for u in range(n):
        for byte, v in trie.transitions(u):
            if u == 0:
                fail[v] = 0
                continue
            f = fail[u]
            while f != 0 and trie.goto(f, byte) is None:
                f = fail[f]
            cand = trie.goto(f, byte)
            fail[v] = cand if cand is not None else 0

    out_start = array("i", [0])
    out_id = array("i")
    for s in range(n):
        fid = trie._final[s]
        if fid >= 0:
            out_id.append(fid)
        out_start.append(len(out_id))

    return AcAutomaton(
        fail=fail,
        out_start=out_start,
        out_id=out_id,
        patterns=trie.patterns,
        dense_limit=trie._dense_limit,
        dense=trie._dense,
        row_start=trie._row_start,
        row_byte=trie._row_byte,
        row_next=trie._row_next,
        depths=trie._depth,
        pat_len=trie._pat_len,
    )


def build_output(automaton: AcAutomaton) -> AcAutomaton:
    """Close output sets over failure links: out(s) = own(s) ∪ out(fail(s)).

    Precomputing the closure keeps the match loop branch-light; no failure
    chain is walked at match time. Requires failure links to be in place.
    """
    n = automaton.state_count
    merged: list[tuple[int, ...]] = []
    for s in range(n):
        own = tuple(automaton._out_id[automaton._out_start[s] : automaton._out_start[s + 1]])
        if s == 0:
            merged.append(own)
            continue
        inherited = merged[automaton._fail[s]]
        if not inherited:
            merged.append(own)
        elif not own:
            merged.append(inherited)
        else:
            merged.append(tuple(sorted({*own, *inherited})))

    out_start = array("i", [0])
    out_id = array("i")
    for ids in merged:
        out_id.extend(ids)
        out_start.append(len(out_id))

    return AcAutomaton(
        fail=automaton._fail,
        out_start=out_start,
        out_id=out_id,
        patterns=automaton.patterns,
        dense_limit=automaton._dense_limit,
        dense=automaton._dense,
        row_start=automaton._row_start,
        row_byte=automaton._row_byte,
        row_next=automaton._row_next,
        depths=automaton._depth,
        pat_len=automaton._pat_len,
    )


def build_automaton(patterns: PatternSet) -> AcAutomaton:
    """Build the complete Aho-Corasick machine from a pattern set."""
    return build_output(build_failure(build_trie(patterns)))
