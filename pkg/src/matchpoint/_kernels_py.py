"""Pure-Python matching kernels: the fallback when the extension is not built.

Same interface as the compiled module `_native`. Both operate on the flat
transition tables the machines carry; hot locals are bound up front because
these loops run once per text byte / start position.
"""

from __future__ import annotations

from bisect import bisect_left


def serial_scan(automaton, text: bytes) -> tuple[list[int], list[int]]:
    """Single left-to-right pass with failure fallback.

    Returns parallel (starts, pattern_ids) sequences, one entry per match
    occurrence, in emission order (ascending end position).
    """
    if not text:
        return [], []
    dense = automaton._dense
    dense_limit = automaton._dense_limit
    row_start = automaton._row_start
    row_byte = automaton._row_byte
    row_next = automaton._row_next
    fail = automaton._fail
    out_start = automaton._out_start
    out_id = automaton._out_id
    pat_len = automaton._pat_len

    starts: list[int] = []
    ids: list[int] = []
    state = 0
    for pos, byte in enumerate(text):
        while True:
            if state < dense_limit:
                nxt = dense[(state << 8) | byte]
            else:
                lo = row_start[state]
                hi = row_start[state + 1]
                i = bisect_left(row_byte, byte, lo, hi)
                nxt = row_next[i] if i < hi and row_byte[i] == byte else -1
            if nxt >= 0:
                state = nxt
                break
            if state == 0:
                break
            state = fail[state]
        j = out_start[state]
        end_j = out_start[state + 1]
        while j < end_j:
            pid = out_id[j]
            starts.append(pos + 1 - pat_len[pid])
            ids.append(pid)
            j += 1
    return starts, ids


def walk_block(trie, text: bytes, lo: int, hi: int, longest_only: bool) -> tuple[list[int], list[int]]:
    """Independent failure-less walks for every start position in [lo, hi).

    Each walk consumes transitions until the first miss or end of text.
    With `longest_only` every walk reports at most its deepest final state;
    otherwise every final state visited is reported.
    """
    if hi <= lo or not text:
        return [], []
    dense = trie._dense
    dense_limit = trie._dense_limit
    row_start = trie._row_start
    row_byte = trie._row_byte
    row_next = trie._row_next
    final = trie._final

    starts: list[int] = []
    ids: list[int] = []
    n = len(text)
    for s0 in range(lo, hi):
        state = 0
        best = -1
        pos = s0
        while pos < n:
            byte = text[pos]
            if state < dense_limit:
                nxt = dense[(state << 8) | byte]
            else:
                rlo = row_start[state]
                rhi = row_start[state + 1]
                i = bisect_left(row_byte, byte, rlo, rhi)
                nxt = row_next[i] if i < rhi and row_byte[i] == byte else -1
            if nxt < 0:
                break
            state = nxt
            pos += 1
            fid = final[state]
            if fid >= 0:
                if longest_only:
                    best = fid
                else:
                    starts.append(s0)
                    ids.append(fid)
        if longest_only and best >= 0:
            starts.append(s0)
            ids.append(best)
    return starts, ids
