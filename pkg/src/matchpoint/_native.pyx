# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
# distutils: language = c++
"""Compiled matching kernels.

Mirrors `_kernels_py`: a serial scan with failure fallback and a block of
independent failure-less walks. Both release the GIL, so the worker pool
gets real parallelism out of `walk_block`.
"""

from cpython cimport array as carray
from libc.string cimport memcpy
from libcpp.vector cimport vector

import array


cdef carray.array _INT_TEMPLATE = array.array("i")


cdef inline int _step(int state, int byte, int dense_limit,
                      const int[:] dense, const int[:] row_start,
                      const unsigned char[:] row_byte,
                      const int[:] row_next) noexcept nogil:
    cdef int lo, hi, mid
    if state < dense_limit:
        return dense[(state << 8) | byte]
    lo = row_start[state]
    hi = row_start[state + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if row_byte[mid] < byte:
            lo = mid + 1
        else:
            hi = mid
    if lo < row_start[state + 1] and row_byte[lo] == byte:
        return row_next[lo]
    return -1


cdef _to_arrays(vector[int]& starts, vector[int]& ids):
    cdef Py_ssize_t m = <Py_ssize_t>starts.size()
    cdef carray.array out_s = carray.clone(_INT_TEMPLATE, m, False)
    cdef carray.array out_i = carray.clone(_INT_TEMPLATE, m, False)
    if m > 0:
        memcpy(out_s.data.as_ints, starts.data(), m * sizeof(int))
        memcpy(out_i.data.as_ints, ids.data(), m * sizeof(int))
    return out_s, out_i


def serial_scan(automaton, text):
    """Single left-to-right pass with failure fallback; returns (starts, ids)."""
    if not text:
        return array.array("i"), array.array("i")
    cdef const unsigned char[:] t = text
    cdef int dense_limit = automaton._dense_limit
    cdef const int[:] dense = automaton._dense
    cdef const int[:] row_start = automaton._row_start
    cdef const unsigned char[:] row_byte = automaton._row_byte
    cdef const int[:] row_next = automaton._row_next
    cdef const int[:] fail = automaton._fail
    cdef const int[:] out_start = automaton._out_start
    cdef const int[:] out_id = automaton._out_id
    cdef const int[:] pat_len = automaton._pat_len

    cdef vector[int] starts
    cdef vector[int] ids
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t pos
    cdef int state = 0
    cdef int nxt, byte, pid, j
    with nogil:
        for pos in range(n):
            byte = t[pos]
            while True:
                nxt = _step(state, byte, dense_limit, dense, row_start, row_byte, row_next)
                if nxt >= 0:
                    state = nxt
                    break
                if state == 0:
                    break
                state = fail[state]
            for j in range(out_start[state], out_start[state + 1]):
                pid = out_id[j]
                starts.push_back(<int>(pos + 1) - pat_len[pid])
                ids.push_back(pid)
    return _to_arrays(starts, ids)


def walk_block(trie, text, Py_ssize_t lo, Py_ssize_t hi, bint longest_only):
    """Independent failure-less walks for start positions in [lo, hi)."""
    if hi <= lo or not text:
        return array.array("i"), array.array("i")
    cdef const unsigned char[:] t = text
    cdef int dense_limit = trie._dense_limit
    cdef const int[:] dense = trie._dense
    cdef const int[:] row_start = trie._row_start
    cdef const unsigned char[:] row_byte = trie._row_byte
    cdef const int[:] row_next = trie._row_next
    cdef const int[:] final = trie._final

    cdef vector[int] starts
    cdef vector[int] ids
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t s0, pos
    cdef int state, nxt, fid, best
    with nogil:
        for s0 in range(lo, hi):
            state = 0
            best = -1
            pos = s0
            while pos < n:
                nxt = _step(state, t[pos], dense_limit, dense, row_start, row_byte, row_next)
                if nxt < 0:
                    break
                state = nxt
                pos += 1
                fid = final[state]
                if fid >= 0:
                    if longest_only:
                        best = fid
                    else:
                        starts.push_back(<int>s0)
                        ids.push_back(fid)
            if longest_only and best >= 0:
                starts.push_back(<int>s0)
                ids.push_back(best)
    return _to_arrays(starts, ids)
