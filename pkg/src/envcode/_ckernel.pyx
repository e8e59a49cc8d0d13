# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the censoring coder's per-symbol loop.

Must stay bit-identical to envcode._pykernel: same doubled-count table
semantics, same 64-bit range coder (renorm floor 2^56, LZMA-style carry
pipeline). Prefix sums use a Fenwick tree so alphabet growth stays cheap.
"""

import numpy as np

from .errors import DecodeError

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 MASK64 = <u64>0xFFFFFFFFFFFFFFFF
cdef u64 TOP = (<u64>1) << 56
cdef u64 FFTOP = (<u64>0xFF) << 56


cdef inline void fen_add(i64* tree, int size, int slot, i64 delta) noexcept:
    cdef int i = slot + 1
    while i <= size:
        tree[i] += delta
        i += i & (-i)


cdef inline i64 fen_prefix(i64* tree, int i) noexcept:
    # sum of slots [0, i)
    cdef i64 s = 0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


cdef inline int fen_find(i64* tree, int size, int topstep, i64 target, i64* cum_lo) noexcept:
    # containing slot for cumulative offset `target`; also its prefix sum
    cdef int pos = 0
    cdef int step = topstep
    cdef i64 rem = target
    while step > 0:
        if pos + step <= size and tree[pos + step] <= rem:
            pos += step
            rem -= tree[pos]
        step >>= 1
    cum_lo[0] = target - rem
    return pos


cdef struct Enc:
    u128 low
    u64 rng
    u64 cache
    Py_ssize_t pending


cdef inline void enc_shift_low(Enc* e, bytearray out):
    cdef u64 carry
    if e.low < <u128>FFTOP or e.low > <u128>MASK64:
        carry = <u64>(e.low >> 64)
        out.append(<int>((e.cache + carry) & 0xFF))
        if e.pending:
            out.extend(bytes([<int>((0xFF + carry) & 0xFF)]) * e.pending)
            e.pending = 0
        e.cache = <u64>((e.low >> 56) & 0xFF)
    else:
        e.pending += 1
    e.low = (e.low << 8) & <u128>MASK64


cdef inline void enc_raw(Enc* e, bytearray out, u64 cum_lo, u64 weight, u64 total):
    cdef u64 r = e.rng // total
    e.low += <u128>(r * cum_lo)
    e.rng = r * weight
    while e.rng < TOP:
        enc_shift_low(e, out)
        e.rng <<= 8


def encode_stream(xs_in, cutoffs_in):
    """Compiled twin of _pykernel.encode_stream (no trace support)."""
    xs_arr = np.ascontiguousarray(xs_in, dtype=np.int64)
    cut_arr = np.ascontiguousarray(cutoffs_in, dtype=np.int64)
    cdef i64[::1] xs = xs_arr
    cdef i64[::1] cutoffs = cut_arr
    cdef Py_ssize_t n = xs_arr.shape[0]
    cdef int kmax = <int>cutoffs[n - 1] if n else 0

    w_arr = np.ones(kmax + 1, dtype=np.int64)
    tree_arr = np.zeros(kmax + 2, dtype=np.int64)
    cdef i64[::1] w = w_arr
    cdef i64[::1] tree = tree_arr
    cdef i64* wp = &w[0]
    cdef i64* tp = &tree[0]
    cdef int size = kmax + 1
    cdef int j
    for j in range(size):
        fen_add(tp, size, j, 1)

    cdef Enc e
    e.low = 0
    e.rng = MASK64
    e.cache = 0
    e.pending = 0
    out = bytearray()
    censored = []

    cdef Py_ssize_t t
    cdef int K = 0, s
    cdef i64 x, total, cum_lo, wt
    for t in range(n):
        while K < cutoffs[t]:
            K += 1
            fen_add(tp, size, 0, -(wp[K] - 1))
            wp[0] -= wp[K] - 1
        x = xs[t]
        total = 2 * t + K + 1
        if x <= K:
            s = <int>x
            cum_lo = fen_prefix(tp, s)
            wt = wp[s]
        else:
            s = 0
            cum_lo = 0
            wt = wp[0]
        enc_raw(&e, out, <u64>cum_lo, <u64>wt, <u64>total)
        if s == 0:
            censored.append(x)
            wp[0] += 2
            fen_add(tp, size, 0, 2)
        if x <= kmax:
            wp[<int>x] += 2
            fen_add(tp, size, <int>x, 2)

    # finish: round low up to a multiple of 2^56, flush cache and top byte
    cdef u128 pad = (<u128>TOP - (e.low % <u128>TOP)) % <u128>TOP
    e.low += pad
    enc_shift_low(&e, out)
    enc_shift_low(&e, out)
    return bytes(out), censored


def decode_stream(c2, cutoffs_in, c1_values, Py_ssize_t n):
    """Compiled twin of _pykernel.decode_stream."""
    cut_arr = np.ascontiguousarray(cutoffs_in, dtype=np.int64)
    c1_arr = np.ascontiguousarray(c1_values, dtype=np.int64) if len(c1_values) else np.zeros(0, dtype=np.int64)
    cdef i64[::1] cutoffs = cut_arr
    cdef const unsigned char[::1] data = c2
    cdef Py_ssize_t nbytes = data.shape[0]
    cdef int kmax = <int>cutoffs[n - 1] if n else 0

    w_arr = np.ones(kmax + 1, dtype=np.int64)
    tree_arr = np.zeros(kmax + 2, dtype=np.int64)
    cdef i64[::1] w = w_arr
    cdef i64[::1] tree = tree_arr
    cdef i64* wp = &w[0]
    cdef i64* tp = &tree[0]
    cdef int size = kmax + 1
    cdef int topstep = 1
    while topstep * 2 <= size:
        topstep *= 2
    cdef int j
    for j in range(size):
        fen_add(tp, size, j, 1)

    xs_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] xs = xs_arr
    cdef i64[::1] c1 = c1_arr
    cdef Py_ssize_t nc1 = c1_arr.shape[0]

    cdef u64 rng = MASK64
    cdef u64 code = 0
    cdef Py_ssize_t pos = 1  # skip the leading 0x00 cache byte
    cdef int b
    for j in range(8):
        b = data[pos] if pos < nbytes else 0
        code = (code << 8) | <u64>b
        pos += 1

    cdef Py_ssize_t t, ci = 0
    cdef int K = 0, s
    cdef i64 x, total, cum_lo, wt, target
    cdef u64 r
    for t in range(n):
        while K < cutoffs[t]:
            K += 1
            fen_add(tp, size, 0, -(wp[K] - 1))
            wp[0] -= wp[K] - 1
        total = 2 * t + K + 1
        r = rng // <u64>total
        target = <i64>(code // r)
        if target >= total:
            target = total - 1
        s = fen_find(tp, size, topstep, target, &cum_lo)
        if s > K:
            # only reachable on corrupt input; clamp to the escape slot
            s = 0
            cum_lo = 0
        wt = wp[s]
        code = code - r * <u64>cum_lo
        rng = r * <u64>wt
        while rng < TOP:
            b = data[pos] if pos < nbytes else 0
            pos += 1
            code = (code << 8) | <u64>b
            rng <<= 8
        if s == 0:
            if ci >= nc1:
                raise DecodeError("coded stream needs more censored symbols than C1 holds")
            x = c1[ci]
            ci += 1
            wp[0] += 2
            fen_add(tp, size, 0, 2)
        else:
            x = s
        if x <= kmax:
            wp[<int>x] += 2
            fen_add(tp, size, <int>x, 2)
        xs[t] = x
    return xs_arr, ci
