"""Pure-Python/numpy kernel for the censoring coder's per-symbol loop.

Semantics contract shared with the compiled kernel (envcode._ckernel):

* `w` holds doubled counts (2*count + 1) for every slot 0..K_max, slot 0 being
  the escape; all slots start at 1 (the Jeffreys 1/2).
* Every occurrence of x adds 2 to w[x] (tracked even while x is above the
  cutoff, so the transfer sees the right count when x activates); every act of
  censoring adds 2 to w[0].
* When the cutoff grows past j, the transfer w[0] -= w[j] - 1 removes j's
  accumulated occurrences from the escape count.
* The table coded at step t (0-based) spans slots 0..K_t with total
  2*t + K_t + 1, which always equals sum(w[:K_t+1]).

Both kernels must produce bit-identical streams; they consume identical
integer tables and the same range-coder arithmetic.
"""

from __future__ import annotations

import numpy as np

from .coder import RangeDecoder, RangeEncoder
from .errors import DecodeError

__all__ = ["encode_stream", "decode_stream"]


def encode_stream(xs, cutoffs, trace=None):
    """Encode positive symbols xs under the per-position cutoffs.

    Returns (c2_payload_bytes, censored_symbols_in_order). `trace`, if given,
    collects (cutoff, escape_weight, total) per step for instrumentation.
    """
    n = len(xs)
    kmax = int(cutoffs[-1]) if n else 0
    w = np.ones(kmax + 1, dtype=np.int64)
    enc = RangeEncoder()
    censored = []
    K = 0
    for t in range(n):
        kt = int(cutoffs[t])
        while K < kt:
            K += 1
            w[0] -= w[K] - 1
        x = int(xs[t])
        total = 2 * t + K + 1
        cum = np.cumsum(w[: K + 1])
        s = x if x <= K else 0
        cum_lo = int(cum[s - 1]) if s else 0
        enc.encode_raw(cum_lo, int(w[s]), total)
        if trace is not None:
            trace.append((K, int(w[0]), total, int(cum[-1])))
        if s == 0:
            censored.append(x)
            w[0] += 2
        if x <= kmax:
            w[x] += 2
    return enc.finish(), censored


def decode_stream(c2, cutoffs, c1_values, n, trace=None):
    """Mirror of encode_stream; returns (symbols, censored_values_consumed)."""
    kmax = int(cutoffs[-1]) if n else 0
    w = np.ones(kmax + 1, dtype=np.int64)
    dec = RangeDecoder(c2)
    xs = np.empty(n, dtype=np.int64)
    K = 0
    ci = 0
    for t in range(n):
        kt = int(cutoffs[t])
        while K < kt:
            K += 1
            w[0] -= w[K] - 1
        total = 2 * t + K + 1
        cum = np.cumsum(w[: K + 1])
        target = dec.decode_target(total)
        s = int(np.searchsorted(cum, target, side="right"))
        cum_lo = int(cum[s - 1]) if s else 0
        dec.consume(cum_lo, int(w[s]))
        if trace is not None:
            trace.append((K, int(w[0]), total, int(cum[-1])))
        if s == 0:
            if ci >= len(c1_values):
                raise DecodeError("coded stream needs more censored symbols than C1 holds")
            x = int(c1_values[ci])
            ci += 1
            w[0] += 2
        else:
            x = s
        if x <= kmax:
            w[x] += 2
        xs[t] = x
    return xs, ci
