#!/usr/bin/env python3
"""Benchmark the compiled coding kernel against the pure-Python fallback.

Runs encode+decode over the same sampled streams with each backend forced via
ENVCODE_BACKEND, verifies the outputs are bit-identical, and prints a table
with throughput and speedup.

    python3 benchmarks/backend_bench.py --n 32768 --trials 5
"""

import argparse
import os
import time

import numpy as np

from envcode import backend
from envcode.censoring import CodecParams, decode, encode
from envcode.sources import SourceSpec, sample


def _run(name, streams, params):
    os.environ["ENVCODE_BACKEND"] = name
    blobs = []
    t0 = time.perf_counter()
    for xs in streams:
        blobs.append(encode(xs, params))
    t_enc = time.perf_counter() - t0
    t0 = time.perf_counter()
    for xs, blob in zip(streams, blobs):
        assert decode(blob) == [int(v) for v in xs]
    t_dec = time.perf_counter() - t0
    return blobs, t_enc, t_dec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=32768)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = SourceSpec.zipf(args.alpha, seed=args.seed)
    streams = [sample(spec, args.n, trial=t) for t in range(args.trials)]
    nsym = args.n * args.trials

    rows = []
    reference = None
    for name in backend.available_backends():
        for mode, params in [
            ("fixed", CodecParams.fixed_schedule(args.alpha, 1.0)),
            ("adaptive", CodecParams.adaptive(1.0)),
        ]:
            blobs, t_enc, t_dec = _run(name, streams, params)
            if reference is None:
                reference = {}
            key = mode
            if key in reference:
                assert blobs == reference[key], "backends disagree on the bitstream"
            else:
                reference[key] = blobs
            rows.append((name, mode, t_enc, t_dec, nsym / t_enc / 1e6, nsym / t_dec / 1e6))
    os.environ.pop("ENVCODE_BACKEND", None)

    print(f"zipf(alpha={args.alpha}), n={args.n}, trials={args.trials} "
          f"({nsym} symbols per direction)\n")
    print(f"{'backend':<10} {'codec':<9} {'enc s':>8} {'dec s':>8} {'enc Msym/s':>11} {'dec Msym/s':>11}")
    for name, mode, t_enc, t_dec, me, md in rows:
        print(f"{name:<10} {mode:<9} {t_enc:>8.3f} {t_dec:>8.3f} {me:>11.2f} {md:>11.2f}")

    by = {(r[0], r[1]): r for r in rows}
    if ("compiled", "fixed") in by and ("python", "fixed") in by:
        print()
        for mode in ("fixed", "adaptive"):
            c, p = by[("compiled", mode)], by[("python", mode)]
            print(f"speedup ({mode}): encode {p[2] / c[2]:.1f}x, decode {p[3] / c[3]:.1f}x")


if __name__ == "__main__":
    main()
