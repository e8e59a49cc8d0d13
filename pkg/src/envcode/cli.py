"""Command-line front end.

Subcommands: encode, decode, bounds, simulate, bench. All randomness flows
through --seed (never the wall clock); CSV goes to stdout, logs to stderr.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 format/decode error,
4 precondition/validity error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import bounds as bnd
from . import censoring, envelopes, sources
from .errors import DecodeError, DomainError, EnvcodeError, ResourceLimitError

CSV_HEADER = "n,trials,mean_bits,std_bits,entropy_bits,mean_redundancy,bound_bits"

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DECODE = 3
EXIT_VALIDITY = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    p = _Parser(prog="envcode", description="Universal coding of integer sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a file of positive integers")
    enc.add_argument("input")
    enc.add_argument("output")
    enc.add_argument("--codec", choices=["fixed", "adaptive"], default="fixed")
    enc.add_argument("--alpha", type=float, default=2.0, help="fixed-schedule envelope exponent")
    enc.add_argument("--c-env", type=float, default=1.0, help="fixed-schedule envelope constant")
    enc.add_argument("--mu", type=float, default=1.0, help="adaptive cutoff multiplier")
    enc.add_argument("--binary", action="store_true", help="input is raw little-endian uint32")

    dec = sub.add_parser("decode", help="decode a container")
    dec.add_argument("input")
    dec.add_argument("output", nargs="?", help="default: stdout")
    dec.add_argument("--binary", action="store_true", help="write raw little-endian uint32")

    bo = sub.add_parser("bounds", help="evaluate theoretical bounds for an envelope")
    bo.add_argument("--envelope", choices=["powerlaw", "exponential", "finite", "table"], required=True)
    bo.add_argument("--alpha", type=float)
    bo.add_argument("--c-env", type=float)
    bo.add_argument("--m", type=int)
    bo.add_argument("--table", help="path to a 'k f(k)' table file")
    bo.add_argument("--n", type=int, required=True)
    bo.add_argument("--format", choices=["human", "csv"], default="human")

    for name in ("simulate", "bench"):
        sp = sub.add_parser(name, help="measure codelengths against entropy and a bound")
        sp.add_argument("--source", choices=["zipf", "geometric", "sparse", "uniform"], required=True)
        sp.add_argument("--alpha", type=float, default=2.0)
        sp.add_argument("--m", type=int, default=2, help="alphabet size for --source uniform")
        sp.add_argument("--codec", choices=["fixed", "adaptive"], default="fixed")
        sp.add_argument("--codec-alpha", type=float, default=None, help="default: --alpha")
        sp.add_argument("--c-env", type=float, default=1.0)
        sp.add_argument("--mu", type=float, default=1.0)
        sp.add_argument("--trials", type=int, default=10)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bound-bits", type=float, default=None, help="override the comparator column")
        if name == "simulate":
            sp.add_argument("--n", type=int, nargs="+", required=True)
        else:
            sp.add_argument("--n", type=int, required=True)
    return p


def _read_integers(path: str, binary: bool) -> np.ndarray:
    if binary:
        with open(path, "rb") as fh:
            return np.frombuffer(fh.read(), dtype="<u4").astype(np.int64)
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    return np.array([int(t) for t in tokens], dtype=np.int64) if tokens else np.zeros(0, np.int64)


def _codec_params(args) -> censoring.CodecParams:
    if args.codec == "fixed":
        alpha = getattr(args, "codec_alpha", None)
        if alpha is None:
            alpha = args.alpha
        return censoring.CodecParams.fixed_schedule(alpha, args.c_env)
    return censoring.CodecParams.adaptive(args.mu)


def _source_spec(args) -> sources.SourceSpec:
    if args.source == "zipf":
        return sources.SourceSpec.zipf(args.alpha, seed=args.seed)
    if args.source == "geometric":
        return sources.SourceSpec.geometric(args.alpha, seed=args.seed)
    if args.source == "sparse":
        return sources.SourceSpec.sparse_geometric(args.alpha, seed=args.seed)
    return sources.SourceSpec.finite_uniform(args.m, seed=args.seed)


def _default_bound(args, params, n: int) -> float:
    if args.bound_bits is not None:
        return args.bound_bits
    if params.mode == "fixed":
        a, c = params.alpha, params.c_env
        return (4.0 * c * n / (a - 1.0)) ** (1.0 / a) * math.log2(n)
    return math.nan


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _cmd_encode(args) -> int:
    xs = _read_integers(args.input, args.binary)
    blob = censoring.encode(xs, _codec_params(args))
    with open(args.output, "wb") as fh:
        fh.write(blob)
    print(f"encoded {len(xs)} symbols into {len(blob)} bytes", file=sys.stderr)
    return 0


def _cmd_decode(args) -> int:
    with open(args.input, "rb") as fh:
        blob = fh.read()
    xs = censoring.decode(blob)
    if args.binary:
        payload = np.asarray(xs, dtype="<u4").tobytes()
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
    else:
        text = "\n".join(str(v) for v in xs)
        if text:
            text += "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def _bounds_rows(args) -> list[bnd.BoundReport]:
    n = args.n
    if args.envelope == "powerlaw":
        if args.alpha is None or args.c_env is None:
            raise _UsageError("powerlaw bounds need --alpha and --c-env")
        env = envelopes.PowerLawEnvelope(args.alpha, args.c_env)
        lo, up = bnd.powerlaw_bounds(args.alpha, args.c_env, n)
        rows = [lo, up]
    elif args.envelope == "exponential":
        if args.alpha is None or args.c_env is None:
            raise _UsageError("exponential bounds need --alpha and --c-env")
        env = envelopes.ExponentialEnvelope(args.alpha, args.c_env)
        lo, up = bnd.exponential_bounds(args.alpha, args.c_env, n)
        rows = [lo, up]
    elif args.envelope == "finite":
        if args.m is None:
            raise _UsageError("finite bounds need --m")
        env = envelopes.FiniteUniformEnvelope(args.m)
        rows = []
    else:
        if not args.table:
            raise _UsageError("table bounds need --table")
        env = envelopes.load_table_envelope(args.table)
        rows = []
    rows.append(bnd.regret_upper_bound(env, n))
    dp = bnd.search_desperate_params(env, n)
    if dp is not None:
        rows.append(bnd.desperate_lower_bound(env, n, dp))
    return rows


def _cmd_bounds(args) -> int:
    rows = _bounds_rows(args)
    if args.format == "csv":
        print("name,value_bits,valid,message")
        for r in rows:
            msg = "; ".join(r.messages)
            print(f'{r.name},{_fmt(r.value)},{int(r.valid)},"{msg}"')
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            flag = "" if r.valid else "  [invalid: " + "; ".join(r.messages) + "]"
            print(f"{r.name:<{width}}  {_fmt(r.value):>16}{flag}")
    return 0


def _cmd_simulate(args, n_values) -> int:
    spec = _source_spec(args)
    params = _codec_params(args)
    print(CSV_HEADER)
    for n in n_values:
        rep = sources.empirical_redundancy(spec, params, n, args.trials, _default_bound(args, params, n))
        row = [
            str(rep.n),
            str(rep.trials),
            _fmt(rep.mean_bits),
            _fmt(rep.std_bits),
            _fmt(rep.entropy_bits),
            _fmt(rep.mean_redundancy),
            _fmt(rep.bound_bits) if not math.isnan(rep.bound_bits) else "nan",
        ]
        print(",".join(row))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "encode":
            return _cmd_encode(args)
        if args.command == "decode":
            return _cmd_decode(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "simulate":
            return _cmd_simulate(args, args.n)
        return _cmd_simulate(args, [args.n])
    except _UsageError as exc:
        print(f"envcode: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"envcode: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DecodeError as exc:  # includes FormatError
        print(f"envcode: decode error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except (DomainError, ResourceLimitError, ValueError) as exc:
        print(f"envcode: invalid request: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except EnvcodeError as exc:
        print(f"envcode: error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY


if __name__ == "__main__":
    sys.exit(main())
