"""Censoring coders for integer sequences over an unbounded alphabet.

A symbol above the position's cutoff is censored: the escape symbol 0 is
arithmetic-coded in its place under an adaptive Jeffreys (add-1/2) model, and
the symbol's value is shipped separately with an Elias delta code. Two cutoff
policies are provided:

* fixed schedule  K_i = floor((4 * c_env * i / (alpha - 1))**(1/alpha)),
  grown as the position i advances;
* adaptive        a constant cutoff ceil(mu * Z_n), where Z_n is the number
  of distinct symbols in the input (two-pass).

Container layout (all multi-byte header fields big-endian):

    "ENVC" | version=0x01 | mode (0x00 fixed, 0x01 adaptive)
    mode params as IEEE-754 doubles: alpha, c_env (fixed) or mu (adaptive)
    then a bit stream: Elias(n+1), [adaptive: Elias(cutoff+1)],
    Elias(|C1|_bits + 1), C1 payload, C2 payload; zero-padded to a byte.

The input alphabet is {1, 2, ...}; 0 is reserved as the in-model escape.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from . import backend
from .bitio import BitCursor, BitString, BitWriter, elias_decode, elias_encode
from .errors import DecodeError, DomainError, FormatError, ResourceLimitError

__all__ = [
    "CodecParams",
    "CodeLengthReport",
    "cutoff_schedule",
    "encode",
    "decode",
    "codelength_report",
]

MAGIC = b"ENVC"
VERSION = 1
MODE_FIXED = 0x00
MODE_ADAPTIVE = 0x01

MAX_SEQUENCE_LENGTH = 1 << 30  # keeps doubled-count totals below 2^32
MAX_CUTOFF = 1 << 25  # guards the per-slot count allocation


@dataclass(frozen=True)
class CodecParams:
    """Cutoff policy: mode "fixed" uses (alpha, c_env), mode "adaptive" uses mu."""

    mode: str
    alpha: float | None = None
    c_env: float | None = None
    mu: float | None = None

    def __post_init__(self):
        if self.mode == "fixed":
            if self.alpha is None or not (math.isfinite(self.alpha) and self.alpha > 1.0):
                raise DomainError("fixed schedule requires finite alpha > 1")
            if self.c_env is None or not (math.isfinite(self.c_env) and self.c_env > 0.0):
                raise DomainError("fixed schedule requires finite c_env > 0")
        elif self.mode == "adaptive":
            if self.mu is None or not (math.isfinite(self.mu) and self.mu > 0.0):
                raise DomainError("adaptive mode requires finite mu > 0")
        else:
            raise DomainError(f"unknown codec mode: {self.mode!r}")

    @classmethod
    def fixed_schedule(cls, alpha: float, c_env: float) -> "CodecParams":
        return cls(mode="fixed", alpha=float(alpha), c_env=float(c_env))

    @classmethod
    def adaptive(cls, mu: float = 1.0) -> "CodecParams":
        return cls(mode="adaptive", mu=float(mu))


@dataclass(frozen=True)
class CodeLengthReport:
    """Exact bit accounting of one encoded container.

    total = header + C1 + C2. header_bits covers the container framing
    (magic, version, params, the n and |C1| fields) plus, in adaptive mode,
    the transmitted cutoff; cutoff_field_bits isolates the latter so that
    code_bits = cutoff declaration + C1 + C2 measures the code proper with
    no file-format framing in it.
    """

    total_bits: int
    header_bits: int
    c1_bits: int
    c2_bits: int
    censored_count: int
    cutoff_field_bits: int = 0

    @property
    def container_bytes(self) -> int:
        return (self.total_bits + 7) // 8

    @property
    def code_bits(self) -> int:
        return self.cutoff_field_bits + self.c1_bits + self.c2_bits


def cutoff_schedule(params: CodecParams, i: int) -> int:
    """Fixed-schedule cutoff at position i >= 1 (exact integer floor)."""
    if params.mode != "fixed":
        raise DomainError("cutoff_schedule applies to the fixed mode only")
    if i < 1:
        raise DomainError("positions are 1-based")
    return _floor_root(4.0 * params.c_env * i / (params.alpha - 1.0), params.alpha)


def _floor_root(base: float, alpha: float) -> int:
    """floor(base**(1/alpha)) with an integer-root check at the boundaries."""
    root = base ** (1.0 / alpha)
    if not math.isfinite(root) or root > 1e18:
        raise ResourceLimitError("cutoff overflows for these schedule parameters")
    k = int(root)
    while (k + 1.0) ** alpha <= base:
        k += 1
    while k >= 1 and k**alpha > base:
        k -= 1
    return k


def _schedule_array(params: CodecParams, n: int) -> np.ndarray:
    base = 4.0 * params.c_env * np.arange(1, n + 1, dtype=np.float64) / (params.alpha - 1.0)
    if n and (not math.isfinite(float(base[-1])) or float(base[-1]) ** (1.0 / params.alpha) > 1e18):
        raise ResourceLimitError("cutoff overflows for these schedule parameters")
    k = np.floor(base ** (1.0 / params.alpha)).astype(np.int64)
    # same boundary correction as the scalar path (converges in <= 2 rounds)
    while True:
        m = np.power(k + 1.0, params.alpha) <= base
        if not m.any():
            break
        k[m] += 1
    while True:
        m = (k >= 1) & (np.power(k.astype(np.float64), params.alpha) > base)
        if not m.any():
            break
        k[m] -= 1
    return k


def _cutoffs_for(xs: np.ndarray, params: CodecParams) -> tuple[np.ndarray, int | None]:
    n = len(xs)
    if params.mode == "fixed":
        cutoffs = _schedule_array(params, n)
        khat = None
    else:
        zn = len(np.unique(xs)) if n else 0
        khat = int(math.ceil(params.mu * zn))
        cutoffs = np.full(n, khat, dtype=np.int64)
    if n and int(cutoffs[-1]) > MAX_CUTOFF:
        raise ResourceLimitError(
            f"cutoff {int(cutoffs[-1])} exceeds the per-slot allocation limit {MAX_CUTOFF}"
        )
    return cutoffs, khat


def _validate_input(seq) -> np.ndarray:
    arr = np.asarray(seq)
    if len(arr) == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.dtype.kind == "f":
        raise DomainError("symbols must be integers")
    try:
        xs = arr.astype(np.int64)
    except (OverflowError, TypeError, ValueError) as exc:
        raise DomainError(f"symbols must fit a 64-bit integer: {exc}") from exc
    if xs.ndim != 1:
        raise DomainError("input must be a flat sequence of integers")
    if len(xs) >= MAX_SEQUENCE_LENGTH:
        raise ResourceLimitError(f"sequence length limit is {MAX_SEQUENCE_LENGTH}")
    if len(xs) and int(xs.min()) < 1:
        raise DomainError("symbols must be >= 1 (0 is the reserved escape)")
    return xs


def _header_bytes(params: CodecParams) -> bytes:
    if params.mode == "fixed":
        return MAGIC + bytes([VERSION, MODE_FIXED]) + struct.pack(">dd", params.alpha, params.c_env)
    return MAGIC + bytes([VERSION, MODE_ADAPTIVE]) + struct.pack(">d", params.mu)


def _build(seq, params: CodecParams) -> tuple[bytes, CodeLengthReport]:
    xs = _validate_input(seq)
    n = len(xs)
    cutoffs, khat = _cutoffs_for(xs, params)
    if n:
        c2, censored = backend.encode_stream(xs, cutoffs)
    else:
        c2, censored = b"", []  # empty input carries no coded stream at all

    c1w = BitWriter()
    for v in censored:
        c1w.write_bitstring(elias_encode(int(v)))
    c1 = c1w.getvalue()

    w = BitWriter()
    w.write_bytes(_header_bytes(params))
    w.write_bitstring(elias_encode(n + 1))
    cutoff_field_bits = 0
    if params.mode == "adaptive":
        cutoff_field = elias_encode(khat + 1)
        cutoff_field_bits = len(cutoff_field)
        w.write_bitstring(cutoff_field)
    w.write_bitstring(elias_encode(len(c1) + 1))
    header_bits = w.bit_length  # fixed fields + length prefixes
    w.write_bitstring(c1)
    w.write_bytes(c2)
    total_bits = w.bit_length
    report = CodeLengthReport(
        total_bits=total_bits,
        header_bits=header_bits,
        c1_bits=len(c1),
        c2_bits=8 * len(c2),
        censored_count=len(censored),
        cutoff_field_bits=cutoff_field_bits,
    )
    return w.getvalue().to_bytes(), report


def encode(seq, params: CodecParams) -> bytes:
    """Encode a sequence of positive integers into a container."""
    return _build(seq, params)[0]


def codelength_report(seq, params: CodecParams) -> CodeLengthReport:
    """Bit accounting for encode(seq, params): total = header + C1 + C2."""
    return _build(seq, params)[1]


def decode(blob: bytes) -> list[int]:
    """Invert encode(); raises FormatError/DecodeError on bad containers."""
    if len(blob) < 6 or blob[:4] != MAGIC:
        raise FormatError("not an ENVC container (bad magic)")
    if blob[4] != VERSION:
        raise FormatError(f"unsupported container version {blob[4]}")
    mode = blob[5]
    if mode == MODE_FIXED:
        if len(blob) < 22:
            raise DecodeError("container truncated inside the header")
        alpha, c_env = struct.unpack(">dd", blob[6:22])
        try:
            params = CodecParams.fixed_schedule(alpha, c_env)
        except DomainError as exc:
            raise FormatError(f"invalid fixed-schedule parameters: {exc}") from exc
        offset = 22
    elif mode == MODE_ADAPTIVE:
        if len(blob) < 14:
            raise DecodeError("container truncated inside the header")
        (mu,) = struct.unpack(">d", blob[6:14])
        try:
            params = CodecParams.adaptive(mu)
        except DomainError as exc:
            raise FormatError(f"invalid adaptive parameters: {exc}") from exc
        offset = 14
    else:
        raise FormatError(f"unknown container mode byte {mode:#x}")

    bits = BitString.from_bytes(blob)
    cur = BitCursor(bits, 8 * offset)
    n = elias_decode(cur) - 1
    if n >= MAX_SEQUENCE_LENGTH:
        raise DecodeError(f"declared length {n} exceeds the limit {MAX_SEQUENCE_LENGTH}")
    khat = None
    if mode == MODE_ADAPTIVE:
        khat = elias_decode(cur) - 1
        if khat > MAX_CUTOFF:
            raise DecodeError(f"declared cutoff {khat} exceeds the limit {MAX_CUTOFF}")
    c1_bits = elias_decode(cur) - 1
    if c1_bits > cur.remaining:
        raise DecodeError("container truncated inside C1")
    c1_end = cur.position + c1_bits
    c1_values = []
    while cur.position < c1_end:
        c1_values.append(elias_decode(cur))
    if cur.position != c1_end:
        raise DecodeError("C1 payload does not end on a codeword boundary")
    c2 = bits.tail_bytes(c1_end)

    if mode == MODE_FIXED:
        cutoffs = _schedule_array(params, n)
        if n and int(cutoffs[-1]) > MAX_CUTOFF:
            raise ResourceLimitError(
                f"cutoff {int(cutoffs[-1])} exceeds the per-slot allocation limit {MAX_CUTOFF}"
            )
    else:
        cutoffs = np.full(n, khat, dtype=np.int64)
    xs, consumed = backend.decode_stream(c2, cutoffs, c1_values, n)
    if consumed != len(c1_values):
        raise DecodeError("C1 holds censored symbols the coded stream never used")
    return [int(v) for v in xs]
