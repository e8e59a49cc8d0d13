"""Exact-integer adaptive range coder.

Realizes any sequence of integer-count conditional distributions within a
fixed overhead of the ideal codelength: for every coded stream

    8 * len(output) <= sum_t log2(total_t / weight_t) + 48 bits,

and the per-symbol excess over log2(total/weight) is below 2^-20 (the coder
keeps range/total >= 2^24 at all times for totals < 2^32).

Layout: 64-bit range renormalized byte-wise at 2^56, 64-bit low window with
LZMA-style cache/pending carry propagation. The first output byte is always
0x00 (the initial cache); the finisher rounds low up to a multiple of 2^56 so
the decoder can zero-pad past the end of the stream.
"""

from __future__ import annotations

from .errors import DecodeError, DomainError, ResourceLimitError

__all__ = ["FrequencyView", "RangeEncoder", "RangeDecoder", "MAX_TOTAL"]

_MASK64 = (1 << 64) - 1
_TOP = 1 << 56
_FFTOP = 0xFF << 56
MAX_TOTAL = (1 << 32) - 1


class FrequencyView:
    """Cumulative integer frequency table 0 = c_0 <= c_1 <= ... <= c_S = total."""

    __slots__ = ("_cum",)

    def __init__(self, cumulative):
        cum = tuple(int(c) for c in cumulative)
        if len(cum) < 2 or cum[0] != 0:
            raise DomainError("cumulative table must start at 0 and cover >= 1 symbol")
        if any(a > b for a, b in zip(cum, cum[1:])):
            raise DomainError("cumulative table must be non-decreasing")
        if cum[-1] <= 0:
            raise DomainError("total weight must be positive")
        if cum[-1] > MAX_TOTAL:
            raise ResourceLimitError(f"total {cum[-1]} exceeds the coder limit {MAX_TOTAL}")
        self._cum = cum

    @classmethod
    def from_weights(cls, weights) -> "FrequencyView":
        cum = [0]
        for w in weights:
            cum.append(cum[-1] + int(w))
        return cls(cum)

    @property
    def total(self) -> int:
        return self._cum[-1]

    @property
    def num_symbols(self) -> int:
        return len(self._cum) - 1

    def weight(self, s: int) -> int:
        return self._cum[s + 1] - self._cum[s]

    def cum_lo(self, s: int) -> int:
        return self._cum[s]

    def find(self, target: int) -> int:
        """Greatest s with cum_lo(s) <= target (binary search)."""
        lo, hi = 0, len(self._cum) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._cum[mid] <= target:
                lo = mid
            else:
                hi = mid
        return lo


class RangeEncoder:
    """Single-owner encoder state; call finish() exactly once."""

    def __init__(self):
        self._low = 0  # 64-bit window, may transiently carry into bit 64
        self._range = _MASK64
        self._cache = 0
        self._pending = 0  # deferred 0xFF bytes awaiting carry resolution
        self._out = bytearray()
        self._finished = False

    def _shift_low(self):
        low = self._low
        if low < _FFTOP or low > _MASK64:
            carry = low >> 64
            self._out.append((self._cache + carry) & 0xFF)
            if self._pending:
                fill = (0xFF + carry) & 0xFF
                self._out.extend(bytes([fill]) * self._pending)
                self._pending = 0
            self._cache = (low >> 56) & 0xFF
        else:
            self._pending += 1
        self._low = (low << 8) & _MASK64

    def encode_raw(self, cum_lo: int, weight: int, total: int) -> None:
        """Narrow the interval by the rational weight/total at offset cum_lo."""
        if self._finished:
            raise DomainError("encoder already finished")
        if weight <= 0:
            raise DomainError("cannot encode a zero-weight symbol")
        if total > MAX_TOTAL:
            raise ResourceLimitError(f"total {total} exceeds the coder limit {MAX_TOTAL}")
        r = self._range // total
        self._low += r * cum_lo
        self._range = r * weight
        while self._range < _TOP:
            self._shift_low()
            self._range <<= 8

    def encode(self, freq: FrequencyView, s: int) -> None:
        if not 0 <= s < freq.num_symbols:
            raise DomainError(f"symbol {s} outside the frequency table")
        self.encode_raw(freq.cum_lo(s), freq.weight(s), freq.total)

    def finish(self) -> bytes:
        """Flush carries and terminate; the decoder zero-pads past the end."""
        if not self._finished:
            # round low up to a multiple of 2^56 inside [low, low+range)
            self._low += (-self._low) % _TOP
            self._shift_low()
            self._shift_low()
            self._finished = True
        return bytes(self._out)

    @property
    def bit_length(self) -> int:
        return 8 * len(self._out)


class RangeDecoder:
    """Mirror of RangeEncoder over a byte payload; zero-pads past the end."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 1  # the leading 0x00 cache byte carries no information
        self._range = _MASK64
        self._r = 1
        code = 0
        for _ in range(8):
            code = (code << 8) | self._next_byte()
        self._code = code

    def _next_byte(self) -> int:
        if self._pos < len(self._data):
            b = self._data[self._pos]
            self._pos += 1
            return b
        return 0

    def decode_target(self, total: int) -> int:
        """Offset of the coded symbol within the current total (capped)."""
        if total <= 0 or total > MAX_TOTAL:
            raise DomainError("bad total")
        self._r = self._range // total
        target = self._code // self._r
        return total - 1 if target >= total else target

    def consume(self, cum_lo: int, weight: int) -> None:
        """Account for the symbol found at decode_target's offset."""
        # modular like the compiled kernel, so corrupt streams stay in sync
        self._code = (self._code - self._r * cum_lo) & _MASK64
        self._range = self._r * weight
        while self._range < _TOP:
            self._code = ((self._code << 8) | self._next_byte()) & _MASK64
            self._range <<= 8

    def decode(self, freq: FrequencyView) -> int:
        target = self.decode_target(freq.total)
        s = freq.find(target)
        w = freq.weight(s)
        if w <= 0:
            raise DecodeError("decoder landed on a zero-weight symbol")
        self.consume(freq.cum_lo(s), w)
        return s
