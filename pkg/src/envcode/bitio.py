"""Bit strings, bit cursors and the Elias delta code for positive integers.

Bit order is MSB-first everywhere: the first bit of a stream is the most
significant bit of the first byte.
"""

from __future__ import annotations

import math

from .errors import DecodeError, DomainError

__all__ = [
    "BitString",
    "BitWriter",
    "BitCursor",
    "elias_length_bound",
    "elias_encode",
    "elias_decode",
]


class BitString:
    """Immutable ordered bit sequence with an explicit bit length.

    Internally the bits are packed into a single int, first bit most
    significant, so concatenation is a shift-or and stays cheap.
    """

    __slots__ = ("_value", "_length")

    def __init__(self, value: int = 0, length: int = 0):
        if length < 0:
            raise DomainError("bit length must be non-negative")
        if value < 0 or value >> length:
            raise DomainError("value does not fit in the declared bit length")
        self._value = value
        self._length = length

    @classmethod
    def from_bits(cls, bits: str) -> "BitString":
        """Build from a literal like "0100"."""
        if bits and set(bits) - {"0", "1"}:
            raise DomainError("bit literals may contain only 0 and 1")
        return cls(int(bits, 2) if bits else 0, len(bits))

    @classmethod
    def from_bytes(cls, data: bytes, bit_length: int | None = None) -> "BitString":
        n = 8 * len(data) if bit_length is None else bit_length
        if n > 8 * len(data):
            raise DomainError("bit_length exceeds the data")
        value = int.from_bytes(data, "big") >> (8 * len(data) - n) if data else 0
        return cls(value, n)

    @property
    def value(self) -> int:
        return self._value

    def __len__(self) -> int:
        return self._length

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._value, self._length))

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString(
            (self._value << other._length) | other._value,
            self._length + other._length,
        )

    def bit(self, i: int) -> int:
        if not 0 <= i < self._length:
            raise IndexError("bit index out of range")
        return (self._value >> (self._length - 1 - i)) & 1

    def to01(self) -> str:
        return format(self._value, f"0{self._length}b") if self._length else ""

    def to_bytes(self) -> bytes:
        """Pack MSB-first, zero-padding the final partial byte."""
        nbytes = (self._length + 7) // 8
        return (self._value << (8 * nbytes - self._length)).to_bytes(nbytes, "big")

    def tail_bytes(self, position: int) -> bytes:
        """Bytes of the suffix starting at bit `position` (zero-padded)."""
        if not 0 <= position <= self._length:
            raise DomainError("position out of range")
        n = self._length - position
        mask = (1 << n) - 1
        return BitString(self._value & mask, n).to_bytes()

    def __repr__(self) -> str:
        shown = self.to01() if self._length <= 64 else self.to01()[:61] + "..."
        return f"BitString({shown!r}, len={self._length})"


class BitWriter:
    """Append-only builder; use getvalue() once at the end."""

    def __init__(self):
        self._value = 0
        self._length = 0

    def write(self, value: int, nbits: int) -> None:
        if nbits < 0 or value < 0 or value >> nbits:
            raise DomainError("value does not fit in nbits")
        self._value = (self._value << nbits) | value
        self._length += nbits

    def write_bitstring(self, bs: BitString) -> None:
        self._value = (self._value << len(bs)) | bs.value
        self._length += len(bs)

    def write_bytes(self, data: bytes) -> None:
        self._value = (self._value << (8 * len(data))) | int.from_bytes(data, "big")
        self._length += 8 * len(data)

    @property
    def bit_length(self) -> int:
        return self._length

    def getvalue(self) -> BitString:
        return BitString(self._value, self._length)


class BitCursor:
    """Monotone reader over a BitString; not thread-safe."""

    __slots__ = ("source", "position")

    def __init__(self, source: BitString, position: int = 0):
        if not 0 <= position <= len(source):
            raise DomainError("cursor position out of range")
        self.source = source
        self.position = position

    @property
    def remaining(self) -> int:
        return len(self.source) - self.position

    def read(self, nbits: int) -> int:
        if nbits > self.remaining:
            raise DecodeError("bit stream truncated")
        src = self.source
        out = (src.value >> (len(src) - self.position - nbits)) & ((1 << nbits) - 1)
        self.position += nbits
        return out

    def read_bit(self) -> int:
        return self.read(1)


def elias_length_bound(j: int) -> int:
    """Codelength accounting bound: floor(log2 j + 2 log2(1 + log2 j) + 1).

    An upper envelope of the true delta codeword length, used in redundancy
    accounting; it is not exact for every j (e.g. j=3 codes in 4 <= 5 bits).
    """
    if j < 1:
        raise DomainError("defined for positive integers only")
    lg = math.log2(j)
    return int(math.floor(lg + 2.0 * math.log2(1.0 + lg) + 1.0))


def elias_encode(j: int) -> BitString:
    """Elias delta codeword of j >= 1 (prefix-free).

    Layout: Elias gamma code of L = bit_length(j), then the L-1 low-order
    bits of j. Total length = (L-1) + 2*floor(log2 L) + 1.
    """
    if j < 1:
        raise DomainError("defined for positive integers only")
    nb = j.bit_length()
    lb = nb.bit_length()
    # gamma(nb): (lb-1) zeros then nb in lb bits; then j without its leading 1
    w = BitWriter()
    w.write(nb, lb + lb - 1)
    w.write(j & ((1 << (nb - 1)) - 1), nb - 1)
    return w.getvalue()


def elias_decode(cursor: BitCursor) -> int:
    """Inverse of elias_encode; advances the cursor by exactly one codeword."""
    zeros = 0
    while True:
        if cursor.remaining == 0:
            raise DecodeError("bit stream truncated inside an Elias codeword")
        if cursor.read_bit():
            break
        zeros += 1
        if zeros > 64:
            raise DecodeError("malformed Elias prefix (zero run too long)")
    nb = (1 << zeros) | cursor.read(zeros)
    return (1 << (nb - 1)) | cursor.read(nb - 1)
