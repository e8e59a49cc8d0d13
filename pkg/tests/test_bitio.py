import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envcode.bitio import (
    BitCursor,
    BitString,
    BitWriter,
    elias_decode,
    elias_encode,
    elias_length_bound,
)
from envcode.errors import DecodeError, DomainError


def test_length_bound_examples():
    assert elias_length_bound(1) == 1
    assert elias_length_bound(2) == 4  # floor(1 + 2 + 1)
    assert elias_length_bound(8) == 8  # floor(3 + 2*log2(4) + 1)


def test_length_bound_rejects_zero():
    with pytest.raises(DomainError):
        elias_length_bound(0)


def test_encode_examples():
    assert elias_encode(1).to01() == "1"
    assert elias_encode(2).to01() == "0100"
    assert elias_encode(3).to01() == "0101"
    assert len(elias_encode(3)) == 4 <= elias_length_bound(3)


def test_encode_rejects_zero():
    with pytest.raises(DomainError):
        elias_encode(0)


def test_decode_examples():
    assert elias_decode(BitCursor(BitString.from_bits("1"))) == 1
    assert elias_decode(BitCursor(BitString.from_bits("0100"))) == 2


def test_decode_advances_exactly_one_codeword():
    cw = elias_encode(97)
    cur = BitCursor(cw + BitString.from_bits("101"))
    assert elias_decode(cur) == 97
    assert cur.position == len(cw)


def test_roundtrip_exhaustive_small():
    for j in range(1, 100_001):
        cur = BitCursor(elias_encode(j))
        assert elias_decode(cur) == j
        assert cur.remaining == 0


def test_roundtrip_spot_checks_large():
    for j in [10**5, 2**20, 2**20 - 1, 2**31 - 1, 2**40 + 12345]:
        assert elias_decode(BitCursor(elias_encode(j))) == j


def test_roundtrip_exhaustive_2_20():
    # the full stated range; kept separate so the quick range fails first
    for j in range(100_001, (1 << 20) + 1):
        assert elias_decode(BitCursor(elias_encode(j))) == j


def test_length_domination_up_to_16_bits():
    for j in range(1, 1 << 16):
        assert len(elias_encode(j)) <= elias_length_bound(j)


def test_prefix_freeness_up_to_16_bits():
    # a prefix pair must be adjacent once codewords are sorted as strings
    words = sorted(elias_encode(j).to01() for j in range(1, 1 << 16))
    for a, b in zip(words, words[1:]):
        assert not b.startswith(a)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=10**9), max_size=40))
def test_concatenated_decode(values):
    w = BitWriter()
    for v in values:
        w.write_bitstring(elias_encode(v))
    cur = BitCursor(w.getvalue())
    out = [elias_decode(cur) for _ in values]
    assert out == values
    assert cur.remaining == 0


def test_decode_errors():
    with pytest.raises(DecodeError):
        elias_decode(BitCursor(BitString.from_bits("000")))  # zeros to the end
    with pytest.raises(DecodeError):
        elias_decode(BitCursor(BitString.from_bits("001")))  # truncated payload
    with pytest.raises(DecodeError):
        elias_decode(BitCursor(BitString()))  # empty


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="01", max_size=64), st.text(alphabet="01", max_size=64), st.text(alphabet="01", max_size=64))
def test_concat_associative_and_length_additive(a, b, c):
    x, y, z = (BitString.from_bits(s) for s in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert len(x + y) == len(x) + len(y)


def test_bitstring_bytes_roundtrip():
    bs = BitString.from_bits("1011001110001")
    assert BitString.from_bytes(bs.to_bytes(), len(bs)) == bs
    assert bs.to_bytes() == bytes([0b10110011, 0b10001000])


def test_tail_bytes():
    bs = BitString.from_bits("11111111" + "10100000")
    assert bs.tail_bytes(8) == bytes([0b10100000])
    assert bs.tail_bytes(9) == bytes([0b01000000])


def test_cursor_bounds():
    bs = BitString.from_bits("10")
    cur = BitCursor(bs)
    assert cur.read(2) == 0b10
    with pytest.raises(DecodeError):
        cur.read(1)
