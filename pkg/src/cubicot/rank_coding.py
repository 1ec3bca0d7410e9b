"""Rank bits appended below a ciphertext's least significant bit.

Three roots use the prefix code read LSB-first::

    rank 1 -> "0"    frame = 2c
    rank 2 -> "01"   frame = 4c + 1   (LSB 1, then 0)
    rank 3 -> "11"   frame = 4c + 3

Four roots (the square transformation) use a fixed two-bit field, rank - 1.
Other root counts fall back to a fixed field of ``(a - 1).bit_length()`` bits.
"""

from __future__ import annotations

from .errors import BadRank


def encode_rank3(c: int, rank: int) -> int:
    if c < 0:
        raise ValueError("ciphertext must be nonnegative")
    if rank == 1:
        return c << 1
    if rank == 2:
        return (c << 2) | 0b01
    if rank == 3:
        return (c << 2) | 0b11
    raise BadRank(f"rank must be 1, 2 or 3, got {rank}")


def decode_rank3(v: int) -> tuple[int, int]:
    if v < 0:
        raise ValueError("frame must be nonnegative")
    if v & 1 == 0:
        return v >> 1, 1
    if v & 2 == 0:
        return v >> 2, 2
    return v >> 2, 3


def encode_fixed(c: int, rank: int, width: int) -> int:
    if c < 0:
        raise ValueError("ciphertext must be nonnegative")
    if not 1 <= rank <= 1 << width:
        raise BadRank(f"rank {rank} does not fit in {width} bits")
    return (c << width) | (rank - 1)


def decode_fixed(v: int, width: int) -> tuple[int, int]:
    if v < 0:
        raise ValueError("frame must be nonnegative")
    return v >> width, (v & ((1 << width) - 1)) + 1


def encode_rank4(c: int, rank: int) -> int:
    return encode_fixed(c, rank, 2)


def decode_rank4(v: int) -> tuple[int, int]:
    return decode_fixed(v, 2)


def encode_rank(c: int, rank: int, a: int) -> int:
    """Frame ``c`` with a rank out of ``a`` possible roots."""
    if a == 3:
        return encode_rank3(c, rank)
    if not 1 <= rank <= a:
        raise BadRank(f"rank must be in [1, {a}], got {rank}")
    return encode_fixed(c, rank, (a - 1).bit_length())


def decode_rank(v: int, a: int) -> tuple[int, int]:
    if a == 3:
        return decode_rank3(v)
    c, rank = decode_fixed(v, (a - 1).bit_length())
    if rank > a:
        raise BadRank(f"decoded rank {rank} exceeds root count {a}")
    return c, rank


def rank_bits(rank: int) -> int:
    """Number of bits the three-root code appends for ``rank``."""
    if rank not in (1, 2, 3):
        raise BadRank(f"rank must be 1, 2 or 3, got {rank}")
    return 1 if rank == 1 else 2
