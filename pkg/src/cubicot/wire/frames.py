"""Byte layout of protocol frames.

    magic (1 byte, 0x4B) | type (1 byte) | payload length (4 bytes, big-endian) | payload

Payloads are integer lists: a 2-byte count, then for each integer a 2-byte
length followed by its minimal big-endian bytes (zero is encoded as length 0).
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

from ..errors import BadMagic, FrameError, Oversize, Truncated, UnknownType

MAGIC = 0x4B
HEADER = struct.Struct(">BBI")
MAX_PAYLOAD = 1 << 24


class MsgType(enum.IntEnum):
    PUBKEY = 0x01
    CIPHER_RANKED = 0x02
    ACK_RANK = 0x03
    OKX_MSG = 0x04
    PARAMS = 0x05
    ERROR = 0x7F


@dataclass(frozen=True)
class Frame:
    msg_type: MsgType
    payload: bytes = b""

    @classmethod
    def of(cls, msg_type: MsgType, *values: int) -> "Frame":
        return cls(MsgType(msg_type), pack_ints(values))

    def ints(self) -> list[int]:
        return unpack_ints(self.payload)


def int_to_bytes(v: int) -> bytes:
    if v < 0:
        raise FrameError("only nonnegative integers can be framed")
    return v.to_bytes((v.bit_length() + 7) // 8, "big")


def pack_ints(values) -> bytes:
    values = list(values)
    if len(values) > 0xFFFF:
        raise Oversize("too many integers in one payload")
    out = [struct.pack(">H", len(values))]
    for v in values:
        raw = int_to_bytes(v)
        if len(raw) > 0xFFFF:
            raise Oversize("integer too large to frame")
        out.append(struct.pack(">H", len(raw)))
        out.append(raw)
    return b"".join(out)


def unpack_ints(payload: bytes) -> list[int]:
    if len(payload) < 2:
        raise Truncated("payload too short for integer count")
    (count,) = struct.unpack_from(">H", payload, 0)
    pos, values = 2, []
    for _ in range(count):
        if pos + 2 > len(payload):
            raise Truncated("payload ends inside an integer length")
        (size,) = struct.unpack_from(">H", payload, pos)
        pos += 2
        if pos + size > len(payload):
            raise Truncated("payload ends inside an integer")
        raw = payload[pos:pos + size]
        if raw[:1] == b"\x00":
            raise FrameError("integer encoding is not minimal")
        values.append(int.from_bytes(raw, "big"))
        pos += size
    if pos != len(payload):
        raise FrameError("trailing bytes after integer list")
    return values


def encode_frame(frame: Frame) -> bytes:
    if len(frame.payload) > MAX_PAYLOAD:
        raise Oversize(f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}")
    return HEADER.pack(MAGIC, int(frame.msg_type), len(frame.payload)) + frame.payload


def parse_header(header: bytes) -> tuple[MsgType, int]:
    """Validate a 6-byte header, returning the type and payload length."""
    if len(header) < HEADER.size:
        raise Truncated("incomplete frame header")
    magic, raw_type, length = HEADER.unpack_from(header)
    if magic != MAGIC:
        raise BadMagic(f"bad magic byte 0x{magic:02X}")
    try:
        msg_type = MsgType(raw_type)
    except ValueError:
        raise UnknownType(f"unknown message type 0x{raw_type:02X}") from None
    if length > MAX_PAYLOAD:
        raise Oversize(f"declared payload of {length} bytes exceeds {MAX_PAYLOAD}")
    return msg_type, length


def split_frame(data: bytes) -> tuple[Frame, bytes]:
    """Decode the first frame in ``data``; returns it and the unread remainder."""
    msg_type, length = parse_header(data)
    end = HEADER.size + length
    if len(data) < end:
        raise Truncated(f"frame needs {end} bytes, got {len(data)}")
    return Frame(msg_type, bytes(data[HEADER.size:end])), bytes(data[end:])


def decode_frame(data: bytes) -> Frame:
    frame, rest = split_frame(data)
    if rest:
        raise FrameError(f"{len(rest)} trailing bytes after frame")
    return frame


def describe(frame: Frame) -> str:
    """Human-readable one-liner, e.g. ``PUBKEY 31 5``."""
    try:
        body = " ".join(str(v) for v in frame.ints())
    except FrameError:
        body = frame.payload.hex()
    return f"{frame.msg_type.name} {body}".rstrip()
