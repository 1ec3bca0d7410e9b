"""Frame transports: an in-memory duplex pair and one-session TCP connections."""

from __future__ import annotations

import queue
import socket

from ..errors import ConnectionClosed, ConnectionFailed
from .frames import HEADER, Frame, decode_frame, encode_frame, parse_header

DEFAULT_TIMEOUT = 30.0

_CLOSED = object()


class MemoryEndpoint:
    """One side of an in-memory pair. Frames cross as encoded bytes."""

    def __init__(self, inbox: queue.Queue, outbox: queue.Queue):
        self._inbox = inbox
        self._outbox = outbox
        self._closed = False

    def send(self, frame: Frame) -> None:
        if self._closed:
            raise ConnectionClosed("endpoint is closed")
        self._outbox.put(encode_frame(frame))

    def recv(self, timeout: float | None = DEFAULT_TIMEOUT) -> Frame:
        try:
            item = self._inbox.get(timeout=timeout)
        except queue.Empty:
            raise TimeoutError(f"no frame within {timeout} s") from None
        if item is _CLOSED:
            self._inbox.put(_CLOSED)
            raise ConnectionClosed("peer closed the connection")
        return decode_frame(item)

    def close(self) -> None:
        if not self._closed:
            self._closed = True
            self._outbox.put(_CLOSED)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def transport_pair() -> tuple[MemoryEndpoint, MemoryEndpoint]:
    a_to_b, b_to_a = queue.Queue(), queue.Queue()
    return MemoryEndpoint(b_to_a, a_to_b), MemoryEndpoint(a_to_b, b_to_a)


def parse_address(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not port.isdigit() or not 0 <= int(port) <= 65535:
        raise ValueError(f"address must look like host:port, got {addr!r}")
    return host or "127.0.0.1", int(port)


class TcpEndpoint:
    def __init__(self, sock: socket.socket):
        self._sock = sock

    def send(self, frame: Frame) -> None:
        try:
            self._sock.sendall(encode_frame(frame))
        except OSError as exc:
            raise ConnectionClosed(str(exc)) from None

    def _read_exact(self, size: int) -> bytes:
        buf = bytearray()
        while len(buf) < size:
            try:
                chunk = self._sock.recv(size - len(buf))
            except socket.timeout:
                raise TimeoutError("timed out waiting for a frame") from None
            except OSError as exc:
                raise ConnectionClosed(str(exc)) from None
            if not chunk:
                raise ConnectionClosed("peer closed the connection")
            buf += chunk
        return bytes(buf)

    def recv(self, timeout: float | None = DEFAULT_TIMEOUT) -> Frame:
        self._sock.settimeout(timeout)
        header = self._read_exact(HEADER.size)
        _, length = parse_header(header)
        return decode_frame(header + self._read_exact(length))

    def close(self) -> None:
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class TcpListener:
    """Bound listening socket; ``address`` reports the real port when 0 was asked for."""

    def __init__(self, addr: str):
        host, port = parse_address(addr)
        try:
            self._sock = socket.create_server((host, port))
        except OSError as exc:
            raise ConnectionFailed(f"cannot listen on {addr}: {exc}") from None

    @property
    def address(self) -> str:
        host, port = self._sock.getsockname()[:2]
        return f"{host}:{port}"

    def accept(self, timeout: float | None = DEFAULT_TIMEOUT) -> TcpEndpoint:
        self._sock.settimeout(timeout)
        try:
            conn, _ = self._sock.accept()
        except socket.timeout:
            raise TimeoutError("no peer connected in time") from None
        conn.settimeout(None)
        return TcpEndpoint(conn)

    def close(self) -> None:
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def tcp_listen(addr: str, timeout: float | None = DEFAULT_TIMEOUT) -> TcpEndpoint:
    """Wait for exactly one peer on ``addr`` and return its endpoint."""
    with TcpListener(addr) as listener:
        return listener.accept(timeout)


def tcp_connect(addr: str, timeout: float = DEFAULT_TIMEOUT) -> TcpEndpoint:
    host, port = parse_address(addr)
    try:
        sock = socket.create_connection((host, port), timeout=timeout)
    except OSError as exc:
        raise ConnectionFailed(f"cannot connect to {addr}: {exc}") from None
    sock.settimeout(None)
    return TcpEndpoint(sock)
