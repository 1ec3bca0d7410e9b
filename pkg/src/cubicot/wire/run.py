"""Run the state machines over a transport endpoint, recording a frame transcript."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import cubic_cipher as cc
from .. import dh_okx
from . import session as s
from .frames import Frame, encode_frame
from .transport import DEFAULT_TIMEOUT


@dataclass
class Transcript:
    """Frames in the order this endpoint saw them: ``("send" | "recv", bytes)``."""

    events: list[tuple[str, bytes]] = field(default_factory=list)

    def sent(self, frame: Frame) -> None:
        self.events.append(("send", encode_frame(frame)))

    def received(self, frame: Frame) -> None:
        self.events.append(("recv", encode_frame(frame)))


def _drive(endpoint, state, first, step, timeout, transcript):
    if first is not None:
        endpoint.send(first)
        transcript.sent(first)
    while state.phase not in s.TERMINAL:
        frame = endpoint.recv(timeout)
        transcript.received(frame)
        state, out = step(state, frame)
        if out is not None:
            try:
                endpoint.send(out)
            except ConnectionError:
                if state.phase is not s.Phase.FAILED:
                    raise
            transcript.sent(out)
    if state.phase is s.Phase.FAILED:
        raise state.error
    return state


def run_cubic_receiver(endpoint, priv: cc.CubicPrivateKey, timeout=DEFAULT_TIMEOUT, transcript=None):
    """Key holder side; returns the final session (``recovered`` holds the plaintext)."""
    transcript = transcript if transcript is not None else Transcript()
    state, first = s.receiver_start(priv)
    return _drive(endpoint, state, first, s.cubic_receiver_step, timeout, transcript)


def run_cubic_sender(endpoint, m: int, pinned=None, timeout=DEFAULT_TIMEOUT, transcript=None):
    transcript = transcript if transcript is not None else Transcript()
    state = s.sender_start(m, pinned)
    return _drive(endpoint, state, None, s.cubic_sender_step, timeout, transcript)


def run_okx_initiator(
    endpoint, params: dh_okx.OkxParams, local: dh_okx.OkxLocal,
    send_params=True, timeout=DEFAULT_TIMEOUT, transcript=None,
):
    transcript = transcript if transcript is not None else Transcript()
    state, first = s.okx_initiator_start(params, local, send_params)
    return _drive(endpoint, state, first, s.okx_peer_step, timeout, transcript)


def run_okx_responder(
    endpoint, local: dh_okx.OkxLocal | None = None, seed: int = 0,
    params: dh_okx.OkxParams | None = None, timeout=DEFAULT_TIMEOUT, transcript=None,
):
    transcript = transcript if transcript is not None else Transcript()
    state = s.okx_responder_start(local, seed, params)
    return _drive(endpoint, state, None, s.okx_peer_step, timeout, transcript)
