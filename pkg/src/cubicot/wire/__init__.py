"""Wire format, protocol state machines and transports."""

from .frames import Frame, MsgType, decode_frame, encode_frame
from .run import (
    Transcript,
    run_cubic_receiver,
    run_cubic_sender,
    run_okx_initiator,
    run_okx_responder,
)
from .session import (
    CubicSession,
    OkxSession,
    Phase,
    cubic_receiver_step,
    cubic_sender_step,
    okx_initiator_start,
    okx_peer_step,
    okx_responder_start,
    receiver_start,
    sender_start,
)
from .transport import TcpListener, tcp_connect, tcp_listen, transport_pair

__all__ = [
    "CubicSession", "Frame", "MsgType", "OkxSession", "Phase", "TcpListener", "Transcript",
    "cubic_receiver_step", "cubic_sender_step", "decode_frame", "encode_frame",
    "okx_initiator_start", "okx_peer_step", "okx_responder_start", "receiver_start",
    "run_cubic_receiver", "run_cubic_sender", "run_okx_initiator", "run_okx_responder",
    "sender_start", "tcp_connect", "tcp_listen", "transport_pair",
]
