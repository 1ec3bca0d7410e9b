"""Protocol state machines.

Step functions are pure: ``step(state, frame) -> (new_state, frame_to_send | None)``.
A frame that does not fit the current phase moves the session to FAILED with a
:class:`ProtocolViolation` and emits an ERROR frame for the peer.

Cubic exchange (key holder = receiver, message owner = sender)::

    receiver --PUBKEY(n, alpha)-------> sender
    receiver <--CIPHER_RANKED(frame)--- sender
    receiver --ACK_RANK(rank)---------> sender   (sender checks the rank)

Oblivious key exchange::

    A --PARAMS(p, g, c, a)--> B      (skipped if params are agreed out of band)
    A <--OKX_MSG------------- B
    A --OKX_MSG-------------> B

No key or key confirmation ever crosses the wire.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, replace

from .. import cubic_cipher as cc
from .. import dh_okx
from ..errors import AckMismatch, CubicOtError, FrameError, ProtocolViolation
from ..rank_coding import decode_rank, encode_rank
from .frames import Frame, MsgType


class Phase(enum.Enum):
    AWAIT_KEY = "AwaitKey"
    AWAIT_CIPHER = "AwaitCipher"
    AWAIT_ACK = "AwaitAck"
    AWAIT_PARAMS = "AwaitParams"
    AWAIT_MSG = "AwaitMsg"
    DONE = "Done"
    FAILED = "Failed"


TERMINAL = (Phase.DONE, Phase.FAILED)

ERR_PROTOCOL = 1
ERR_ACK_MISMATCH = 2

SENDER = "sender"
RECEIVER = "receiver"


def _fail(state, error: Exception):
    code = ERR_ACK_MISMATCH if isinstance(error, AckMismatch) else ERR_PROTOCOL
    return replace(state, phase=Phase.FAILED, error=error), Frame.of(MsgType.ERROR, code)


def _unexpected(state, frame: Frame):
    return _fail(
        state,
        ProtocolViolation(f"{frame.msg_type.name} not accepted in phase {state.phase.value}"),
    )


def _ints(frame: Frame, count: int) -> list[int]:
    values = frame.ints()
    if len(values) != count:
        raise ProtocolViolation(
            f"{frame.msg_type.name} carries {len(values)} integers, expected {count}"
        )
    return values


# cubic exchange

@dataclass(frozen=True)
class CubicSession:
    role: str
    phase: Phase
    message: int | None = None
    pending_rank: int | None = None
    key: cc.CubicPrivateKey | None = None
    peer_key: cc.CubicPublicKey | None = None
    pinned: cc.CubicPublicKey | None = None
    recovered: int | None = None
    error: Exception | None = None


def sender_start(m: int, pinned: cc.CubicPublicKey | None = None) -> CubicSession:
    """Sender holding ``m``; with ``pinned`` set, any other published key is refused."""
    return CubicSession(role=SENDER, phase=Phase.AWAIT_KEY, message=m, pinned=pinned)


def receiver_start(priv: cc.CubicPrivateKey) -> tuple[CubicSession, Frame]:
    """Publish the key; the receiver then waits for a ranked cipher."""
    state = CubicSession(role=RECEIVER, phase=Phase.AWAIT_CIPHER, key=priv)
    return state, Frame.of(MsgType.PUBKEY, priv.n, priv.public.alpha)


def cubic_sender_step(state: CubicSession, frame: Frame):
    try:
        if state.phase is Phase.AWAIT_KEY and frame.msg_type is MsgType.PUBKEY:
            n, alpha = _ints(frame, 2)
            if state.pinned is not None and (n, alpha) != (state.pinned.n, state.pinned.alpha):
                raise ProtocolViolation("published key does not match the pinned key")
            pub = cc.public_from(n, alpha)
            rc = cc.encrypt_ranked(state.message, pub)
            out = Frame.of(MsgType.CIPHER_RANKED, encode_rank(rc.c, rc.rank, pub.a))
            return replace(state, phase=Phase.AWAIT_ACK, peer_key=pub, pending_rank=rc.rank), out
        if state.phase is Phase.AWAIT_ACK and frame.msg_type is MsgType.ACK_RANK:
            (rank,) = _ints(frame, 1)
            if rank != state.pending_rank:
                raise AckMismatch(state.pending_rank, rank)
            return replace(state, phase=Phase.DONE), None
    except ProtocolViolation as exc:
        return _fail(state, exc)
    except (FrameError, CubicOtError, ValueError) as exc:
        return _fail(state, ProtocolViolation(str(exc)))
    return _unexpected(state, frame)


def cubic_receiver_step(state: CubicSession, frame: Frame):
    try:
        if state.phase is Phase.AWAIT_CIPHER and frame.msg_type is MsgType.CIPHER_RANKED:
            (framed,) = _ints(frame, 1)
            c, rank = decode_rank(framed, state.key.a)
            m = cc.decrypt_ranked(cc.RankedCiphertext(c, rank), state.key)
            return replace(state, phase=Phase.DONE, recovered=m), Frame.of(MsgType.ACK_RANK, rank)
    except ProtocolViolation as exc:
        return _fail(state, exc)
    except (FrameError, CubicOtError, ValueError) as exc:
        return _fail(state, ProtocolViolation(str(exc)))
    return _unexpected(state, frame)


# oblivious key exchange

@dataclass(frozen=True)
class OkxSession:
    role: str
    phase: Phase
    params: dh_okx.OkxParams | None = None
    local: dh_okx.OkxLocal | None = None
    seed: int = 0
    sent: bool = False
    peer_msg: int | None = None
    key: dh_okx.OkxKey | None = None
    error: Exception | None = None


def okx_initiator_start(
    params: dh_okx.OkxParams, local: dh_okx.OkxLocal, send_params: bool = True
) -> tuple[OkxSession, Frame]:
    dh_okx.validate_local(params, local)
    state = OkxSession(role="A", phase=Phase.AWAIT_MSG, params=params, local=local)
    if send_params:
        return state, Frame.of(MsgType.PARAMS, params.p, params.g, params.c, params.a)
    msg = dh_okx.okx_message(params, local)
    return replace(state, sent=True), Frame.of(MsgType.OKX_MSG, msg)


def okx_responder_start(
    local: dh_okx.OkxLocal | None = None,
    seed: int = 0,
    params: dh_okx.OkxParams | None = None,
) -> OkxSession:
    """Responder; with ``local=None`` its secrets are drawn from ``seed`` once params are known."""
    phase = Phase.AWAIT_PARAMS if params is None else Phase.AWAIT_MSG
    state = OkxSession(role="B", phase=phase, params=params, local=local, seed=seed)
    if params is not None:
        state = replace(state, local=_resolve_local(state, params))
    return state


def _resolve_local(state: OkxSession, params: dh_okx.OkxParams) -> dh_okx.OkxLocal:
    local = state.local or dh_okx.random_local(params, random.Random(state.seed))
    dh_okx.validate_local(params, local)
    return local


def okx_peer_step(state: OkxSession, frame: Frame):
    try:
        if state.phase is Phase.AWAIT_PARAMS and frame.msg_type is MsgType.PARAMS:
            p, g, c, a = _ints(frame, 4)
            params = dh_okx.okx_params(p, g, c, a)
            local = _resolve_local(state, params)
            out = Frame.of(MsgType.OKX_MSG, dh_okx.okx_message(params, local))
            return replace(state, phase=Phase.AWAIT_MSG, params=params, local=local, sent=True), out
        if state.phase is Phase.AWAIT_MSG and frame.msg_type is MsgType.OKX_MSG:
            (peer_msg,) = _ints(frame, 1)
            key = dh_okx.okx_key(state.params, state.local, peer_msg)
            out = None
            if not state.sent:
                out = Frame.of(MsgType.OKX_MSG, dh_okx.okx_message(state.params, state.local))
            done = replace(state, phase=Phase.DONE, peer_msg=peer_msg, key=key, sent=True)
            return done, out
    except ProtocolViolation as exc:
        return _fail(state, exc)
    except (FrameError, CubicOtError, ValueError) as exc:
        return _fail(state, ProtocolViolation(str(exc)))
    return _unexpected(state, frame)
