"""Command-line entry point.

Exit status: 0 on success, 1 when a protocol run fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import threading

from . import cubic_cipher as cc
from . import dh_okx, numtheory as nt
from .errors import (
    AckMismatch,
    CubicOtError,
    FrameError,
    ProtocolViolation,
)
from .oblivious import ot_success_rate
from .rank_coding import decode_rank, encode_rank
from .wire import run as wrun
from .wire.transport import DEFAULT_TIMEOUT, TcpListener, tcp_connect, transport_pair

DEFAULT_SEED = 0x5EED

EXIT_OK, EXIT_PROTOCOL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, human: str, **fields) -> None:
    if args.machine:
        print(" ".join(f"{k}={v}" for k, v in fields.items()))
    else:
        print(human)


def _load(path: str):
    try:
        return cc.read_key(path)
    except OSError as exc:
        raise UsageError(f"cannot read key file: {exc}") from None


def _private(path: str) -> cc.CubicPrivateKey:
    key = _load(path)
    if not isinstance(key, cc.CubicPrivateKey):
        raise UsageError(f"{path} holds a public key; this command needs the private key")
    return key


def _public(path: str) -> cc.CubicPublicKey:
    key = _load(path)
    return key.public if isinstance(key, cc.CubicPrivateKey) else key


# cubic commands

def cmd_keygen(args) -> int:
    if args.p is not None:
        key = cc.key_from_primes(args.p, args.q, args.a)
    else:
        key = cc.keygen(args.bits, args.mode, args.a, args.seed)
    cc.save_key(key, args.out)
    pub = key.public
    _emit(
        args,
        f"wrote {pub.mode} key to {args.out}: n={pub.n} alpha={pub.alpha} a={pub.a}",
        mode=pub.mode, a=pub.a, n=pub.n, alpha=pub.alpha, out=args.out,
    )
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pub = _public(args.key)
    rc = cc.encrypt_ranked(args.m, pub)
    framed = encode_rank(rc.c, rc.rank, pub.a)
    _emit(args, str(framed), frame=framed, c=rc.c, rank=rc.rank)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    priv = _private(args.key)
    c, rank = decode_rank(args.frame, priv.a)
    m = cc.decrypt_ranked(cc.RankedCiphertext(c, rank), priv)
    _emit(args, str(m), m=m, c=c, rank=rank)
    return EXIT_OK


def cmd_roots(args) -> int:
    priv = _private(args.key)
    roots = cc.all_roots(args.c, priv.public, cc.extract_root(args.c, priv))
    _emit(args, " ".join(map(str, roots)), c=args.c, roots=",".join(map(str, roots)))
    return EXIT_OK


def cmd_ot_stats(args) -> int:
    priv = _private(args.key)
    if priv.public.mode != cc.COMPOSITE:
        raise UsageError("ot-stats needs a composite-mode key")
    stats = ot_success_rate(priv, args.trials, args.seed)
    fields = dict(a=priv.a, n_bits=priv.n.bit_length())
    if args.fields:
        print(stats.structured(**fields), end="")
    else:
        print(stats.record(**fields))
    return EXIT_OK


def cmd_send(args) -> int:
    pinned = _public(args.key) if args.key else None
    transcript = wrun.Transcript()
    with tcp_connect(args.addr, args.timeout) as ep:
        state = wrun.run_cubic_sender(ep, args.m, pinned, args.timeout, transcript)
    framed = encode_rank(cc.encrypt(args.m, state.peer_key), state.pending_rank, state.peer_key.a)
    _emit(
        args,
        f"sent m={args.m} as frame {framed}; acknowledged rank {state.pending_rank}",
        m=args.m, frame=framed, rank=state.pending_rank, ack="ok",
    )
    return EXIT_OK


def cmd_recv(args) -> int:
    priv = _private(args.key)
    with TcpListener(args.addr) as listener:
        if args.verbose:
            print(f"listening on {listener.address}", file=sys.stderr)
        with listener.accept(args.timeout) as ep:
            state = wrun.run_cubic_receiver(ep, priv, args.timeout)
    _emit(args, str(state.recovered), m=state.recovered)
    return EXIT_OK


# oblivious key exchange commands

def _okx_prime(a: int, bits: int, seed: int) -> int:
    if a == 2:
        congruences = ((4, 3),)
    else:
        congruences = ((a * a, 1 + a * (1 + seed % (a - 1))),)
    return nt.gen_prime(nt.PrimeSpec(bits, congruences), seed)


def _okx_params_from(args) -> dh_okx.OkxParams:
    p = args.p if args.p is not None else _okx_prime(args.a, args.bits, args.seed)
    if args.c is not None:
        return dh_okx.okx_params(p, args.g, args.c, args.a)
    return dh_okx.okx_setup(p, args.g, args.a, args.seed)


def cmd_okx_simulate(args) -> int:
    params = _okx_params_from(args)
    if args.transcript:
        rng = random.Random(args.seed)
        alice = dh_okx.random_local(params, rng)
        bob = dh_okx.random_local(params, rng)
        print(dh_okx.session_transcript(params, alice, bob), end="")
    stats = dh_okx.okx_agreement_rate(params, args.trials, args.seed)
    print(stats.record(a=params.a, p=params.p))
    return EXIT_OK


def _print_okx_side(role: str, state) -> None:
    params = state.params
    own = dh_okx.okx_message(params, state.local)
    a_msg, b_msg = (own, state.peer_msg) if role == "A" else (state.peer_msg, own)
    print(dh_okx.format_params(params))
    print(f"A->B {a_msg}")
    print(f"B->A {b_msg}")
    print(f"{role} key {state.key.value}")


def cmd_okx_listen(args) -> int:
    params = _okx_params_from(args)
    local = dh_okx.random_local(params, random.Random(args.seed ^ 0xA))
    with TcpListener(args.addr) as listener:
        if args.verbose:
            print(f"listening on {listener.address}", file=sys.stderr)
        with listener.accept(args.timeout) as ep:
            state = wrun.run_okx_initiator(ep, params, local, timeout=args.timeout)
    _print_okx_side("A", state)
    return EXIT_OK


def cmd_okx_connect(args) -> int:
    with tcp_connect(args.addr, args.timeout) as ep:
        state = wrun.run_okx_responder(ep, seed=args.seed ^ 0xB, timeout=args.timeout)
    _print_okx_side("B", state)
    return EXIT_OK


# worked examples

def worked_example_checks():
    """Yield ``(name, ok, detail)`` for every reproduced worked-example value."""
    key = cc.key_from_primes(31)
    unity = sorted(cc.all_roots(1, key.public, 1))
    yield "p=31 cube roots of unity", unity == [1, 5, 25], f"{unity}"
    c = cc.encrypt(7, key.public)
    yield "7^3 mod 31", c == 2, f"c={c}"
    rank = cc.rank_of(7, key.public)
    yield "rank of m=7", rank == 2, f"rank={rank}"
    framed = encode_rank(c, rank, 3)
    yield "framed wire integer", framed == 9, f"frame={framed} ({framed:b})"
    root = cc.extract_root(2, key)
    yield "2^7 mod 31", root == 4, f"root={root}"
    roots = cc.all_roots(2, key.public, root)
    yield "roots of c=2", roots == [4, 7, 20], f"{roots}"
    m = cc.decrypt_ranked(cc.RankedCiphertext(*decode_rank(9, 3)), key)
    yield "decrypt frame 9", m == 7, f"m={m}"

    a_end, b_end = transport_pair()
    out = {}
    t = threading.Thread(target=lambda: out.update(r=wrun.run_cubic_receiver(a_end, key, 5)))
    t.start()
    sender = wrun.run_cubic_sender(b_end, 7, timeout=5)
    t.join()
    ok = out["r"].recovered == 7 and sender.pending_rank == 2
    yield "three-stage session", ok, f"recovered={out['r'].recovered} ack={sender.pending_rank}"

    params = dh_okx.okx_params(19, 2, 9, 2)
    yield "roots of c=9 mod 19", params.roots == (3, 16), f"{list(params.roots)}"
    alice = dh_okx.OkxLocal(7, 0, 0)
    bob = dh_okx.OkxLocal(11, 0, 0)
    msgs = dh_okx.okx_message(params, alice), dh_okx.okx_message(params, bob)
    yield "OKX messages", msgs == (17, 6), f"A->B {msgs[0]}, B->A {msgs[1]}"
    cases = {
        1: ((0, 0), (13, 13)),
        2: ((1, 0), (16, 13)),
        3: ((1, 1), (16, 7)),
        4: ((0, 1), (13, 7)),
    }
    for case, ((ga, gb), expected) in cases.items():
        ka, kb, _ = dh_okx.okx_session(
            params, dh_okx.OkxLocal(7, 0, ga), dh_okx.OkxLocal(11, 0, gb)
        )
        got = (ka.value, kb.value)
        yield f"OKX case {case}", got == expected, f"A key {got[0]}, B key {got[1]}"


def cmd_demo_paper(args) -> int:
    all_ok = True
    for name, ok, detail in worked_example_checks():
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    print(f"overall {'PASS' if all_ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_PROTOCOL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--machine", action="store_true", help="print key=value lines")
    common.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cubicot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", parents=[common], help="generate a key file")
    p.add_argument("--mode", choices=[cc.PRIME, cc.COMPOSITE], default=cc.COMPOSITE)
    p.add_argument("--bits", type=int, default=32)
    p.add_argument("--a", type=int, default=3)
    p.add_argument("--p", type=int, help="use this prime instead of generating one")
    p.add_argument("--q", type=int, help="second prime (composite mode with --p)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", parents=[common], help="print the framed cipher of --m")
    p.add_argument("--key", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", parents=[common], help="recover m from a framed cipher")
    p.add_argument("--key", required=True)
    p.add_argument("--frame", type=int, required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("roots", parents=[common], help="list every root of a cipher")
    p.add_argument("--key", required=True)
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("ot-stats", parents=[common], help="oblivious transfer success rate")
    p.add_argument("--key", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--fields", action="store_true", help="one field per line")
    p.set_defaults(func=cmd_ot_stats)

    p = sub.add_parser("send", parents=[common], help="send --m to a listening key holder")
    p.add_argument("addr")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--key", help="refuse any published key other than this one")
    p.set_defaults(func=cmd_send)

    p = sub.add_parser("recv", parents=[common], help="publish a key and receive one message")
    p.add_argument("addr")
    p.add_argument("--key", required=True)
    p.set_defaults(func=cmd_recv)

    okx = sub.add_parser("okx", help="oblivious Diffie-Hellman key exchange")
    okx_sub = okx.add_subparsers(dest="okx_command", required=True)
    okx_params = argparse.ArgumentParser(add_help=False)
    okx_params.add_argument("--p", type=int, help="prime modulus (generated if omitted)")
    okx_params.add_argument("--g", type=int, default=2)
    okx_params.add_argument("--a", type=int, default=2)
    okx_params.add_argument("--c", type=int, help="shared cipher (random if omitted)")
    okx_params.add_argument("--bits", type=int, default=32)

    p = okx_sub.add_parser("simulate", parents=[common, okx_params], help="Monte Carlo agreement rate")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--transcript", action="store_true", help="also print one session transcript")
    p.set_defaults(func=cmd_okx_simulate)

    p = okx_sub.add_parser("listen", parents=[common, okx_params], help="wait for a peer and exchange")
    p.add_argument("addr")
    p.set_defaults(func=cmd_okx_listen)

    p = okx_sub.add_parser("connect", parents=[common], help="connect to a listening peer")
    p.add_argument("addr")
    p.set_defaults(func=cmd_okx_connect)

    p = sub.add_parser("demo-paper", parents=[common], help="reproduce the worked examples")
    p.set_defaults(func=cmd_demo_paper)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (AckMismatch, ProtocolViolation, FrameError, ConnectionError, TimeoutError) as exc:
        print(f"protocol failure: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except (UsageError, CubicOtError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
