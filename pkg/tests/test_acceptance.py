"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import random
import time
from contextlib import contextmanager

import pytest

from cubicot import cubic_cipher as cc
from cubicot import dh_okx as okx
from cubicot import numtheory as nt
from cubicot import rank_coding as rc
from cubicot.errors import AckMismatch, ProtocolViolation
from cubicot.oblivious import factor_from_roots, ot_success_rate, random_unit
from cubicot.wire import run as wrun
from cubicot.wire import session as s
from cubicot.wire.frames import Frame, MsgType, encode_frame
from cubicot.wire.transport import transport_pair

import _criteria
import oracles
from wire_helpers import direct_cubic, run_pair, tcp_ends


@contextmanager
def criterion(number, title, max_seconds=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if max_seconds is not None:
            assert elapsed < max_seconds, f"took {elapsed:.2f}s, limit {max_seconds}s"
    except BaseException as exc:
        line = f"AC{number} FAIL  {title}: {exc}"
        _criteria.LINES.append(line)
        print(line)
        raise
    line = f"AC{number} PASS  {title} ({elapsed:.2f}s)"
    _criteria.LINES.append(line)
    print(line)


def test_ac1_cubic_worked_example():
    with criterion(1, "p=31 worked example end to end", max_seconds=1.0):
        key = cc.key_from_primes(31)
        assert cc.all_roots(1, key.public, 1) == [1, 5, 25]
        ranked = cc.encrypt_ranked(7, key.public)
        assert (ranked.c, ranked.rank) == (2, 2)
        framed = rc.encode_rank3(ranked.c, ranked.rank)
        assert framed == 9 and format(framed, "b") == "1001"
        assert nt.mod_pow(2, 7, 31) == 4 == cc.extract_root(2, key)
        assert cc.all_roots(2, key.public, 4) == [4, 7, 20]
        assert cc.decrypt_ranked(cc.RankedCiphertext(*rc.decode_rank3(9)), key) == 7


def _oracle_key(msg_exp, guess_root, secret, g=2, p=19):
    """g^((msg_exp - guess_root) * secret) by repeated multiplication, exponent mod ord(g)."""
    ordg = oracles.order(g, p)
    return oracles.slow_pow(g, (msg_exp - guess_root) * secret % ordg, p)


def test_ac2_okx_worked_example():
    with criterion(2, "p=19 oblivious key exchange, all four cases", max_seconds=1.0):
        params = okx.okx_params(19, 2, 9, 2)
        assert params.roots == (3, 16)
        assert oracles.square_roots(9, 19) == [3, 16]
        n1, n2 = 7, 11
        alice_msg = okx.okx_message(params, okx.OkxLocal(n1, 0, 0))
        bob_msg = okx.okx_message(params, okx.OkxLocal(n2, 0, 0))
        assert (alice_msg, bob_msg) == (17, 6)
        assert (oracles.slow_pow(2, 3 + n1, 19), oracles.slow_pow(2, 3 + n2, 19)) == (17, 6)

        # (Alice's guess index, Bob's guess index); both send with root 3
        cases = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}
        got = {}
        for case, (ga, gb) in cases.items():
            ka, kb, agreed = okx.okx_session(
                params, okx.OkxLocal(n1, 0, ga), okx.OkxLocal(n2, 0, gb)
            )
            expected = (
                _oracle_key(3 + n2, params.roots[ga], n1),
                _oracle_key(3 + n1, params.roots[gb], n2),
            )
            assert (ka.value, kb.value) == expected
            got[case] = (ka.value, kb.value, agreed)

        assert got[1] == (13, 13, True)
        assert got[2][0] != 13 and got[2][0] == 16
        assert got[3][:2] == (16, 7) and got[3][0] != got[3][1]
        assert got[4] == (13, 7, False)


@pytest.mark.parametrize("a", [3, 5])
def test_ac3_ot_probability(a):
    expected = (a - 1) / a
    with criterion(3, f"OT success rate, a={a}, 32-bit primes, within {expected:.4f} +- 0.05", max_seconds=30.0):
        key = cc.keygen(32, cc.COMPOSITE, a, seed=0x5EED + a)
        assert key.p.bit_length() == key.q.bit_length() == 32
        stats = ot_success_rate(key, 10_000, seed=2024)
        print(stats.record(a=a, n_bits=key.n.bit_length()))
        assert abs(stats.rate - expected) <= 0.05


@pytest.mark.parametrize("a, congruence", [(2, ((4, 3),)), (3, ((9, 7),))])
def test_ac4_okx_probability(a, congruence):
    expected = 1 / a**2
    with criterion(4, f"OKX agreement rate, a={a}, within {expected:.4f} +- 0.02", max_seconds=30.0):
        p = nt.gen_prime(nt.PrimeSpec(32, congruence), seed=a)
        assert p >= 10**6
        params = okx.okx_setup(p, 2, a, seed=a)
        stats = okx.okx_agreement_rate(params, 10_000, seed=99)
        print(stats.record(a=a, p=p))
        assert abs(stats.rate - expected) <= 0.02


def test_ac5_roundtrip_suite():
    with criterion(5, "roundtrip: 1000 keys x 100 plaintexts per mode and a; codec < 2^20"):
        rng = random.Random(5)
        for mode in (cc.PRIME, cc.COMPOSITE):
            for a in (3, 5):
                for _ in range(1000):
                    key = cc.keygen(rng.randint(8, 48), mode, a, rng.getrandbits(64))
                    for _ in range(100):
                        m = random_unit(rng, key.n)
                        assert cc.decrypt_ranked(cc.encrypt_ranked(m, key.public), key) == m
        for c in range(1 << 20):
            for rank in (1, 2, 3):
                assert rc.decode_rank3(rc.encode_rank3(c, rank)) == (c, rank)
            for rank in (1, 2, 3, 4):
                assert rc.decode_rank4(rc.encode_rank4(c, rank)) == (c, rank)


def test_ac6_brute_force_equivalence():
    with criterion(6, "composite keys n < 2000: root enumeration and gcd factors"):
        pairs = []
        for p in oracles.primes_below(2000):
            if p % 4 != 3 or p % 3 != 1 or p % 9 == 1:
                continue
            for q in oracles.primes_below(2000 // p + 1):
                if q not in (2, p) and q % 3 != 1 and p * q < 2000:
                    pairs.append((p, q))
        assert len(pairs) >= 3
        for p, q in pairs:
            key = cc.key_from_primes(p, q)
            table = oracles.power_table(key.n, 3)
            for c, roots in table.items():
                assert cc.all_roots(c, key.public, cc.extract_root(c, key)) == roots
                for x in roots:
                    for y in roots:
                        if x != y:
                            g = factor_from_roots(x, y, key.n)
                            assert 1 < g < key.n and key.n % g == 0
        print(f"checked {len(pairs)} keys")


def _branch_exponent(key):
    """Whichever of the two closed-form exponents is an integer, reduced into [1, phi/3)."""
    phi = key.phi
    candidates = [(phi + 3, 9), (2 * phi + 3, 9)]
    integral = [num // den for num, den in candidates if num % den == 0]
    assert len(integral) == 1
    return (integral[0] - 1) % (phi // 3) + 1


def test_ac7_exponent_rule_audit():
    with criterion(7, "decryption exponent equals the integral closed-form branch; p=67 regression"):
        rng = random.Random(7)
        for i in range(500):
            mode = cc.PRIME if i % 2 else cc.COMPOSITE
            key = cc.keygen(rng.randint(8, 64), mode, 3, rng.getrandbits(64))
            assert key.e == _branch_exponent(key)
            if mode == cc.PRIME:
                # phi + 3 = p + 2 and 2*phi + 3 = 2p + 1 in prime mode
                branch = (key.p + 2) // 9 if (key.p + 2) % 9 == 0 else (2 * key.p + 1) // 9
                assert key.e == branch
        assert cc.key_from_primes(31).e == 7 and cc.key_from_primes(7, 5).e == 3

        # digit sum of phi(67) = 66 is 12, divisible by 6, yet (p+2)/9 is not an integer
        assert nt.digit_sum(66) == 12 and 12 % 6 == 0
        assert (67 + 2) % 9 != 0
        key67 = cc.key_from_primes(67)
        assert key67.e == 15 == (2 * 67 + 1) // 9


def _matrix_cases():
    k31 = cc.key_from_primes(31)
    p19 = okx.okx_params(19, 2, 9, 2)
    samples = {
        MsgType.PUBKEY: Frame.of(MsgType.PUBKEY, 31, 5),
        MsgType.CIPHER_RANKED: Frame.of(MsgType.CIPHER_RANKED, 9),
        MsgType.ACK_RANK: Frame.of(MsgType.ACK_RANK, 2),
        MsgType.OKX_MSG: Frame.of(MsgType.OKX_MSG, 6),
        MsgType.PARAMS: Frame.of(MsgType.PARAMS, 19, 2, 9, 2),
        MsgType.ERROR: Frame.of(MsgType.ERROR, 1),
    }
    sender = s.sender_start(7)
    awaiting_ack, _ = s.cubic_sender_step(sender, samples[MsgType.PUBKEY])
    receiver, _ = s.receiver_start(k31)
    machines = [
        (s.cubic_sender_step, sender, MsgType.PUBKEY),
        (s.cubic_sender_step, awaiting_ack, MsgType.ACK_RANK),
        (s.cubic_receiver_step, receiver, MsgType.CIPHER_RANKED),
        (s.okx_peer_step, s.okx_initiator_start(p19, okx.OkxLocal(7, 0, 0))[0], MsgType.OKX_MSG),
        (s.okx_peer_step, s.okx_responder_start(okx.OkxLocal(11, 0, 0)), MsgType.PARAMS),
    ]
    for step, state, _ in list(machines):
        for phase in (s.Phase.DONE, s.Phase.FAILED):
            machines.append((step, type(state)(role=state.role, phase=phase), None))
    return machines, samples


def test_ac8_wire_conformance():
    with criterion(8, "three-stage session identical over both transports; ack tamper; phase matrix"):
        key = cc.key_from_primes(31)
        transcripts = []
        for connect in (transport_pair, tcp_ends):
            rt, st = wrun.Transcript(), wrun.Transcript()
            results, errors = run_pair(
                lambda ep: wrun.run_cubic_receiver(ep, key, 10, rt),
                lambda ep: wrun.run_cubic_sender(ep, 7, timeout=10, transcript=st),
                connect,
            )
            assert not errors and results["left"].recovered == 7
            transcripts.append((rt.events, st.events))
        assert transcripts[0] == transcripts[1]
        frames, _, _ = direct_cubic(key, 7)
        assert [b for _, b in transcripts[0][0]] == [encode_frame(f) for f in frames]
        assert frames[1].ints() == [9] and frames[2].ints() == [2]

        _, tampered, _ = direct_cubic(key, 7, tamper_ack=3)
        assert tampered.phase is s.Phase.FAILED and isinstance(tampered.error, AckMismatch)

        machines, samples = _matrix_cases()
        checked = 0
        for step, state, accepted in machines:
            for msg_type, frame in samples.items():
                if msg_type is accepted:
                    continue
                new_state, out = step(state, frame)
                assert new_state.phase is s.Phase.FAILED
                assert type(new_state.error) is ProtocolViolation
                assert out.msg_type is MsgType.ERROR
                checked += 1
        assert checked == 5 * 5 + 10 * 6
