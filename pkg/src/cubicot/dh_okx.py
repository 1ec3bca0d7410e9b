"""Oblivious Diffie-Hellman key exchange.

Both parties know a cipher ``c`` with ``a`` distinct a-th roots modulo ``p``.
Each sends g^(root + N) for a root of its choosing and divides the peer's message
by g^(guess) for a guessed root of the peer's choosing before raising to its own
secret N. Keys agree exactly when both guesses are right (probability 1/a^2), and
nothing on the wire tells either side whether that happened.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import numtheory as nt
from .cubic_cipher import unity_root
from .errors import BadParams, BadPrimeClass, NonResidue
from .stats import TrialStats, trial_seed


@dataclass(frozen=True)
class OkxParams:
    p: int
    g: int
    c: int
    a: int
    roots: tuple[int, ...]


@dataclass(frozen=True)
class OkxLocal:
    secret: int
    own_root_index: int
    guess_index: int


@dataclass(frozen=True)
class OkxKey:
    value: int


def _check_group(p: int, g: int, a: int) -> None:
    if not nt.is_probable_prime(p, 64):
        raise BadParams(f"p={p} is not prime")
    if a == 2:
        if p % 4 != 3:
            raise BadPrimeClass(f"p={p} is not 3 mod 4")
    elif a >= 3 and nt.is_probable_prime(a, 40):
        if p % a != 1 or p % (a * a) == 1:
            raise BadPrimeClass(f"p={p} must be 1 mod {a} and not 1 mod {a * a}")
    else:
        raise BadParams(f"exponent must be 2 or an odd prime, got {a}")
    # only 1 and p-1 have order <= 2
    if not 1 < g % p < p - 1:
        raise BadParams(f"g={g} has order <= 2 mod {p}")


def _roots_from(r: int, p: int, a: int) -> tuple[int, ...]:
    if a == 2:
        return tuple(sorted((r, p - r)))
    w = unity_root(p, a)
    roots, x = [], r
    for _ in range(a):
        roots.append(x)
        x = x * w % p
    return tuple(sorted(roots))


def okx_setup(p: int, g: int, a: int = 2, seed: int = 0) -> OkxParams:
    """Pick a random root r, publish c = r^a and the full root set of c."""
    _check_group(p, g, a)
    r = random.Random(seed).randrange(1, p)
    return OkxParams(p=p, g=g % p, c=pow(r, a, p), a=a, roots=_roots_from(r, p, a))


def okx_params(p: int, g: int, c: int, a: int = 2) -> OkxParams:
    """Parameters for an agreed cipher ``c`` (e.g. the worked example's c=9)."""
    _check_group(p, g, a)
    c %= p
    if c == 0:
        raise BadParams("c must be nonzero")
    if a == 2:
        r = nt.sqrt_mod(c, p)
    else:
        r = pow(c, nt.mod_inv(a, (p - 1) // a), p)
        if pow(r, a, p) != c:
            raise NonResidue(f"{c} is not an {a}-th power mod {p}")
    return OkxParams(p=p, g=g % p, c=c, a=a, roots=_roots_from(r, p, a))


def validate_local(params: OkxParams, local: OkxLocal) -> None:
    if not 1 <= local.secret < params.p - 1:
        raise BadParams(f"secret must be in [1, {params.p - 2}], got {local.secret}")
    for idx in (local.own_root_index, local.guess_index):
        if not 0 <= idx < params.a:
            raise BadParams(f"root index {idx} outside [0, {params.a})")


def random_local(params: OkxParams, rng: random.Random) -> OkxLocal:
    """Uniform secret in [1, p-2]; own root and guess drawn independently."""
    return OkxLocal(
        secret=rng.randint(1, params.p - 2),
        own_root_index=rng.randrange(params.a),
        guess_index=rng.randrange(params.a),
    )


def okx_message(params: OkxParams, local: OkxLocal) -> int:
    validate_local(params, local)
    return pow(params.g, params.roots[local.own_root_index] + local.secret, params.p)


def okx_key(params: OkxParams, local: OkxLocal, peer_msg: int) -> OkxKey:
    validate_local(params, local)
    if not 0 < peer_msg < params.p:
        raise BadParams(f"peer message must be in (0, {params.p}), got {peer_msg}")
    blind = pow(params.g, params.roots[local.guess_index], params.p)
    base = peer_msg * nt.mod_inv(blind, params.p) % params.p
    return OkxKey(pow(base, local.secret, params.p))


def okx_session(
    params: OkxParams, alice: OkxLocal, bob: OkxLocal
) -> tuple[OkxKey, OkxKey, bool]:
    a_msg = okx_message(params, alice)
    b_msg = okx_message(params, bob)
    ka = okx_key(params, alice, b_msg)
    kb = okx_key(params, bob, a_msg)
    return ka, kb, ka == kb


def okx_agreement_rate(params: OkxParams, trials: int, seed: int) -> TrialStats:
    """Fraction of random sessions whose two keys are equal."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    agreed = 0
    for i in range(trials):
        rng = random.Random(trial_seed(seed, i))
        alice = random_local(params, rng)
        bob = random_local(params, rng)
        agreed += okx_session(params, alice, bob)[2]
    return TrialStats(trials=trials, successes=agreed)


def format_params(params: OkxParams) -> str:
    return f"params p={params.p} g={params.g} c={params.c} a={params.a}"


def session_transcript(params: OkxParams, alice: OkxLocal, bob: OkxLocal) -> str:
    """Text transcript, one protocol event per line, decimal integers."""
    ka, kb, agreed = okx_session(params, alice, bob)
    return "\n".join(
        [
            format_params(params),
            f"A->B {okx_message(params, alice)}",
            f"B->A {okx_message(params, bob)}",
            f"A key {ka.value}",
            f"B key {kb.value}",
            f"agreed {int(agreed)}",
        ]
    ) + "\n"
