"""Oblivious transfer of a factorization through colliding a-th roots.

The sender picks a plaintext x and sends c = x^a mod n. The key holder answers
with one of the ``a`` roots of c chosen uniformly at random. If that root differs
from x, gcd(x - root, n) is a proper factor of n, which happens with probability
(a - 1)/a. The key holder cannot tell which case occurred.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cubic_cipher import COMPOSITE, CubicPrivateKey, all_roots, encrypt, extract_root
from .errors import TrivialGcd
from .stats import TrialStats, trial_seed


@dataclass(frozen=True)
class OtOutcome:
    receiver_root: int
    sender_root: int
    revealed_factor: int | None = None

    @property
    def revealed(self) -> bool:
        return self.revealed_factor is not None


def factor_from_roots(x: int, x1: int, n: int) -> int:
    g = math.gcd((x - x1) % n, n)
    if g in (1, n):
        raise TrivialGcd(f"gcd({x} - {x1}, {n}) = {g}")
    return g


def ot_round(priv: CubicPrivateKey, sender_root: int, seed: int) -> OtOutcome:
    """One round: the key holder returns a uniformly drawn root of sender_root^a."""
    if priv.public.mode != COMPOSITE:
        raise ValueError("oblivious transfer needs a composite-mode key")
    c = encrypt(sender_root, priv.public)
    roots = all_roots(c, priv.public, extract_root(c, priv))
    chosen = roots[random.Random(seed).randrange(priv.a)]
    if chosen == sender_root:
        return OtOutcome(receiver_root=chosen, sender_root=sender_root)
    return OtOutcome(
        receiver_root=chosen,
        sender_root=sender_root,
        revealed_factor=factor_from_roots(sender_root, chosen, priv.n),
    )


def random_unit(rng: random.Random, n: int) -> int:
    while True:
        m = rng.randrange(1, n)
        if math.gcd(m, n) == 1:
            return m


def ot_success_rate(priv: CubicPrivateKey, trials: int, seed: int) -> TrialStats:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    successes = 0
    for i in range(trials):
        rng = random.Random(trial_seed(seed, i))
        x = random_unit(rng, priv.n)
        if ot_round(priv, x, rng.getrandbits(64)).revealed:
            successes += 1
    return TrialStats(trials=trials, successes=successes)
