"""Modular arithmetic and constrained prime generation.

Everything here is a pure function of its arguments. Randomness (Miller-Rabin
witnesses, prime candidates) always comes from an explicit integer seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import NonResidue, NotCoprime, NotInvertible, SearchExhausted

SMALL_PRIMES = tuple(
    n for n in range(2, 1000) if all(n % d for d in range(2, math.isqrt(n) + 1))
)
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, modulus)


def mod_inv(a: int, modulus: int) -> int:
    """Inverse of ``a`` modulo ``modulus``; raises NotInvertible carrying the gcd."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    g = math.gcd(a, modulus)
    if g != 1:
        raise NotInvertible(a, modulus, g)
    return pow(a, -1, modulus)


def sqrt_mod(a: int, p: int) -> int:
    """Square root of ``a`` modulo a prime ``p`` with p = 3 (mod 4).

    Returns a^((p+1)/4) mod p after checking that it really squares to ``a``.
    """
    if p % 4 != 3:
        raise ValueError(f"sqrt_mod needs p = 3 (mod 4), got p={p}")
    a %= p
    r = pow(a, (p + 1) // 4, p)
    if r * r % p != a:
        raise NonResidue(f"{a} is not a quadratic residue mod {p}")
    return r


def is_probable_prime(n: int, rounds: int = 40, seed: int = 0) -> bool:
    """Miller-Rabin with witnesses drawn from ``random.Random``.

    Exact for n < 1000 (table lookup). Witnesses depend on ``seed`` and ``n`` only,
    so a result can always be reproduced.
    """
    if n < 1000:
        return n in _SMALL_PRIME_SET
    for q in SMALL_PRIMES:
        if n % q == 0:
            return False

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    rng = random.Random(seed ^ n)
    for _ in range(rounds):
        x = pow(rng.randrange(2, n - 1), d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The unique x mod m1*m2 with x = r1 (mod m1) and x = r2 (mod m2)."""
    if math.gcd(m1, m2) != 1:
        raise NotCoprime(f"moduli {m1} and {m2} share a factor")
    # x = r1 + m1 * t, with t = (r2 - r1) / m1 mod m2
    t = (r2 - r1) * pow(m1, -1, m2) % m2 if m2 > 1 else 0
    return (r1 + m1 * t) % (m1 * m2)


def digit_sum(n: int) -> int:
    if n < 0:
        raise ValueError("digit_sum expects a nonnegative integer")
    return sum(int(ch) for ch in str(n))


@dataclass(frozen=True)
class PrimeSpec:
    """Requested size and residue classes for :func:`gen_prime`.

    ``congruences`` is a sequence of ``(modulus, residue)`` pairs with pairwise
    coprime moduli.
    """

    bit_length: int
    congruences: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    mr_rounds: int = 40

    def __post_init__(self):
        if self.bit_length < 8:
            raise ValueError(f"bit_length must be >= 8, got {self.bit_length}")
        if self.mr_rounds < 1:
            raise ValueError("mr_rounds must be positive")
        object.__setattr__(
            self, "congruences", tuple((int(m), int(r)) for m, r in self.congruences)
        )
        for m, r in self.congruences:
            if m < 1 or not 0 <= r < m:
                raise ValueError(f"bad congruence: {r} mod {m}")

    def combined(self) -> tuple[int, int]:
        """Collapse the congruences into a single ``(residue, modulus)``."""
        r, m = 0, 1
        for mi, ri in self.congruences:
            r = crt_pair(r, m, ri, mi)
            m *= mi
        return r, m


def gen_prime(spec: PrimeSpec, seed: int) -> int:
    """Random probable prime of exactly ``spec.bit_length`` bits in the spec's class.

    Picks a random start inside the residue class and walks the class in steps of
    the combined modulus (wrapping inside the bit range), testing at most
    ``64 * bit_length`` candidates.
    """
    r, m = spec.combined()
    if m % 2 == 0:
        if r % 2 == 0:
            raise SearchExhausted(f"residue class {r} mod {m} holds only even numbers")
    else:
        r, m = crt_pair(r, m, 1, 2), 2 * m

    lo, hi = 1 << (spec.bit_length - 1), 1 << spec.bit_length
    first = lo + (r - lo) % m
    count = 0 if first >= hi else (hi - 1 - first) // m + 1
    if count == 0:
        raise SearchExhausted(f"no {spec.bit_length}-bit numbers are {r} mod {m}")

    rng = random.Random(seed)
    start = rng.randrange(count)
    mr_seed = rng.getrandbits(64)
    for j in range(min(count, 64 * spec.bit_length)):
        candidate = first + ((start + j) % count) * m
        if is_probable_prime(candidate, spec.mr_rounds, mr_seed):
            return candidate
    raise SearchExhausted(
        f"no prime found among {min(count, 64 * spec.bit_length)} candidates "
        f"for {spec.bit_length} bits, {r} mod {m}"
    )
