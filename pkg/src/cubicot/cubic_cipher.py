"""The cubic (and general odd-prime power) transformation with rank selection.

A key is either a single prime ``p`` or a product ``p * q``. ``p`` is chosen so
that exactly ``a`` plaintexts share each cipher: p = 1 (mod a), p != 1 (mod a^2),
and in composite mode ``q`` is never 1 (mod a). The public unity root ``alpha``
walks between those plaintexts, and the rank (1-based position in ascending
order) tells the key holder which one was sent.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

from . import numtheory as nt
from .errors import (
    BadPrimeClass,
    DegenerateRoots,
    KeyFileError,
    NotCoprime,
    OutOfRange,
    RootCheckFailed,
    SearchExhausted,
)

KEY_FILE_VERSION = 1
PRIME = "prime"
COMPOSITE = "composite"


@dataclass(frozen=True)
class CubicPublicKey:
    n: int
    alpha: int
    a: int = 3
    mode: str = PRIME


@dataclass(frozen=True)
class CubicPrivateKey:
    public: CubicPublicKey
    p: int
    q: int | None
    phi: int
    e: int

    @property
    def n(self) -> int:
        return self.public.n

    @property
    def a(self) -> int:
        return self.public.a


@dataclass(frozen=True)
class RankedCiphertext:
    c: int
    rank: int


def _is_small_prime(a: int) -> bool:
    return a >= 3 and a % 2 == 1 and nt.is_probable_prime(a, 40)


def _check_exponent(a: int) -> None:
    if not _is_small_prime(a):
        raise ValueError(f"exponent a must be an odd prime, got {a}")


def unity_root(p: int, a: int = 3) -> int:
    """A primitive ``a``-th root of unity modulo the prime ``p``.

    For a=3 and p = 3 (mod 4) this uses the closed form from the square root of
    -3: the two primitive cube roots are (-1 +- s)/2, and the smaller is returned.
    Otherwise h^((p-1)/a) is tried for h = 2, 3, ... until it is not 1.
    """
    if p % a != 1:
        raise BadPrimeClass(f"p={p} is not 1 mod {a}")
    if a == 3 and p % 4 == 3:
        s = nt.sqrt_mod(p - 3, p)
        half = nt.mod_inv(2, p)
        return min((s - 1) * half % p, (-1 - s) * half % p)
    k = (p - 1) // a
    for h in range(2, p):
        w = pow(h, k, p)
        if w != 1:
            return w
    raise BadPrimeClass(f"no primitive {a}-th root of unity mod {p}")  # pragma: no cover


def _validate_p(p: int, a: int) -> None:
    if p % 4 != 3:
        raise BadPrimeClass(f"p={p} is not 3 mod 4")
    if p % a != 1 or p % (a * a) == 1:
        raise BadPrimeClass(f"p={p} must be 1 mod {a} and not 1 mod {a * a}")


def key_from_primes(p: int, q: int | None = None, a: int = 3) -> CubicPrivateKey:
    """Build a key from explicit primes (``q=None`` gives prime mode)."""
    _check_exponent(a)
    if not nt.is_probable_prime(p, 64):
        raise ValueError(f"p={p} is not prime")
    _validate_p(p, a)
    alpha_p = unity_root(p, a)
    if q is None:
        phi = p - 1
        pub = CubicPublicKey(n=p, alpha=alpha_p, a=a, mode=PRIME)
    else:
        if not nt.is_probable_prime(q, 64):
            raise ValueError(f"q={q} is not prime")
        if q == p:
            raise BadPrimeClass("q must differ from p")
        if q % a == 1:
            raise BadPrimeClass(f"q={q} must not be 1 mod {a}")
        phi = (p - 1) * (q - 1)
        # alpha = 1 mod q, so alpha - 1 carries the factor q
        alpha = nt.crt_pair(alpha_p, p, 1, q)
        pub = CubicPublicKey(n=p * q, alpha=alpha, a=a, mode=COMPOSITE)
    e = nt.mod_inv(a, phi // a)
    return CubicPrivateKey(public=pub, p=p, q=q, phi=phi, e=e)


def keygen(bits_per_prime: int, mode: str = PRIME, a: int = 3, seed: int = 0) -> CubicPrivateKey:
    """Generate a key deterministically from ``seed``."""
    _check_exponent(a)
    if mode not in (PRIME, COMPOSITE):
        raise ValueError(f"mode must be 'prime' or 'composite', got {mode!r}")
    rng = random.Random(seed)
    # p mod a^2 is one of 1 + a*k (k = 1..a-1); q mod a is anything but 0 or 1
    p = _prime_in_some_class(
        bits_per_prime, [((4, 3), (a * a, 1 + a * k)) for k in range(1, a)], rng
    )
    if mode == PRIME:
        return key_from_primes(p, None, a)
    q = _prime_in_some_class(bits_per_prime, [((a, r),) for r in range(2, a)], rng)
    return key_from_primes(p, q, a)


def _prime_in_some_class(bits: int, classes: list, rng: random.Random) -> int:
    """Try the allowed residue classes in random order; small sizes can leave some empty."""
    classes = list(classes)
    rng.shuffle(classes)
    seeds = [rng.getrandbits(64) for _ in classes]
    for congruences, seed in zip(classes, seeds):
        try:
            return nt.gen_prime(nt.PrimeSpec(bits, congruences), seed)
        except SearchExhausted as exc:
            last = exc
    raise last


def encrypt(m: int, pub: CubicPublicKey) -> int:
    if not 1 <= m < pub.n:
        raise OutOfRange(f"plaintext must be in [1, {pub.n - 1}], got {m}")
    if pub.mode == COMPOSITE and math.gcd(m, pub.n) != 1:
        raise NotCoprime("plaintext shares a factor with the modulus")
    return pow(m, pub.a, pub.n)


def extract_root(c: int, priv: CubicPrivateKey) -> int:
    """One ``a``-th root of ``c``, checked before it is returned."""
    r = pow(c, priv.e, priv.n)
    if pow(r, priv.a, priv.n) != c % priv.n:
        raise RootCheckFailed(f"{c} has no {priv.a}-th root reachable with this key")
    return r


def all_roots(c: int, pub: CubicPublicKey, one_root: int) -> list[int]:
    if pow(one_root, pub.a, pub.n) != c % pub.n:
        raise RootCheckFailed(f"{one_root} is not an {pub.a}-th root of {c}")
    roots = []
    x = one_root % pub.n
    for _ in range(pub.a):
        roots.append(x)
        x = x * pub.alpha % pub.n
    roots.sort()
    if len(set(roots)) != pub.a:
        raise DegenerateRoots(f"roots of {c} collapse: {roots}")
    return roots


def rank_of(m: int, pub: CubicPublicKey) -> int:
    return all_roots(encrypt(m, pub), pub, m).index(m) + 1


def encrypt_ranked(m: int, pub: CubicPublicKey) -> RankedCiphertext:
    c = encrypt(m, pub)
    return RankedCiphertext(c=c, rank=all_roots(c, pub, m).index(m) + 1)


def decrypt_ranked(rc: RankedCiphertext, priv: CubicPrivateKey) -> int:
    if not 1 <= rc.rank <= priv.a:
        raise OutOfRange(f"rank must be in [1, {priv.a}], got {rc.rank}")
    roots = all_roots(rc.c, priv.public, extract_root(rc.c, priv))
    return roots[rc.rank - 1]


def alpha_order(alpha: int, n: int, limit: int = 1 << 16) -> int:
    """Multiplicative order of ``alpha``; recovers ``a`` from a published (n, alpha)."""
    x = alpha % n
    for i in range(1, limit + 1):
        if x == 1:
            return i
        x = x * alpha % n
    raise ValueError(f"order of {alpha} mod {n} exceeds {limit}")


def public_from(n: int, alpha: int) -> CubicPublicKey:
    """Reconstruct a public key from the two published values."""
    a = alpha_order(alpha, n)
    _check_exponent(a)
    mode = PRIME if nt.is_probable_prime(n, 40) else COMPOSITE
    return CubicPublicKey(n=n, alpha=alpha, a=a, mode=mode)


# key files: one name=value per line, fixed order

_PUBLIC_FIELDS = ("version", "mode", "a", "n", "alpha")
_PRIVATE_FIELDS = _PUBLIC_FIELDS + ("p", "q", "phi", "e")


def dump_key(key: CubicPrivateKey | CubicPublicKey) -> str:
    pub = key.public if isinstance(key, CubicPrivateKey) else key
    values = {
        "version": KEY_FILE_VERSION,
        "mode": pub.mode,
        "a": pub.a,
        "n": pub.n,
        "alpha": pub.alpha,
    }
    if isinstance(key, CubicPrivateKey):
        # prime mode stores q=1 so that n = p*q still reads true
        values.update(p=key.p, q=key.q or 1, phi=key.phi, e=key.e)
    return "".join(f"{name}={value}\n" for name, value in values.items())


def load_key(text: str) -> CubicPrivateKey | CubicPublicKey:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    pairs = []
    for ln in lines:
        name, sep, value = ln.partition("=")
        if not sep:
            raise KeyFileError(f"malformed line {ln!r}")
        pairs.append((name, value))
    names = tuple(name for name, _ in pairs)
    if names not in (_PUBLIC_FIELDS, _PRIVATE_FIELDS):
        raise KeyFileError(f"unexpected fields or order: {names}")
    fields = dict(pairs)
    if fields["version"] != str(KEY_FILE_VERSION):
        raise KeyFileError(f"unsupported key file version {fields['version']}")
    mode = fields["mode"]
    if mode not in (PRIME, COMPOSITE):
        raise KeyFileError(f"bad mode {mode!r}")
    try:
        ints = {k: int(v) for k, v in fields.items() if k not in ("version", "mode")}
    except ValueError as exc:
        raise KeyFileError(str(exc)) from None

    pub = CubicPublicKey(n=ints["n"], alpha=ints["alpha"], a=ints["a"], mode=mode)
    if names == _PUBLIC_FIELDS:
        return pub
    q = None if mode == PRIME else ints["q"]
    priv = key_from_primes(ints["p"], q, ints["a"])
    if priv.public != pub or (priv.phi, priv.e) != (ints["phi"], ints["e"]):
        raise KeyFileError("key file fields are inconsistent with p and q")
    return priv


def save_key(key: CubicPrivateKey | CubicPublicKey, path: str | Path) -> None:
    Path(path).write_text(dump_key(key))


def read_key(path: str | Path) -> CubicPrivateKey | CubicPublicKey:
    return load_key(Path(path).read_text())
