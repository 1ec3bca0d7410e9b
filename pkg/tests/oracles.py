"""Brute-force reference computations. Deliberately naive: no shared code with the package."""

from collections import defaultdict


def slow_pow(base, exp, modulus):
    result = 1 % modulus
    for _ in range(exp):
        result = result * base % modulus
    return result


def slow_inv(a, modulus):
    for b in range(1, modulus):
        if a * b % modulus == 1:
            return b
    return None


def slow_gcd(x, y):
    d = min(x, y)
    while d > 1:
        if x % d == 0 and y % d == 0:
            return d
        d -= 1
    return max(x, y) if min(x, y) == 0 else 1


def trial_division_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_below(limit):
    return [n for n in range(2, limit) if trial_division_prime(n)]


def square_roots(a, p):
    return sorted(x for x in range(p) if x * x % p == a % p)


def power_table(n, a):
    """Map every a-th power of a unit mod n to the full sorted list of its a-th roots."""
    table = defaultdict(list)
    for x in range(1, n):
        if slow_gcd(x, n) == 1:
            table[slow_pow(x, a, n)].append(x)
    return dict(table)


def unity_roots(n, a):
    return sorted(x for x in range(1, n) if slow_pow(x, a, n) == 1)


def order(g, p):
    x, k = g % p, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


def crt_search(r1, m1, r2, m2):
    for x in range(m1 * m2):
        if x % m1 == r1 and x % m2 == r2:
            return x
    return None
