import math
import random

import pytest

from cubicot import cubic_cipher as cc
from cubicot.errors import TrivialGcd
from cubicot.oblivious import factor_from_roots, ot_round, ot_success_rate
from cubicot.stats import TrialStats

import oracles


@pytest.fixture(scope="module")
def k35():
    return cc.key_from_primes(7, 5)


def test_factor_from_roots_examples():
    assert oracles.slow_pow(2, 3, 35) == oracles.slow_pow(32, 3, 35) == oracles.slow_pow(22, 3, 35) == 8
    assert factor_from_roots(2, 32, 35) == 5 == oracles.slow_gcd(30, 35)
    assert factor_from_roots(2, 22, 35) == 5 == oracles.slow_gcd(20, 35)
    with pytest.raises(TrivialGcd):
        factor_from_roots(9, 9, 35)


def _seed_picking(key, sender_root, target):
    for seed in range(1000):
        if ot_round(key, sender_root, seed).receiver_root == target:
            return seed
    raise AssertionError("no seed picks the target root")


def test_ot_round_examples(k35):
    hit = ot_round(k35, 2, _seed_picking(k35, 2, 32))
    assert hit.revealed_factor == 5 and hit.receiver_root == 32
    miss = ot_round(k35, 2, _seed_picking(k35, 2, 2))
    assert miss.revealed_factor is None and not miss.revealed


def test_ot_round_requires_composite():
    with pytest.raises(ValueError):
        ot_round(cc.key_from_primes(31), 7, 0)


def test_ot_round_outcome_invariants():
    key = cc.keygen(24, cc.COMPOSITE, 3, seed=8)
    rng = random.Random(1)
    for i in range(300):
        x = rng.randrange(1, key.n)
        if math.gcd(x, key.n) != 1:
            continue
        out = ot_round(key, x, i)
        assert out.revealed == (out.receiver_root != out.sender_root)
        if out.revealed:
            f = out.revealed_factor
            assert key.n % f == 0 and f not in (1, key.n)


def test_every_distinct_root_pair_reveals_a_factor():
    keys = [(7, 5), (31, 17), (43, 23), (67, 89), (11, 3, 5), (31, 7, 5), (71, 13, 5)]
    for spec in keys:
        p, q, a = (*spec, 3) if len(spec) == 2 else spec
        key = cc.key_from_primes(p, q, a)
        assert key.n < 10**6
        for roots in oracles.power_table(key.n, a).values():
            for x in roots:
                for y in roots:
                    if x != y:
                        g = factor_from_roots(x, y, key.n)
                        assert g in (p, q)


def test_one_trial_rate_is_zero_or_one():
    key = cc.keygen(16, cc.COMPOSITE, 3, seed=2)
    for seed in range(20):
        assert ot_success_rate(key, 1, seed).rate in (0.0, 1.0)


def test_success_rate_deterministic():
    key = cc.keygen(20, cc.COMPOSITE, 5, seed=2)
    assert ot_success_rate(key, 500, 77) == ot_success_rate(key, 500, 77)


@pytest.mark.parametrize("a", [3, 5])
def test_success_rate_within_four_sigma(a):
    expected = (a - 1) / a
    inside = 0
    runs = 20
    for run in range(runs):
        key = cc.keygen(24, cc.COMPOSITE, a, seed=run)
        stats = ot_success_rate(key, 1000, seed=run * 7919)
        inside += abs(stats.rate - expected) < 4 * stats.sigma(expected)
    assert inside >= 0.95 * runs


def test_trial_stats_validation_and_formats():
    s = TrialStats(trials=4, successes=3)
    assert s.rate == 0.75
    assert s.record(a=3, n_bits=64) == "a=3 n_bits=64 trials=4 successes=3 rate=0.750000"
    assert s.structured(a=3) == "a=3\ntrials=4\nsuccesses=3\nrate=0.750000\n"
    with pytest.raises(ValueError):
        TrialStats(trials=0, successes=0)
    with pytest.raises(ValueError):
        TrialStats(trials=2, successes=3)
