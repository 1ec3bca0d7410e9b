"""Measure the oblivious transfer success rate across key sizes and unity orders.

Each row reports the observed rate next to (a-1)/a and the binomial sigma.
"""

import argparse
from dataclasses import dataclass, field

from cubicot import cubic_cipher as cc
from cubicot.oblivious import ot_success_rate


@dataclass
class OtStudyConfig:
    bits: list = field(default_factory=lambda: [16, 32, 64])
    orders: list = field(default_factory=lambda: [3, 5, 7])
    trials: int = 10_000
    seed: int = 0x5EED


def run_study(cfg):
    rows = []
    for a in cfg.orders:
        for bits in cfg.bits:
            key = cc.keygen(bits, cc.COMPOSITE, a, seed=cfg.seed ^ (a << 16) ^ bits)
            stats = ot_success_rate(key, cfg.trials, seed=cfg.seed)
            expected = (a - 1) / a
            rows.append((a, key.n.bit_length(), stats, expected))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bits", type=int, nargs="+", default=OtStudyConfig().bits)
    parser.add_argument("--orders", type=int, nargs="+", default=OtStudyConfig().orders)
    parser.add_argument("--trials", type=int, default=OtStudyConfig.trials)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=OtStudyConfig.seed)
    args = parser.parse_args(argv)
    cfg = OtStudyConfig(args.bits, args.orders, args.trials, args.seed)
    for a, n_bits, stats, expected in run_study(cfg):
        z = (stats.rate - expected) / stats.sigma(expected)
        print(f"{stats.record(a=a, n_bits=n_bits)} expected={expected:.6f} z={z:+.2f}")


if __name__ == "__main__":
    main()
