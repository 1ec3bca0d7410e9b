"""Measure how often the oblivious key exchange ends with equal keys.

Under independent guesses the agreement rate should sit near 1/a^2.
"""

import argparse
from dataclasses import dataclass, field

from cubicot import dh_okx as okx
from cubicot import numtheory as nt


@dataclass
class OkxStudyConfig:
    bits: int = 32
    orders: list = field(default_factory=lambda: [2, 3])
    generator: int = 2
    trials: int = 10_000
    seed: int = 0x5EED


def prime_for(a, bits, seed):
    if a == 2:
        congruences = ((4, 3),)
    else:
        # p = 1 mod a but not 1 mod a^2
        congruences = ((a * a, 1 + a),)
    return nt.gen_prime(nt.PrimeSpec(bits, congruences), seed=seed)


def run_study(cfg):
    rows = []
    for a in cfg.orders:
        p = prime_for(a, cfg.bits, cfg.seed ^ a)
        params = okx.okx_setup(p, cfg.generator, a, seed=cfg.seed)
        rows.append((params, okx.okx_agreement_rate(params, cfg.trials, seed=cfg.seed)))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bits", type=int, default=OkxStudyConfig.bits)
    parser.add_argument("--orders", type=int, nargs="+", default=OkxStudyConfig().orders)
    parser.add_argument("--generator", type=int, default=OkxStudyConfig.generator)
    parser.add_argument("--trials", type=int, default=OkxStudyConfig.trials)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=OkxStudyConfig.seed)
    args = parser.parse_args(argv)
    cfg = OkxStudyConfig(args.bits, args.orders, args.generator, args.trials, args.seed)
    for params, stats in run_study(cfg):
        expected = 1 / params.a**2
        print(f"{stats.record(a=params.a, p=params.p)} expected={expected:.6f}")


if __name__ == "__main__":
    main()
