"""Replay the two small worked examples (p=31 cipher, p=19 key exchange)."""

import argparse
from dataclasses import dataclass

from cubicot import cubic_cipher as cc
from cubicot import dh_okx as okx
from cubicot import rank_coding as rc


@dataclass
class ExampleConfig:
    cipher_prime: int = 31
    message: int = 7
    okx_prime: int = 19
    generator: int = 2
    square: int = 9
    secrets: tuple = (7, 11)


def cipher_example(cfg):
    key = cc.key_from_primes(cfg.cipher_prime)
    ranked = cc.encrypt_ranked(cfg.message, key.public)
    framed = rc.encode_rank3(ranked.c, ranked.rank)
    root = cc.extract_root(ranked.c, key)
    print(f"alpha={key.public.alpha} e={key.e}")
    print(f"m={cfg.message} c={ranked.c} rank={ranked.rank} frame={framed} ({framed:b})")
    print(f"roots={cc.all_roots(ranked.c, key.public, root)} decrypted={cc.decrypt_ranked(ranked, key)}")


def okx_example(cfg):
    params = okx.okx_params(cfg.okx_prime, cfg.generator, cfg.square, 2)
    n1, n2 = cfg.secrets
    for case, (ga, gb) in enumerate([(0, 0), (1, 0), (1, 1), (0, 1)], start=1):
        ka, kb, agreed = okx.okx_session(params, okx.OkxLocal(n1, 0, ga), okx.OkxLocal(n2, 0, gb))
        print(f"case {case}: A key {ka.value}, B key {kb.value}, agreed={int(agreed)}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--message", type=int, default=ExampleConfig.message)
    args = parser.parse_args(argv)
    cfg = ExampleConfig(message=args.message)
    cipher_example(cfg)
    okx_example(cfg)


if __name__ == "__main__":
    main()
