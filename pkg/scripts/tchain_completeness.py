"""Compare the T-step generator with a brute-force filter, length by length.

The brute force tries every chain with weights in [2, max_weight] and keeps
those with gcd(n, q+1)^2 divisible by n, excluding all-2 chains.
"""
from __future__ import annotations

import argparse
import itertools
import time
from collections import Counter
from dataclasses import dataclass
from math import gcd

from tconic.hj import hj_eval
from tconic.tchain import enumerate_tchains


@dataclass(frozen=True)
class Config:
    max_len: int = 7
    max_weight: int = 9


def brute(cfg: Config) -> set[tuple[int, ...]]:
    out = set()
    for r in range(1, cfg.max_len + 1):
        for c in itertools.product(range(2, cfg.max_weight + 1), repeat=r):
            if all(b == 2 for b in c):
                continue
            f = hj_eval(c)
            if gcd(f.n, f.q + 1) ** 2 % f.n == 0:
                out.add(c)
    return out


def run(cfg: Config) -> int:
    start = time.perf_counter()
    gen = {c for c in enumerate_tchains(cfg.max_len) if max(c) <= cfg.max_weight}
    ref = brute(cfg)
    g, b = Counter(map(len, gen)), Counter(map(len, ref))
    print("len  generated  brute")
    for r in range(1, cfg.max_len + 1):
        print(f"{r:>3}  {g[r]:>9}  {b[r]:>5}")
    missing, extra = ref - gen, gen - ref
    print(f"missing {sorted(missing)[:5]}, extra {sorted(extra)[:5]}, {time.perf_counter() - start:.1f} s")
    return 1 if missing or extra else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-len", type=int, default=Config.max_len)
    p.add_argument("--max-weight", type=int, default=Config.max_weight)
    a = p.parse_args()
    raise SystemExit(run(Config(a.max_len, a.max_weight)))
