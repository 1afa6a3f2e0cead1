"""Index-two fibers with a non-Du-Val point, grouped by family.

    python scripts/index2_classification.py --max-vertices 10 --max-weight 6

Unlike ``classify_index2`` this never raises: unlabeled graphs are listed
with their multiplicities and loads so they can be inspected by hand.
"""
from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from tconic.classify import SearchBounds, enumerate_fibers
from tconic.lcb import UNCLASSIFIED


@dataclass(frozen=True)
class Config:
    max_vertices: int = 10
    max_weight: int = 6
    workers: int | None = None


def run(cfg: Config) -> int:
    start = time.perf_counter()
    bounds = SearchBounds(cfg.max_vertices, cfg.max_weight, index_filter=2, require_non_du_val=True)
    hits = enumerate_fibers(bounds, cfg.workers)
    counts = Counter(h.family.tag for h in hits)
    print(f"bounds: {cfg.max_vertices} vertices, weights <= {cfg.max_weight}")
    for tag, k in sorted(counts.items()):
        print(f"  {tag:<14} {k}")
    gaps = [h for h in hits if h.family.tag == UNCLASSIFIED]
    for h in gaps:
        a = h.analysis
        print(f"unlabeled {h.code}")
        print(f"  weights        {dict(a.graph.weights)}")
        print(f"  multiplicities {dict(a.multiplicities)}")
        print(f"  loads          {{{', '.join(f'{v}: {x}' for v, x in a.delta_dot_l.items())}}}")
        print(f"  singular       {a.singular_chains}")
    print(f"{len(hits)} graphs, {len(gaps)} unlabeled, {time.perf_counter() - start:.1f} s")
    return 1 if gaps else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, default=Config.max_vertices)
    p.add_argument("--max-weight", type=int, default=Config.max_weight)
    p.add_argument("--workers", type=int, default=None)
    args = p.parse_args()
    raise SystemExit(run(Config(args.max_vertices, args.max_weight, args.workers)))
