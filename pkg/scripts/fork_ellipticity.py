"""Which forks with a (-1) center and single-vertex arms are definite.

Rooted at the center the only pivot that can fail is 1 - 1/a - 1/b - 1/c,
so the fork is definite exactly when 1/a + 1/b + 1/c < 1; the script checks
that against the form classifier.
"""
from __future__ import annotations

import argparse
import itertools
from fractions import Fraction

from tconic.graph import ELLIPTIC, WeightedGraph, classify_form


def run(max_arm: int) -> None:
    for a, b, c in itertools.combinations_with_replacement(range(1, max_arm + 1), 3):
        tag = classify_form(WeightedGraph.fork(1, [a], [b], [c])).tag
        pivot = 1 - Fraction(1, a) - Fraction(1, b) - Fraction(1, c)
        assert (tag == ELLIPTIC) == (pivot > 0)
        if tag == ELLIPTIC:
            print(f"[1|{a}|{b}|{c}]  center pivot {pivot}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-arm", type=int, default=5)
    run(p.parse_args().max_arm)
