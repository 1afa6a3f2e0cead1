"""T-chains: recognition, the two extension steps, and derivation certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotATChain
from .hj import Chain, as_chain, conjugate, hj_eval, is_t_fraction

SEED_FOUR: Chain = (4,)


def t_step_a(chain: Sequence[int]) -> Chain:
    """[b1,...,br] -> [2,b1,...,br+1]."""
    c = as_chain(chain)
    return (2,) + c[:-1] + (c[-1] + 1,)


def t_step_b(chain: Sequence[int]) -> Chain:
    """[b1,...,br] -> [b1+1,...,br,2]."""
    c = as_chain(chain)
    return (c[0] + 1,) + c[1:] + (2,)


STEPS = {"a": t_step_a, "b": t_step_b}


def is_t_chain(chain: Sequence[int]) -> bool:
    return is_t_fraction(hj_eval(chain))


def is_seed(chain: Sequence[int]) -> bool:
    """True for the index-two chains [4] and [3,2,...,2,3]."""
    c = tuple(chain)
    if c == SEED_FOUR:
        return True
    return len(c) >= 2 and c[0] == 3 and c[-1] == 3 and all(b == 2 for b in c[1:-1])


def seed_chain(k: int) -> Chain:
    """[3, 2^k, 3]."""
    return (3,) + (2,) * k + (3,)


def seeds(max_len: int) -> list[Chain]:
    out = [SEED_FOUR] if max_len >= 1 else []
    out += [seed_chain(k) for k in range(max_len - 1)]
    return out


@dataclass(frozen=True)
class TChainCertificate:
    """A chain together with the seed and the step word that produce it."""

    chain: Chain
    seed: Chain
    word: str

    def replay(self) -> Chain:
        c = self.seed
        for letter in self.word:
            c = STEPS[letter](c)
        return c

    @property
    def seed_descriptor(self) -> str:
        if self.seed == SEED_FOUR:
            return "[4]"
        k = len(self.seed) - 2
        return f"[3,2^{k},3]"


def certify(chain: Sequence[int]) -> TChainCertificate:
    """Peel extension steps off ``chain`` down to a seed.

    Raises :class:`NotATChain` when the peeling gets stuck, which happens
    exactly for non-T chains.
    """
    c = as_chain(chain)
    original = c
    undone = []
    while not is_seed(c):
        if len(c) >= 2 and c[0] == 2 and c[-1] >= 3:
            c = c[1:-1] + (c[-1] - 1,)
            undone.append("a")
        elif len(c) >= 2 and c[-1] == 2 and c[0] >= 3:
            c = (c[0] - 1,) + c[1:-1]
            undone.append("b")
        else:
            raise NotATChain(f"{list(original)} is not a T-chain")
    cert = TChainCertificate(original, c, "".join(reversed(undone)))
    assert cert.replay() == original
    return cert


def enumerate_tchains(max_len: int) -> list[Chain]:
    """All T-chains of length <= max_len, sorted lexicographically.

    Built by closing the seeds under both steps; a chain and its reversal are
    kept as distinct entries.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found = set(seeds(max_len))
    frontier = sorted(found)
    while frontier:
        grown = []
        for c in frontier:
            if len(c) >= max_len:
                continue
            for step in (t_step_a, t_step_b):
                d = step(c)
                if d not in found:
                    found.add(d)
                    grown.append(d)
        frontier = grown
    return sorted(found)


def endpoint_alphas(chain: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Log discrepancies at the two ends: ((q+1)/n, (q'+1)/n)."""
    f = hj_eval(chain)
    g = conjugate(f)
    return Fraction(f.q + 1, f.n), Fraction(g.q + 1, f.n)
