"""Hirzebruch-Jung continued fractions and invariants of cyclic quotients 1/n(1,q).

A quotient singularity 1/n(1,q) is stored as an :class:`HJFraction` ``(n, q)``.
Its minimal resolution is a chain of rational curves with self-intersections
``-b_1, ..., -b_r`` where ``n/q = b_1 - 1/(b_2 - 1/(... - 1/b_r))``; chains are
plain tuples of ints.

Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidChain, InvalidFraction

Chain = tuple[int, ...]


@dataclass(frozen=True, order=True)
class HJFraction:
    """Normalized cyclic quotient type 1/n(1,q) with 0 < q < n, gcd(n, q) = 1."""

    n: int
    q: int

    def __post_init__(self):
        n, q = self.n, self.q
        if not isinstance(n, int) or not isinstance(q, int) or isinstance(n, bool):
            raise InvalidFraction(f"n and q must be integers, got {n!r}, {q!r}")
        if n < 2:
            raise InvalidFraction(f"n must be at least 2 (n={n}); n=1 is a smooth point")
        if not 0 < q < n:
            raise InvalidFraction(f"need 0 < q < n, got {n}/{q}")
        if gcd(n, q) != 1:
            raise InvalidFraction(f"gcd(n, q) must be 1, got gcd({n}, {q}) = {gcd(n, q)}")

    @classmethod
    def from_weights(cls, n: int, a: int, b: int) -> "HJFraction":
        """Normalize 1/n(a,b) to 1/n(1,q) with q = b * a^-1 mod n."""
        if n < 2:
            raise InvalidFraction(f"n must be at least 2 (n={n})")
        if gcd(n, a) != 1 or gcd(n, b) != 1:
            raise InvalidFraction(f"weights must be coprime to n: 1/{n}({a},{b})")
        return cls(n, b * pow(a, -1, n) % n)

    @classmethod
    def parse(cls, text: str) -> "HJFraction":
        try:
            num, den = text.strip().split("/")
            return cls(int(num), int(den))
        except ValueError as exc:
            if isinstance(exc, InvalidFraction):
                raise
            raise InvalidFraction(f"expected 'n/q', got {text!r}") from None

    def __str__(self):
        return f"{self.n}/{self.q}"


@dataclass(frozen=True)
class QuotInvariants:
    iota: int
    beta: Fraction
    gamma: int


def as_chain(weights: Iterable[int]) -> Chain:
    """Validate and freeze a resolution chain (all weights >= 2, nonempty)."""
    chain = tuple(weights)
    if not chain:
        raise InvalidChain("chain must have at least one weight")
    for b in chain:
        if not isinstance(b, (int, np.integer)) or isinstance(b, bool):
            raise InvalidChain(f"chain weights must be integers, got {b!r}")
        if b < 2:
            raise InvalidChain(f"chain weights must be >= 2, got {list(chain)}")
    return tuple(int(b) for b in chain)


def parse_chain(text: str) -> Chain:
    try:
        return as_chain(int(tok) for tok in text.strip().split(","))
    except ValueError as exc:
        if isinstance(exc, InvalidChain):
            raise
        raise InvalidChain(f"expected comma-separated integers, got {text!r}") from None


def format_chain(chain: Sequence[int]) -> str:
    return ",".join(str(b) for b in chain)


def hj_expand(f: HJFraction) -> Chain:
    n, q = f.n, f.q
    out = []
    while q:
        b = -(-n // q)
        out.append(b)
        n, q = q, b * q - n
    return tuple(out)


def hj_eval(chain: Sequence[int]) -> HJFraction:
    chain = as_chain(chain)
    n, q = chain[-1], 1
    for b in reversed(chain[:-1]):
        n, q = b * n - q, n
    return HJFraction(n, q)


def hj_eval_many(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise :func:`hj_eval` over an int64 array of equal-length chains.

    Returns the arrays ``(n, q)``. The caller is responsible for keeping
    values inside int64 range (weights <= 9 and length <= 8 is far inside).
    """
    weights = np.asarray(weights, dtype=np.int64)
    n = weights[:, -1].copy()
    q = np.ones_like(n)
    for i in range(weights.shape[1] - 2, -1, -1):
        n, q = weights[:, i] * n - q, n
    return n, q


def conjugate(f: HJFraction) -> HJFraction:
    """The other normal form 1/n(1,q') of the same singularity, q q' = 1 mod n."""
    return HJFraction(f.n, pow(f.q, -1, f.n))


def invariants(f: HJFraction) -> QuotInvariants:
    g = gcd(f.n, f.q + 1)
    return QuotInvariants(iota=f.n // g, beta=Fraction(g * g, f.n), gamma=(f.q + 1) // g)


def is_du_val(f: HJFraction) -> bool:
    return f.q == f.n - 1


def is_t_fraction(f: HJFraction) -> bool:
    divisible = (f.q + 1) ** 2 % f.n == 0
    integral_beta = invariants(f).beta.denominator == 1
    assert divisible == integral_beta, f"T tests disagree on {f}"
    return divisible and not is_du_val(f)


def is_du_val_chain(chain: Sequence[int]) -> bool:
    return all(b == 2 for b in as_chain(chain))
