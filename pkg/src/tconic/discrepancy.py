"""Codiscrepancies of the white (exceptional) part of a fiber graph.

For every white vertex ``i`` the codiscrepancy vector ``d`` solves
``sum_j d_j (E_j . E_i) = 2 - b_i`` over the white vertices of its component;
log discrepancies are ``alpha_i = 1 - d_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import NotApplicable, SingularSystem
from .graph import WeightedGraph, _rooted
from .hj import Chain, HJFraction, as_chain, hj_eval


@dataclass(frozen=True)
class WhiteComponent:
    """Connected component of the white subgraph.

    For path components ``vertices`` runs end to end starting from the end
    with the smaller id and ``chain`` holds the weights in that order.
    """

    vertices: tuple[int, ...]
    weights: tuple[int, ...]
    is_chain: bool

    @property
    def chain(self) -> Chain:
        if not self.is_chain:
            raise NotApplicable("component is not a chain")
        return self.weights

    @property
    def reversed_chain(self) -> Chain:
        return self.chain[::-1]

    @property
    def ends(self) -> tuple[int, int]:
        if not self.is_chain:
            raise NotApplicable("component is not a chain")
        return self.vertices[0], self.vertices[-1]

    @property
    def is_du_val(self) -> bool:
        return all(w == 2 for w in self.weights)


def white_components(g: WeightedGraph) -> list[WhiteComponent]:
    whites = set(g.whites)
    seen: set[int] = set()
    out = []
    for start in sorted(whites):
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            for u in g.neighbors(todo.pop()):
                if u in whites and u not in comp:
                    comp.add(u)
                    todo.append(u)
        seen |= comp
        sub = g.subgraph(comp)
        if sub.is_path():
            order = sub.path_order()
            out.append(WhiteComponent(order, tuple(g.weight(v) for v in order), True))
        else:
            order = tuple(sorted(comp))
            out.append(WhiteComponent(order, tuple(g.weight(v) for v in order), False))
    return out


def _solve_tree(sub: WeightedGraph) -> dict[int, Fraction]:
    """Solve M d = (2 - b) on a tree by leaf-to-root substitution."""
    root = sub.vertices[0]
    order, parent = _rooted(sub, root)
    slope: dict[int, Fraction] = {}
    offset: dict[int, Fraction] = {}
    diag = {v: Fraction(-sub.weight(v)) for v in order}
    rhs = {v: Fraction(2 - sub.weight(v)) for v in order}
    for v in reversed(order):
        if diag[v] == 0:
            raise SingularSystem(f"zero pivot at vertex {v}")
        # d_v = (rhs_v - d_parent) / diag_v once the children are folded in
        slope[v] = -1 / diag[v]
        offset[v] = rhs[v] / diag[v]
        p = parent[v]
        if p is not None:
            diag[p] += slope[v]
            rhs[p] -= offset[v]
    d = {}
    for v in order:
        p = parent[v]
        d[v] = offset[v] + (slope[v] * d[p] if p is not None else 0)
    return d


def solve_codiscrepancy(g: WeightedGraph) -> dict[int, Fraction]:
    """Codiscrepancy of every white vertex; black vertices are excluded."""
    out: dict[int, Fraction] = {}
    for comp in white_components(g):
        sub = g.subgraph(comp.vertices)
        if not sub.is_tree():
            raise SingularSystem("white component is not a tree")
        d = _solve_tree(sub)
        if comp.is_chain:
            assert all(0 <= x < 1 for x in d.values()), f"codiscrepancy out of [0,1): {d}"
        if comp.is_du_val and comp.is_chain:
            assert all(x == 0 for x in d.values())
        out.update(d)
    return dict(sorted(out.items()))


def log_discrepancies(chain: Sequence[int]) -> tuple[Fraction, ...]:
    """alpha_1..alpha_r of a resolution chain, via the linear solver."""
    c = as_chain(chain)
    d = solve_codiscrepancy(WeightedGraph.chain(c))
    return tuple(1 - d[i] for i in range(len(c)))


def component_fraction(component: Union[WhiteComponent, Sequence[int]]) -> HJFraction:
    if isinstance(component, WhiteComponent):
        return hj_eval(component.chain)
    return hj_eval(component)


def chain_alpha_numerators(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact log discrepancies of many equal-length chains at once.

    Returns ``(N, n)`` with ``alpha_i = N[:, i] / n`` for i = 0..r-1. The
    system ``b_i alpha_i = alpha_{i-1} + alpha_{i+1}`` with
    ``alpha_0 = alpha_{r+1} = 1`` is solved by forward elimination
    (continuants ``p_i``) and back substitution
    ``n alpha_i = (p_{i-1} n alpha_{i+1} + n) / p_i``, every division exact.
    """
    b = np.asarray(weights, dtype=np.int64)
    m, r = b.shape
    if r and int(b.max()) ** r >= 2**31:
        raise OverflowError("chains too long or heavy for int64 elimination")
    p = np.empty((m, r + 1), dtype=np.int64)
    p[:, 0] = 1
    for i in range(r):
        before = p[:, i - 1] if i else 0
        p[:, i + 1] = b[:, i] * p[:, i] - before
    n = p[:, r]
    num = np.empty((m, r + 2), dtype=np.int64)
    num[:, r + 1] = n
    for i in range(r, 0, -1):
        q, rem = np.divmod(p[:, i - 1] * num[:, i + 1] + n, p[:, i])
        assert not rem.any(), "inexact division in chain elimination"
        num[:, i] = q
    return num[:, 1 : r + 1], n
