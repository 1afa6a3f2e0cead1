"""Bounded exhaustive search for T-conic bundle fiber graphs.

The search grows trees block by block instead of vertex by vertex. A block
is either a whole white chain (a T-chain or an A_n chain that fits the
bounds) or a single black vertex, and blocks only meet along black-white
edges. Two facts keep this complete and cheap:

* in a connected parabolic graph every proper connected subgraph is
  negative definite, so a state with a zero or positive direction is either
  a finished candidate or dead;
* codiscrepancies of a chain depend on the chain alone, so the running sum
  of ``d`` around a black vertex only grows and ``>= 1`` kills the branch.

Work is split by the largest chain of the final graph (its "seed"), which
makes partitions disjoint; each partition runs in its own worker and the
merged output is sorted by canonical encoding, so results never depend on
``TCONIC_WORKERS``.
"""
from __future__ import annotations

import os
from collections import Counter
from functools import lru_cache
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .discrepancy import solve_codiscrepancy
from .errors import BoundsTooLarge, ClassificationGap, NotFound
from .graph import WeightedGraph, canonical_form, from_canonical, tree_pivots
from .hj import Chain, as_chain, hj_eval, invariants, is_du_val_chain
from .lcb import (
    UNCLASSIFIED,
    FamilyLabel,
    FiberAnalysis,
    analyze,
    construction_step,
    family_graph,
    family_match,
)
from .tchain import certify, enumerate_tchains

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class SearchBounds:
    max_vertices: int
    max_weight: int
    index_filter: Optional[int] = None
    require_irreducible_fiber: bool = False
    require_non_du_val: bool = False
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_vertices < 2:
            raise ValueError("max_vertices must be >= 2")
        if self.max_weight < 2:
            raise ValueError("max_weight must be >= 2")
        if self.index_filter is not None and self.index_filter < 1:
            raise ValueError("index_filter must be positive")

    def accepts(self, a: FiberAnalysis) -> bool:
        if not a.t_conic_bundle or len(a.graph) > self.max_vertices:
            return False
        if any(w > self.max_weight for w in a.graph.weights.values()):
            return False
        if self.index_filter is not None and a.index != self.index_filter:
            return False
        if self.require_irreducible_fiber and len(a.graph.blacks) != 1:
            return False
        if self.require_non_du_val and a.non_du_val_count < 1:
            return False
        return True


@dataclass(frozen=True)
class Hit:
    code: str
    graph: WeightedGraph
    analysis: FiberAnalysis
    family: FamilyLabel


def _chain_key(c: Chain) -> tuple:
    return (not is_du_val_chain(c), len(c), c)


def admissible_chains(b: SearchBounds) -> list[Chain]:
    """White chains that may occur, one orientation each, sorted by search key."""
    longest = b.max_vertices - 1
    out = {(2,) * k for k in range(1, longest + 1)}
    for c in enumerate_tchains(longest):
        if max(c) <= b.max_weight:
            out.add(min(c, c[::-1]))
    if b.index_filter is not None:
        out = {c for c in out if b.index_filter % invariants(hj_eval(c)).iota == 0}
    return sorted(out, key=_chain_key)


@dataclass
class _Partition:
    """Graphs whose largest white chain is ``seed``; ``chains`` are those <= seed."""

    seed: Chain
    chains: list[Chain]
    bounds: SearchBounds


def _negative_definite(g: WeightedGraph) -> Optional[bool]:
    """True when definite, False when parabolic, None otherwise."""
    root = g.vertices[0]
    e = tree_pivots(g, root)
    if any(e[v] <= 0 for v in e if v != root) or len(e) < len(g):
        return None
    if e[root] > 0:
        return True
    return False if e[root] == 0 else None


@lru_cache(maxsize=None)
def _chain_data(c: Chain) -> tuple[tuple[Fraction, Fraction], ...]:
    """(d_j, 1/e_j) per vertex; e_j is the pivot of vertex j in ``c`` rooted at j."""
    g = WeightedGraph.chain(c)
    d = solve_codiscrepancy(g)
    return tuple((d[j], 1 / tree_pivots(g, j)[j]) for j in range(len(c)))


def _search_partition(part: _Partition) -> tuple[list[str], int]:
    b = part.bounds
    data = {c: _chain_data(c) for c in part.chains}
    seed = part.seed
    start = WeightedGraph.chain(seed)
    # per white vertex: (codiscrepancy, 1/pivot inside its own chain)
    states = [(start, dict(enumerate(data[seed])))]
    seen = {canonical_form(start)}
    found: list[str] = []
    expanded = 0
    while states:
        g, wmap = states.pop()
        expanded += 1
        if expanded > b.budget:
            raise BoundsTooLarge(
                f"more than {b.budget} partial trees; lower max_vertices or max_weight"
            )
        for h, hmap in _children(g, wmap, part, data):
            code = canonical_form(h)
            if code in seen:
                continue
            seen.add(code)
            verdict = _negative_definite(h)
            if verdict is None:
                continue
            if verdict is False:
                found.append(code)
            else:
                states.append((h, hmap))
    return found, expanded


def _children(g: WeightedGraph, wmap, part: _Partition, data):
    b = part.bounds
    size = len(g)
    blacks = g.blacks
    # Delta.L so far, and the pivot a black would get from its star alone;
    # both only grow, and the star must stay semi-definite
    load = {v: sum((wmap[u][0] for u in g.neighbors(v)), Fraction(0)) for v in blacks}
    star = {v: sum((wmap[u][1] for u in g.neighbors(v)), Fraction(0)) for v in blacks}
    if size < b.max_vertices and not (b.require_irreducible_fiber and blacks):
        new = g.fresh_vertex()
        for w in g.whites:
            weights = g.weights
            weights[new] = 1
            yield WeightedGraph(weights, list(g.edges) + [(w, new)]), wmap
    for c in part.chains:
        if size + len(c) > b.max_vertices:
            continue
        dc = data[c]
        for v in blacks:
            for i in range(len(c) if c != c[::-1] else (len(c) + 1) // 2):
                if load[v] + dc[i][0] >= 1 or star[v] + dc[i][1] > 1:
                    continue
                base = g.fresh_vertex()
                weights = g.weights
                edges = list(g.edges)
                hmap = dict(wmap)
                for j, w in enumerate(c):
                    weights[base + j] = w
                    hmap[base + j] = dc[j]
                    if j:
                        edges.append((base + j - 1, base + j))
                edges.append((v, base + i))
                yield WeightedGraph(weights, edges), hmap


def _workers() -> int:
    raw = os.environ.get("TCONIC_WORKERS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def enumerate_fibers(b: SearchBounds, workers: Optional[int] = None) -> list[Hit]:
    """All weighted trees within ``b`` that are T-conic bundle fibers, up to isomorphism."""
    chains = admissible_chains(b)
    seeds = chains
    if b.require_non_du_val:
        seeds = [c for c in chains if not is_du_val_chain(c)]
    # chains come sorted by key, so the ones allowed next to a seed form a prefix
    parts = [_Partition(s, chains[: chains.index(s) + 1], b) for s in seeds]
    workers = _workers() if workers is None else workers
    codes: set[str] = set()
    total = 0
    if workers > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_partition, parts))
    else:
        results = [_search_partition(p) for p in parts]
    for found, expanded in results:
        codes.update(found)
        total += expanded
        if total > b.budget:
            raise BoundsTooLarge(f"more than {b.budget} partial trees")
    # the lone fiber with no white part at all
    codes.add(canonical_form(WeightedGraph.chain([1, 1])))
    hits = []
    for code in sorted(codes):
        g = from_canonical(code)
        a = analyze(g)
        if not b.accepts(a):
            continue
        hits.append(Hit(code, g, a, family_match(a)))
    return hits


@dataclass(frozen=True)
class Index2Report:
    max_vertices: int
    max_weight: int
    hits: tuple[Hit, ...]

    @property
    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(h.family.tag for h in self.hits).items()))


def classify_index2(max_vertices: int, max_weight: int = 6, workers: Optional[int] = None) -> Index2Report:
    """Search index-two fibers with a non-Du-Val point and label every hit.

    Raises :class:`ClassificationGap` listing every unlabeled graph.
    """
    bounds = SearchBounds(max_vertices, max_weight, index_filter=2, require_non_du_val=True)
    hits = enumerate_fibers(bounds, workers)
    gaps = [h for h in hits if h.family.tag == UNCLASSIFIED]
    if gaps:
        raise ClassificationGap(
            f"{len(gaps)} index-two graphs match no family", [h.graph for h in gaps]
        )
    return Index2Report(max_vertices, max_weight, tuple(hits))


def ex23_first() -> WeightedGraph:
    """Two non-Du-Val points: [4] and [2,3,2,4].

    Black leaf on the [4], a black joining [4] to the 2-end of the long
    chain, three black leaves on its 4-end (two leave the form definite).
    """
    w = {0: 2, 1: 3, 2: 2, 3: 4, 4: 1, 5: 1, 6: 1, 7: 1, 8: 4, 9: 1}
    e = [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6), (0, 7), (7, 8), (8, 9)]
    return WeightedGraph(w, e)


def ex23_second() -> WeightedGraph:
    """Three non-Du-Val points: [5,2], [3,5,2] and [4].

    Two black leaves on the outer 5, blacks joining the chains in a row
    [5,2]-[3,5,2]-[4], one black leaf on the inner 5 and one on the [4].
    """
    w = {0: 5, 1: 2, 2: 3, 3: 5, 4: 2, 5: 4, 6: 1, 7: 1, 8: 1, 9: 1, 10: 1, 11: 1}
    e = [
        (0, 1), (2, 3), (3, 4),
        (1, 6), (6, 2), (4, 7), (7, 5),
        (0, 8), (0, 9), (3, 10), (5, 11),
    ]
    return WeightedGraph(w, e)


@dataclass(frozen=True)
class MultiSingularReport:
    max_vertices: int
    max_weight: int
    by_count: dict[int, int]
    examples_present: dict[str, bool]


def scan_multi_singular(max_vertices: int, max_weight: int = 5, workers: Optional[int] = None) -> MultiSingularReport:
    """Group fibers within bounds by their number of non-Du-Val points."""
    hits = enumerate_fibers(SearchBounds(max_vertices, max_weight), workers)
    by_count = dict(sorted(Counter(h.analysis.non_du_val_count for h in hits).items()))
    codes = {h.code for h in hits}
    present = {}
    for name, g, want in (("two", ex23_first(), 2), ("three", ex23_second(), 3)):
        a = analyze(g)
        assert a.t_conic_bundle and a.non_du_val_count == want, f"example graph {name} fails"
        fits = len(g) <= max_vertices and max(g.weights.values()) <= max_weight
        present[name] = canonical_form(g) in codes
        assert present[name] == fits, f"example graph {name} missing from the search"
    return MultiSingularReport(max_vertices, max_weight, by_count, present)


@dataclass(frozen=True)
class Realization:
    target: Chain
    seed: Chain
    word: str
    analyses: tuple[FiberAnalysis, ...]

    @property
    def final(self) -> FiberAnalysis:
        return self.analyses[-1]


def realize_tchain(target: Sequence[int], max_steps: int = 64) -> Realization:
    """Fiber with a single singular point of type ``target``.

    Starts from the I* graph on the seed of ``target`` and replays its step
    word; an ``a`` step hangs the old chain from the black leaf next to the
    chain's first vertex, a ``b`` step from the leaf next to its last one.
    """
    c = as_chain(target)
    cert = certify(c)
    if len(cert.word) > max_steps:
        raise NotFound(f"derivation of {list(c)} needs {len(cert.word)} steps > {max_steps}")
    a = analyze(family_graph("I*", cert.seed))
    # vertex ids of the current chain, in seed-word orientation
    path = list(range(len(cert.seed)))
    history = [a]
    for letter in cert.word:
        g = a.graph
        near, far = (path[0], path[-1]) if letter == "a" else (path[-1], path[0])
        leaf = next(u for u in g.neighbors(near) if g.is_black(u) and g.degree(u) == 1)
        a = construction_step(a, leaf, far)
        path = [leaf] + path if letter == "a" else path + [leaf]
        history.append(a)
    chains = a.singular_chains
    if a.singular_points != 1 or chains[0] not in (c, c[::-1]):
        raise NotFound(f"construction ended at {chains}, not {list(c)}")
    return Realization(c, cert.seed, cert.word, tuple(history))
