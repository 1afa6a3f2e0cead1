"""Weighted graphs of rational curves: quadratic form, blow-ups, canonical form.

A vertex of weight ``b`` is a smooth rational curve of self-intersection
``-b``; an edge is a transversal intersection point. Weight-1 vertices are
*black*, the others *white*. Vertex ids are non-negative ints, opaque and
stable under every transformation (new vertices get ``max(id) + 1``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import (
    GraphError,
    NonPositiveKernel,
    NotATree,
    NotBlack,
    NotContractible,
    NotParabolic,
    UnknownEdge,
    UnknownVertex,
)

ELLIPTIC = "Elliptic"
PARABOLIC = "Parabolic"
OTHER = "Other"


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Immutable simple graph with positive integer vertex weights."""

    __slots__ = ("_weights", "_edges", "_adj")

    def __init__(self, weights: Mapping[int, int], edges: Iterable[Sequence[int]] = ()):
        ws = {}
        for v, w in weights.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise GraphError(f"vertex ids must be non-negative integers, got {v!r}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise GraphError(f"vertex {v} has weight {w!r}; weights must be integers >= 1")
            ws[v] = w
        es = set()
        adj: dict[int, list[int]] = {v: [] for v in ws}
        for e in edges:
            u, v = e
            if u not in ws or v not in ws:
                raise GraphError(f"edge {u}-{v} uses an undeclared vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = _edge(u, v)
            if key in es:
                raise GraphError(f"duplicate edge {u}-{v}; multigraphs are not supported")
            es.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self._weights = dict(sorted(ws.items()))
        self._edges = tuple(sorted(es))
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @classmethod
    def chain(cls, weights: Sequence[int], start: int = 0) -> "WeightedGraph":
        ids = range(start, start + len(weights))
        return cls(dict(zip(ids, weights)), [(i, i + 1) for i in ids[:-1]])

    @classmethod
    def fork(cls, center: int, *arms: Sequence[int]) -> "WeightedGraph":
        """Star-like tree: ``center`` weight with chains hanging off it.

        Arm entries are listed from the vertex next to the center outwards,
        so ``fork(2, [2], [2], [2, 1])`` is the fork written [2|2|2|2,1].
        """
        weights = {0: center}
        edges = []
        nxt = 1
        for arm in arms:
            prev = 0
            for w in arm:
                weights[nxt] = w
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return cls(weights, edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._weights)

    @property
    def weights(self) -> dict[int, int]:
        return dict(self._weights)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def weight(self, v: int) -> int:
        try:
            return self._weights[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v}") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def is_black(self, v: int) -> bool:
        return self.weight(v) == 1

    @property
    def blacks(self) -> tuple[int, ...]:
        return tuple(v for v, w in self._weights.items() if w == 1)

    @property
    def whites(self) -> tuple[int, ...]:
        return tuple(v for v, w in self._weights.items() if w >= 2)

    def __len__(self):
        return len(self._weights)

    def fresh_vertex(self) -> int:
        return max(self._weights, default=-1) + 1

    def is_connected(self) -> bool:
        if not self._weights:
            return False
        start = next(iter(self._weights))
        seen = {start}
        todo = [start]
        while todo:
            for u in self._adj[todo.pop()]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(self._weights)

    def is_tree(self) -> bool:
        return len(self._edges) == len(self._weights) - 1 and self.is_connected()

    def is_path(self) -> bool:
        return self.is_tree() and all(len(ns) <= 2 for ns in self._adj.values())

    def path_order(self) -> tuple[int, ...]:
        """Vertices of a path graph from the end with the smaller id."""
        if not self.is_path():
            raise GraphError("graph is not a path")
        if len(self) == 1:
            return self.vertices
        ends = [v for v, ns in self._adj.items() if len(ns) == 1]
        order = [min(ends)]
        prev = None
        while len(order) < len(self):
            cur = order[-1]
            nxt = next(u for u in self._adj[cur] if u != prev)
            prev = cur
            order.append(nxt)
        return tuple(order)

    def subgraph(self, vertices: Iterable[int]) -> "WeightedGraph":
        keep = set(vertices)
        return WeightedGraph(
            {v: self._weights[v] for v in keep},
            [e for e in self._edges if e[0] in keep and e[1] in keep],
        )

    def _replace(self, weights: Mapping[int, int], edges) -> "WeightedGraph":
        return WeightedGraph(weights, edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self):
        return hash((tuple(self._weights.items()), self._edges))

    def __repr__(self):
        if self.is_path() and self.path_order() == tuple(range(len(self))):
            return f"WeightedGraph.chain({[self._weights[v] for v in self.vertices]})"
        return f"WeightedGraph({self._weights}, {list(self._edges)})"


@dataclass(frozen=True)
class FormClass:
    tag: str
    negatives: int
    zeros: int
    positives: int


def intersection_matrix(g: WeightedGraph) -> list[list[int]]:
    """Rows and columns follow ``g.vertices``."""
    index = {v: i for i, v in enumerate(g.vertices)}
    m = [[0] * len(index) for _ in index]
    for v, i in index.items():
        m[i][i] = -g.weight(v)
    for u, v in g.edges:
        m[index[u]][index[v]] = m[index[v]][index[u]] = 1
    return m


def signature(matrix: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(negatives, zeros, positives) of a symmetric rational matrix.

    Symmetric congruence elimination over the rationals on a sparse copy.
    Pivots are taken at nonzero diagonal entries of least degree, so trees
    are eliminated leaf-first without fill-in. When only zero diagonals
    remain but some off-diagonal entry a_ij is nonzero, row/column j is added
    to row/column i, which makes the new diagonal entry 2*a_ij nonzero.
    """
    size = len(matrix)
    a: dict[int, dict[int, Fraction]] = {i: {} for i in range(size)}
    for i, row in enumerate(matrix):
        if len(row) != size:
            raise ValueError("matrix must be square")
        for j, x in enumerate(row):
            if x:
                a[i][j] = Fraction(x)
    for i in range(size):
        for j, x in a[i].items():
            if a[j].get(i) != x:
                raise ValueError("matrix must be symmetric")
    neg = pos = 0
    live = set(range(size))
    while live:
        pivots = [i for i in live if a[i].get(i)]
        if not pivots:
            pair = next(((i, j) for i in sorted(live) for j in sorted(a[i]) if j != i), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j: row i += row j, then column i += column j
            row_j = dict(a[j])
            for k, x in row_j.items():
                a[i][k] = a[i].get(k, 0) + x
            for k in list(a[i]):
                if k != i:
                    a[k][i] = a[i][k]
            a[i][i] = a[i].get(i, 0) + a[j].get(i, 0)
            for k in list(a[i]):
                if not a[i][k]:
                    del a[i][k]
                    a[k].pop(i, None)
            continue
        p = min(pivots, key=lambda i: (len(a[i]), i))
        d = a[p][p]
        if d < 0:
            neg += 1
        else:
            pos += 1
        nbrs = [k for k in a[p] if k != p]
        for k in nbrs:
            f = a[k][p] / d
            for l in nbrs:
                val = a[k].get(l, 0) - f * a[p][l]
                if val:
                    a[k][l] = val
                else:
                    a[k].pop(l, None)
        for k in nbrs:
            del a[k][p]
        del a[p]
        live.discard(p)
    return neg, size - neg - pos, pos


def classify_form(g: WeightedGraph) -> FormClass:
    neg, zero, pos = signature(intersection_matrix(g))
    if zero == 0 and pos == 0:
        tag = ELLIPTIC
    elif zero == 1 and pos == 0:
        tag = PARABOLIC
    else:
        tag = OTHER
    return FormClass(tag, neg, zero, pos)


def _rooted(g: WeightedGraph, root: int):
    """(order, parent) with ``order`` a BFS order from ``root``."""
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
                queue.append(u)
    return order, parent


def tree_pivots(g: WeightedGraph, root: int) -> dict[int, Fraction]:
    """Leaf-to-root elimination values e_v = b_v - sum(1/e_c) on a tree.

    All e_v > 0 iff the form is negative definite. Returns early with the
    offending vertex set to 0 if a non-root pivot vanishes.
    """
    order, parent = _rooted(g, root)
    acc = {v: Fraction(0) for v in order}
    e = {}
    for v in reversed(order):
        e[v] = g.weight(v) - acc[v]
        if e[v] == 0 and v != root:
            return e
        if parent[v] is not None:
            acc[parent[v]] += 1 / e[v]
    return e


def _nullspace_vector(m: list[list[int]]) -> list[Fraction]:
    """One nonzero kernel vector of a singular square matrix."""
    size = len(m)
    rows = [[Fraction(x) for x in row] for row in m]
    pivot_cols = []
    r = 0
    for c in range(size):
        piv = next((i for i in range(r, size) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(size):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    free = next(c for c in range(size) if c not in pivot_cols)
    x = [Fraction(0)] * size
    x[free] = Fraction(1)
    for i, c in enumerate(pivot_cols):
        x[c] = -rows[i][free]
    return x


def kernel_vector(g: WeightedGraph) -> dict[int, int]:
    """Primitive positive generator of the kernel of a connected parabolic graph."""
    if not g.is_connected() or classify_form(g).tag != PARABOLIC:
        raise NotParabolic("kernel_vector needs a connected parabolic graph")
    vs = g.vertices
    if g.is_tree():
        root = vs[0]
        e = tree_pivots(g, root)
        order, parent = _rooted(g, root)
        x = {root: Fraction(1)}
        for v in order[1:]:
            x[v] = x[parent[v]] / e[v]
        raw = [x[v] for v in vs]
    else:
        raw = _nullspace_vector(intersection_matrix(g))
    den = 1
    for r in raw:
        den = den * r.denominator // gcd(den, r.denominator)
    ints = [int(r * den) for r in raw]
    common = 0
    for i in ints:
        common = gcd(common, i)
    ints = [i // common for i in ints]
    if all(i < 0 for i in ints):
        ints = [-i for i in ints]
    if not all(i > 0 for i in ints):
        raise NonPositiveKernel(f"kernel generator {ints} cannot be signed positive")
    out = dict(zip(vs, ints))
    m = intersection_matrix(g)
    assert all(sum(row[j] * ints[j] for j in range(len(vs))) == 0 for row in m)
    return out


def blow_up_vertex(g: WeightedGraph, v: int) -> WeightedGraph:
    weights = g.weights
    if v not in weights:
        raise UnknownVertex(f"no vertex {v}")
    new = g.fresh_vertex()
    weights[v] += 1
    weights[new] = 1
    return WeightedGraph(weights, list(g.edges) + [(v, new)])


def blow_up_edge(g: WeightedGraph, u: int, v: int) -> WeightedGraph:
    if not g.has_edge(u, v):
        raise UnknownEdge(f"no edge {u}-{v}")
    weights = g.weights
    new = g.fresh_vertex()
    weights[u] += 1
    weights[v] += 1
    weights[new] = 1
    edges = [e for e in g.edges if e != _edge(u, v)] + [(u, new), (v, new)]
    return WeightedGraph(weights, edges)


def contract_black(g: WeightedGraph, v: int) -> WeightedGraph:
    """Inverse of a vertex blow-up (degree 1) or an edge blow-up (degree 2)."""
    if g.weight(v) != 1:
        raise NotBlack(f"vertex {v} has weight {g.weight(v)}, not 1")
    nbrs = g.neighbors(v)
    if len(nbrs) > 2 or (len(nbrs) == 0 and len(g) > 1):
        raise NotContractible(f"black vertex {v} has degree {len(nbrs)}")
    if len(nbrs) == 0:
        raise NotContractible("cannot contract the only vertex")
    weights = g.weights
    for u in nbrs:
        if weights[u] < 2:
            raise NotContractible(f"neighbor {u} of {v} would drop below weight 1")
        weights[u] -= 1
    del weights[v]
    edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append(tuple(nbrs))
    return WeightedGraph(weights, edges)


def tree_centers(g: WeightedGraph) -> list[int]:
    if not g.is_tree():
        raise NotATree("graph is not a tree")
    degree = {v: g.degree(v) for v in g.vertices}
    layer = [v for v, d in degree.items() if d <= 1]
    remaining = len(degree)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in g.neighbors(v):
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _encode(g: WeightedGraph, root: int) -> str:
    order, parent = _rooted(g, root)
    codes: dict[int, list[str]] = {v: [] for v in order}
    enc = {}
    for v in reversed(order):
        enc[v] = "(" + str(g.weight(v)) + "".join(sorted(codes[v])) + ")"
        if parent[v] is not None:
            codes[parent[v]].append(enc[v])
    return enc[root]


def canonical_form(g: WeightedGraph) -> str:
    """Encoding equal for two weighted trees iff they are isomorphic."""
    return min(_encode(g, c) for c in tree_centers(g))


def from_canonical(code: str) -> WeightedGraph:
    """Rebuild a tree (ids in preorder) from :func:`canonical_form` output."""
    weights: dict[int, int] = {}
    edges = []
    stack: list[int] = []
    i = 0
    while i < len(code):
        ch = code[i]
        if ch == "(":
            j = i + 1
            while code[j].isdigit():
                j += 1
            v = len(weights)
            weights[v] = int(code[i + 1 : j])
            if stack:
                edges.append((stack[-1], v))
            stack.append(v)
            i = j
        elif ch == ")":
            stack.pop()
            i += 1
        else:
            raise GraphError(f"bad canonical code near position {i}")
    return WeightedGraph(weights, edges)
