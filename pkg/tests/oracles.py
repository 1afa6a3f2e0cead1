"""Independent reference implementations used by the test suite.

Nothing here imports the search code under test. Each oracle is either a
plain generate-and-filter loop or a pruned version of one whose pruning is
itself checked against the plain loop at small sizes.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import networkx as nx
import numpy as np


# -- continued fractions ------------------------------------------------------


def eval_by_fractions(chain) -> Fraction:
    """b1 - 1/(b2 - 1/(...)) evaluated literally."""
    x = Fraction(chain[-1])
    for b in reversed(chain[:-1]):
        x = b - 1 / x
    return x


def expand_by_search(n: int, q: int):
    """Greedy ceil expansion written independently of the library.

    Every entry is at least 2, so the expansion has at most n - 1 terms.
    """
    out = []
    x = Fraction(n, q)
    while True:
        b = -((-x.numerator) // x.denominator)
        out.append(b)
        if x == b:
            return tuple(out)
        x = 1 / (b - x)
        if len(out) >= n:
            raise RuntimeError("expansion did not terminate")


def beta_integral(chain) -> bool:
    x = eval_by_fractions(chain)
    n, q = x.numerator, x.denominator
    g = gcd(n, q + 1)
    return Fraction(g * g, n).denominator == 1 and not all(b == 2 for b in chain)


def naive_t_chains(max_len: int, max_weight: int) -> set:
    return {
        c
        for r in range(1, max_len + 1)
        for c in itertools.product(range(2, max_weight + 1), repeat=r)
        if beta_integral(c)
    }


def pruned_t_chains(max_len: int, max_weight: int) -> set:
    """Every chain of length <= max_len, weights <= max_weight, with integral beta.

    Depth first over the weights, filling positions from both ends inward.
    Log discrepancies solve b_i a_i = a_{i-1} + a_{i+1} with a_0 = a_{r+1} = 1;
    if the chain is T then a_r = 1 - a_1, so with t = a_1 each a_i is an
    affine function u + v t known from either end. The a_i are convex and
    lie in [0, 1]; those necessary conditions bound t to an interval and
    cut the search. Leaves are checked by exact beta integrality, so the
    pruning can only lose chains if a necessary condition is wrong, which
    ``naive_t_chains`` guards against at small sizes.
    """
    out = set()
    for rho in range(1, max_len + 1):
        _pruned_length(rho, max_weight, out)
    return out


def _tighten(lo, hi, cons):
    """Intersect [lo, hi] (as integer pairs) with {t : a + b t >= 0}."""
    ln, ld = lo
    hn, hd = hi
    for a, b in cons:
        if b > 0:
            if -a * ld > ln * b:
                ln, ld = -a, b
        elif b < 0:
            if a * hd < hn * -b:
                hn, hd = a, -b
        elif a < 0:
            return None
        if ln * hd > hn * ld:
            return None
    return (ln, ld), (hn, hd)


def _pruned_length(rho: int, W: int, out: set) -> None:
    b = [0] * rho
    al = [(1, 0), (0, 1)]  # a_0, a_1 from the left
    ar = [(1, 0), (1, -1)]  # a_{r+1}, a_r from the right

    def leaf(pos, w):
        b[pos] = w
        if beta_integral(b):
            out.add(tuple(b))

    def dfs(nl, nr, lo, hi):
        m = rho - nl - nr
        if m == 1:
            (uL, vL), (uR, vR) = al[-1], ar[-1]
            if vL == vR:
                for w in range(2, W + 1):
                    leaf(nl, w)
            else:
                # the last free weight is forced by a_{nl} == the right-hand value
                tn, td = uR - uL, vL - vR
                if td < 0:
                    tn, td = -tn, -td
                if tn * lo[1] < lo[0] * td or tn * hi[1] > hi[0] * td:
                    return
                mid = uL * td + vL * tn
                if mid <= 0:
                    return
                s = al[-2][0] * td + al[-2][1] * tn + ar[-2][0] * td + ar[-2][1] * tn
                w, r = divmod(s, mid)
                if not r and 2 <= w <= W:
                    leaf(nl, w)
            b[nl] = 0
            return
        left = nl <= nr
        rest = m - 1
        aL, aL0 = al[-1], al[-2]
        aR, aR0 = ar[-1], ar[-2]
        for w in range(2, W + 1):
            if left:
                nw = (w * aL[0] - aL0[0], w * aL[1] - aL0[1])
                sL = (nw[0] - aL[0], nw[1] - aL[1])
                sR = (aR0[0] - aR[0], aR0[1] - aR[1])
                gap = (aR[0] - nw[0], aR[1] - nw[1])
                sprev = (aL[0] - aL0[0], aL[1] - aL0[1])
                hard = [
                    (1 - nw[0], -nw[1]),
                    (sR[0] - sL[0], sR[1] - sL[1]),
                    (gap[0] - (rest - 1) * sL[0], gap[1] - (rest - 1) * sL[1]),
                ]
                soft = [
                    nw,
                    (sL[0] - sprev[0], sL[1] - sprev[1]),
                    ((rest - 1) * sR[0] - gap[0], (rest - 1) * sR[1] - gap[1]),
                ]
            else:
                nw = (w * aR[0] - aR0[0], w * aR[1] - aR0[1])
                sR = (aR[0] - nw[0], aR[1] - nw[1])
                sL = (aL[0] - aL0[0], aL[1] - aL0[1])
                gap = (nw[0] - aL[0], nw[1] - aL[1])
                sprev = (aR0[0] - aR[0], aR0[1] - aR[1])
                hard = [
                    (1 - nw[0], -nw[1]),
                    (sR[0] - sL[0], sR[1] - sL[1]),
                    ((rest - 1) * sR[0] - gap[0], (rest - 1) * sR[1] - gap[1]),
                ]
                soft = [
                    nw,
                    (sprev[0] - sR[0], sprev[1] - sR[1]),
                    (gap[0] - (rest - 1) * sL[0], gap[1] - (rest - 1) * sL[1]),
                ]
            # the hard conditions only get worse as w grows
            r = _tighten(lo, hi, hard)
            if r is None:
                break
            r = _tighten(r[0], r[1], soft)
            if r is None:
                continue
            if left:
                b[nl] = w
                al.append(nw)
                dfs(nl + 1, nr, *r)
                al.pop()
                b[nl] = 0
            else:
                b[rho - 1 - nr] = w
                ar.append(nw)
                dfs(nl, nr + 1, *r)
                ar.pop()
                b[rho - 1 - nr] = 0

    dfs(0, 0, (0, 1), (1, 1))


def chain_grid(length: int, lo: int, hi: int, prefix=()) -> np.ndarray:
    """All chains of ``length`` with free weights in [lo, hi] after ``prefix``."""
    free = length - len(prefix)
    span = hi - lo + 1
    grid = np.indices((span,) * free, dtype=np.int64).reshape(free, -1).T + lo
    if prefix:
        head = np.tile(np.asarray(prefix, dtype=np.int64), (len(grid), 1))
        grid = np.hstack([head, grid])
    return grid


# -- quadratic forms ----------------------------------------------------------


def sylvester_class(weights, edges) -> str:
    """Elliptic / Parabolic / Other from leading principal minors of -M.

    Uses the fact that a real symmetric matrix is positive definite iff all
    leading minors are positive, and that -M is positive semi-definite with
    a one-dimensional kernel iff it is singular and some (n-1)-minor obtained
    by deleting a row and column is positive definite. Determinants are exact
    via Fraction Gaussian elimination.
    """
    vs = sorted(weights)
    idx = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    a = [[Fraction(0)] * n for _ in range(n)]
    for v in vs:
        a[idx[v]][idx[v]] = Fraction(weights[v])
    for u, v in edges:
        a[idx[u]][idx[v]] = a[idx[v]][idx[u]] = Fraction(-1)

    def det(m):
        m = [row[:] for row in m]
        size = len(m)
        d = Fraction(1)
        for c in range(size):
            p = next((r for r in range(c, size) if m[r][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for r in range(c + 1, size):
                f = m[r][c] / m[c][c]
                if f:
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return d

    def pos_def(m):
        return all(det([row[:k] for row in m[:k]]) > 0 for k in range(1, len(m) + 1))

    if pos_def(a):
        return "Elliptic"
    if det(a) != 0:
        return "Other"
    # singular; rank n-1 plus all principal minors >= 0 means one zero, no positives
    rank_drop_one = any(
        pos_def([row[:i] + row[i + 1 :] for j, row in enumerate(a) if j != i]) for i in range(n)
    )
    return "Parabolic" if rank_drop_one and _all_principal_nonneg(a, det) else "Other"


def _all_principal_nonneg(a, det) -> bool:
    n = len(a)
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            if det([[a[i][j] for j in rows] for i in rows]) < 0:
                return False
    return True


# -- naive fiber enumeration --------------------------------------------------


def naive_fibers(max_vertices: int, max_weight: int, analyze, canonical_form, graph_cls) -> set:
    """Canonical codes of every T-conic bundle tree within bounds.

    Loops over every unlabeled tree shape and every weighting, with no
    pruning at all.
    """
    codes = set()
    for n in range(1, max_vertices + 1):
        for shape in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            edges = list(shape.edges())
            for ws in itertools.product(range(1, max_weight + 1), repeat=n):
                g = graph_cls(dict(enumerate(ws)), edges)
                if analyze(g).t_conic_bundle:
                    codes.add(canonical_form(g))
    return codes


# -- parabolic lines [L, 1, R] -----------------------------------------------


def _eval_rows(grid: np.ndarray):
    """(n, q) of every row read left to right, n/q = b1 - 1/(b2 - ...)."""
    n = grid[:, -1].copy()
    q = np.ones_like(n)
    for i in range(grid.shape[1] - 2, -1, -1):
        n, q = grid[:, i] * n - q, n
    return n, q


def parabolic_lines(max_total: int, max_weight: int):
    """Every (L, R) with [L, 1, R] parabolic and len(L) + len(R) + 1 <= max_total.

    Rooting the path at the black vertex, its pivot is 1 - q_L/n_L - q_R/n_R
    where n/q is each side read outward from the black vertex (all other
    pivots are positive for weights >= 2). So the path is parabolic iff
    n_R = n_L and q_R = n_L - q_L: an exact join on integer keys, done with
    numpy over every side up to length max_total - 2.
    """
    rows = []
    for r in range(1, max_total - 1):
        grid = chain_grid(r, 2, max_weight)
        n, q = _eval_rows(grid)
        rows.append((r, grid, n, q))
    out = []
    for rl, gl, nl, ql in rows:
        want = nl * (1 << 32) + (nl - ql)
        for rr, gr, nr, qr in rows:
            if rl + rr + 1 > max_total:
                continue
            have = nr * (1 << 32) + qr
            order = np.argsort(have, kind="stable")
            sorted_have = have[order]
            lo = np.searchsorted(sorted_have, want, side="left")
            hi = np.searchsorted(sorted_have, want, side="right")
            for i in np.nonzero(hi > lo)[0]:
                for j in order[lo[i] : hi[i]]:
                    out.append((tuple(int(x) for x in gl[i][::-1]), tuple(int(x) for x in gr[j])))
    return out
