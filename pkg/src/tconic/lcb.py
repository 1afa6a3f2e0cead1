"""Verification of log conic bundle fiber graphs and the index-two families.

A candidate fiber graph is a tree whose black vertices are the components of
the fiber and whose white components resolve the singular points. It is a
T-conic bundle fiber when the form is parabolic, every white component is a
T-chain or an A_n chain, and the codiscrepancy meets every black vertex with
total weight < 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

from .discrepancy import WhiteComponent, component_fraction, solve_codiscrepancy, white_components
from .errors import (
    InconsistencyError,
    NonPositiveKernel,
    NotApplicable,
    PostVerificationFailed,
    PreconditionViolated,
    SingularSystem,
)
from .graph import (
    PARABOLIC,
    FormClass,
    WeightedGraph,
    blow_up_vertex,
    canonical_form,
    classify_form,
    kernel_vector,
)
from .hj import Chain, as_chain, invariants, is_du_val_chain
from .tchain import is_seed, is_t_chain, t_step_a

CHECK_NAMES = (
    "tree",
    "blackWeights",
    "parabolic",
    "positiveKernel",
    "whiteChains",
    "tOrDuVal",
    "ampleness",
    "fiberIdentity",
)

FAMILIES = ("I*", "I**", "I***", "II*", "III*", "III**")
UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class FiberAnalysis:
    graph: WeightedGraph
    form: FormClass
    multiplicities: Optional[dict[int, int]]
    codisc: dict[int, Fraction]
    delta_dot_l: dict[int, Fraction]
    sum_l: Optional[int]
    checks: dict[str, bool]
    index: Optional[int]
    non_du_val_count: int
    components: tuple[WhiteComponent, ...]
    t_conic_bundle: bool

    @property
    def singular_points(self) -> int:
        return len(self.components)

    @property
    def singular_chains(self) -> list[Chain]:
        return [c.chain for c in self.components if c.is_chain]

    @property
    def log_discrepancies(self) -> dict[int, Fraction]:
        return {v: 1 - d for v, d in self.codisc.items()}

    def to_json(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        data = {
            "tConicBundle": self.t_conic_bundle,
            "checks": dict(self.checks),
            "form": {
                "tag": self.form.tag,
                "negatives": self.form.negatives,
                "zeros": self.form.zeros,
                "positives": self.form.positives,
            },
            "multiplicities": (
                [self.multiplicities[v] for v in self.graph.vertices]
                if self.multiplicities is not None
                else None
            ),
            "vertices": list(self.graph.vertices),
            "codiscrepancies": {str(v): frac(d) for v, d in self.codisc.items()},
            "deltaDotL": {str(v): frac(x) for v, x in self.delta_dot_l.items()},
            "sumL": self.sum_l,
            "index": self.index,
            "nonDuValCount": self.non_du_val_count,
            "singularChains": [list(c) for c in self.singular_chains],
        }
        if self.t_conic_bundle:
            label = family_match(self)
            data["family"] = label.tag
            data["boxChain"] = list(label.box) if label.box else None
        return data


def analyze(g: WeightedGraph) -> FiberAnalysis:
    checks = dict.fromkeys(CHECK_NAMES, False)
    checks["tree"] = g.is_tree()
    checks["blackWeights"] = len(g.blacks) >= 1
    form = classify_form(g)
    checks["parabolic"] = form.tag == PARABOLIC
    mult = None
    if checks["parabolic"] and g.is_connected():
        try:
            mult = kernel_vector(g)
            checks["positiveKernel"] = True
        except NonPositiveKernel:
            pass
    comps = tuple(white_components(g))
    checks["whiteChains"] = all(c.is_chain for c in comps)
    checks["tOrDuVal"] = checks["whiteChains"] and all(
        is_du_val_chain(c.chain) or is_t_chain(c.chain) for c in comps
    )
    try:
        codisc = solve_codiscrepancy(g) if checks["tree"] else {}
        solved = checks["tree"]
    except SingularSystem:
        codisc, solved = {}, False
    ddl = {}
    for v in g.blacks:
        ddl[v] = sum((codisc[u] for u in g.neighbors(v) if u in codisc), Fraction(0))
    checks["ampleness"] = solved and all(x < 1 for x in ddl.values())
    sum_l = None
    if mult is not None:
        sum_l = sum(mult[v] for v in g.blacks)
        l_dot_delta = sum((mult[v] * ddl[v] for v in g.blacks), Fraction(0))
        checks["fiberIdentity"] = solved and sum_l == l_dot_delta + 2
    index = None
    if checks["whiteChains"]:
        index = 1
        for c in comps:
            index = lcm(index, invariants(component_fraction(c)).iota)
    ok = all(checks[k] for k in CHECK_NAMES if k != "fiberIdentity")
    if ok and not checks["fiberIdentity"]:
        raise InconsistencyError(f"fiber identity fails on a T-conic bundle graph: {g!r}")
    return FiberAnalysis(
        graph=g,
        form=form,
        multiplicities=mult,
        codisc=codisc,
        delta_dot_l=ddl,
        sum_l=sum_l,
        checks=checks,
        index=index,
        non_du_val_count=sum(1 for c in comps if not c.is_du_val),
        components=comps,
        t_conic_bundle=ok,
    )


def index(a: FiberAnalysis) -> int:
    if not a.checks["whiteChains"]:
        raise NotApplicable("index needs every white component to be a chain")
    return a.index


# -- the six index-two families ---------------------------------------------


def _attach(weights: dict, edges: list, at: int, w: int) -> int:
    v = len(weights)
    weights[v] = w
    edges.append((at, v))
    return v


def family_graph(tag: str, box: Sequence[int] = (4,)) -> WeightedGraph:
    """Minimal graph of a family; ``box`` is the index-two chain for I*, I**, I***."""
    if tag in ("I*", "I**", "I***"):
        box = as_chain(box)
        if not is_seed(box):
            raise ValueError(f"box must be [4] or [3,2,...,2,3], got {list(box)}")
        g = WeightedGraph.chain(box)
        weights, edges = g.weights, list(g.edges)
        first, last = 0, len(box) - 1
        if tag == "I*":
            for end in (first, first, last, last):
                _attach(weights, edges, end, 1)
        elif tag == "I**":
            _attach(weights, edges, first, 1)
            _attach(weights, edges, first, 1)
            b = _attach(weights, edges, last, 1)
            _attach(weights, edges, b, 2)
        else:
            b = _attach(weights, edges, first, 1)
            _attach(weights, edges, b, 2)
            b = _attach(weights, edges, last, 1)
            _attach(weights, edges, b, 2)
        return WeightedGraph(weights, edges)
    if tag == "II*":
        g = WeightedGraph.chain([3, 2, 2, 3, 1])
        weights, edges = g.weights, list(g.edges)
        _attach(weights, edges, 1, 1)
        return WeightedGraph(weights, edges)
    if tag == "III*":
        return WeightedGraph.chain([4, 1, 2, 2, 2])
    if tag == "III**":
        return WeightedGraph.fork(2, [3, 1], [3, 1], [1])
    raise ValueError(f"unknown family {tag!r}")


@lru_cache(maxsize=None)
def _family_code(tag: str, box: Chain = (4,)) -> str:
    return canonical_form(family_graph(tag, box))


@dataclass(frozen=True)
class FamilyLabel:
    tag: str
    box: Optional[Chain] = None


def family_match(a: FiberAnalysis) -> FamilyLabel:
    """Exact structural match against the six index-two families."""
    if not a.t_conic_bundle:
        raise NotApplicable("family_match needs a verified T-conic bundle graph")
    code = canonical_form(a.graph)
    hits = []
    boxes = {c.chain for c in a.components if c.is_chain and is_seed(c.chain)}
    boxes |= {b[::-1] for b in boxes}
    for box in sorted(boxes):
        for tag in ("I*", "I**", "I***"):
            if _family_code(tag, box) == code:
                hits.append(FamilyLabel(tag, box))
    for tag in ("II*", "III*", "III**"):
        if _family_code(tag) == code:
            hits.append(FamilyLabel(tag))
    tags = {h.tag for h in hits}
    assert len(tags) <= 1, f"graph matches several families: {sorted(tags)}"
    return hits[0] if hits else FamilyLabel(UNCLASSIFIED)


# -- the series construction ---------------------------------------------------


def construction_step(a: FiberAnalysis, black_leaf: int, chain_end: int) -> FiberAnalysis:
    """Blow up a black leaf next to one end of a white chain and the opposite end.

    The chain [b1,...,br] read from the black leaf becomes [2,b1,...,br+1],
    the old leaf being the new 2. The result is re-verified.
    """
    g = a.graph
    if black_leaf not in g.weights or chain_end not in g.weights:
        raise PreconditionViolated("unknown vertex")
    if g.weight(black_leaf) != 1:
        raise PreconditionViolated(f"vertex {black_leaf} is not black")
    if g.degree(black_leaf) != 1:
        raise PreconditionViolated(f"black vertex {black_leaf} is not a leaf")
    comp = next((c for c in a.components if chain_end in c.vertices), None)
    if comp is None or not comp.is_chain:
        raise PreconditionViolated(f"vertex {chain_end} is not on a white chain")
    first, last = comp.ends
    if chain_end not in (first, last):
        raise PreconditionViolated(f"vertex {chain_end} is not an end of its chain")
    near = last if chain_end == first else first
    if g.neighbors(black_leaf)[0] != near:
        raise PreconditionViolated(
            f"black leaf {black_leaf} is not attached to the end opposite to {chain_end}"
        )
    oriented = comp.chain if near == first else comp.reversed_chain
    h = blow_up_vertex(blow_up_vertex(g, black_leaf), chain_end)
    b = analyze(h)
    if not b.t_conic_bundle:
        raise PostVerificationFailed("result is not a T-conic bundle fiber")
    if b.singular_points != a.singular_points or b.non_du_val_count != a.non_du_val_count:
        raise PostVerificationFailed("number of singular points changed")
    new_comp = next(c for c in b.components if black_leaf in c.vertices)
    got = new_comp.chain if new_comp.vertices[0] == black_leaf else new_comp.reversed_chain
    if got != t_step_a(oriented):
        raise PostVerificationFailed(f"expected chain {t_step_a(oriented)}, got {got}")
    return b


def check_parabolic_line(b_left: Sequence[int], b_right: Sequence[int]) -> tuple[bool, bool]:
    """Classify the path [b_left, 1, b_right] and test the balance condition.

    The condition is sum(b_i - 1) over the left part == the same over the
    right part == r - 2, where r counts every vertex of the path.
    """
    left, right = as_chain(b_left), as_chain(b_right)
    g = WeightedGraph.chain(list(left) + [1] + list(right))
    parabolic = classify_form(g).tag == PARABOLIC
    total = len(left) + 1 + len(right)
    sl = sum(b - 1 for b in left)
    sr = sum(b - 1 for b in right)
    return parabolic, sl == sr == total - 2
