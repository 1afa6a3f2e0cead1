import itertools
from fractions import Fraction

import pytest

from tconic.errors import InconsistencyError, NotApplicable, PreconditionViolated
from tconic.graph import WeightedGraph, canonical_form
from tconic.lcb import FAMILIES, analyze, check_parabolic_line, construction_step, family_graph, family_match, index

import oracles

W = WeightedGraph
BOXES = [(4,), (3, 3), (3, 2, 3), (3, 2, 2, 3)]


def remark_graph():
    # [3,3,4,2] with two blacks on the second white and two on the third
    return W(
        {0: 3, 1: 3, 2: 4, 3: 2, 4: 1, 5: 1, 6: 1, 7: 1},
        [(0, 1), (1, 2), (2, 3), (1, 4), (1, 5), (2, 6), (2, 7)],
    )


def test_three_star():
    a = analyze(W.chain([4, 1, 2, 2, 2]))
    assert a.t_conic_bundle and all(a.checks.values())
    assert list(a.multiplicities.values()) == [1, 4, 3, 2, 1]
    assert a.delta_dot_l == {1: Fraction(1, 2)}
    assert a.sum_l == 4 and index(a) == 2
    assert family_match(a).tag == "III*"


def test_not_t_chain_fails_t_or_du_val():
    a = analyze(W.chain([2, 5, 2, 1, 1]))
    assert a.checks["whiteChains"] and not a.checks["tOrDuVal"]
    assert not a.t_conic_bundle


def test_remark_graph():
    a = analyze(remark_graph())
    assert a.t_conic_bundle
    m = a.multiplicities
    assert [m[v] for v in (0, 1, 2, 3)] == [1, 3, 2, 1]
    assert [m[v] for v in (4, 5, 6, 7)] == [3, 3, 2, 2]
    assert a.sum_l == 10
    assert sum(m[v] * a.delta_dot_l[v] for v in a.graph.blacks) == 8
    assert a.singular_chains == [(3, 3, 4, 2)]
    assert a.log_discrepancies == {0: Fraction(2, 5), 1: Fraction(1, 5), 2: Fraction(1, 5), 3: Fraction(3, 5)}


def test_index_examples():
    assert index(analyze(family_graph("I*"))) == 2
    g = W({0: 2, 1: 5, 2: 1, 3: 1}, [(0, 1), (0, 2), (1, 3)])
    assert index(analyze(g)) == 3
    with pytest.raises(NotApplicable):
        index(analyze(W.fork(2, [2], [2], [2, 1])))


FAMILY_CASES = [(t, b) for t in FAMILIES for b in (BOXES if t.startswith("I*") else [(4,)])]


@pytest.mark.parametrize("tag,box", FAMILY_CASES)
def test_family_instances(tag, box):
    a = analyze(family_graph(tag, box))
    assert a.t_conic_bundle and a.index == 2
    assert a.checks["fiberIdentity"]
    label = family_match(a)
    assert label.tag == tag
    if tag.startswith("I*"):
        assert label.box in (box, box[::-1])


def test_family_examples():
    assert family_match(analyze(W.fork(4, [1], [1], [1], [1]))).tag == "I*"
    i2 = analyze(family_graph("I**"))
    assert sorted(i2.multiplicities.values()) == [1, 1, 1, 1, 2]
    i3 = analyze(W.chain([2, 1, 4, 1, 2]))
    assert list(i3.multiplicities.values()) == [1, 2, 1, 2, 1]
    assert family_match(i3).box == (4,)


def test_families_are_pairwise_distinct():
    codes = {}
    for tag, box in FAMILY_CASES:
        code = canonical_form(family_graph(tag, box))
        assert code not in codes, (tag, box, codes.get(code))
        codes[code] = (tag, box)


def test_unclassified_and_not_applicable():
    a = analyze(W.chain([2, 1, 2]))
    assert a.t_conic_bundle and a.index == 1
    assert family_match(a).tag == "Unclassified"
    with pytest.raises(NotApplicable):
        family_match(analyze(W.chain([3, 1, 3])))


def test_construction_from_i_star():
    a = analyze(family_graph("I*"))
    b = construction_step(a, 1, 0)
    assert b.t_conic_bundle and b.singular_chains in ([(2, 5)], [(5, 2)])
    blacks = b.graph.blacks
    assert len(blacks) == 5
    on_two = [v for v in blacks if b.graph.neighbors(v) == (1,)]
    on_five = [v for v in blacks if b.graph.neighbors(v) == (0,)]
    assert len(on_two) == 1 and len(on_five) == 4
    assert set(b.multiplicities.values()) == {1}
    assert b.sum_l == 5 and sum(b.delta_dot_l.values()) == 3


def test_construction_iterates_to_226():
    b = construction_step(analyze(family_graph("I*")), 1, 0)
    leaf = next(u for u in b.graph.neighbors(1) if b.graph.is_black(u))
    c = construction_step(b, leaf, 0)
    assert c.singular_chains[0] in ((2, 2, 6), (6, 2, 2))


def test_construction_mirrored_end_gives_step_b():
    b = construction_step(analyze(family_graph("I*")), 1, 0)
    # chain is [2,5] read from vertex 1; blow from the 5-end instead
    leaf = next(u for u in b.graph.neighbors(0) if b.graph.is_black(u))
    c = construction_step(b, leaf, 1)
    assert c.singular_chains[0] in ((3, 5, 2), (2, 5, 3))


def test_construction_preconditions():
    a = analyze(family_graph("I*", (3, 3)))
    with pytest.raises(PreconditionViolated):
        construction_step(a, 0, 1)  # not black
    with pytest.raises(PreconditionViolated):
        construction_step(a, 2, 0)  # leaf 2 sits on vertex 0, so the end must be 1
    with pytest.raises(PreconditionViolated):
        construction_step(a, 2, 99)
    iii = analyze(W.chain([2, 1, 4, 1, 2]))
    with pytest.raises(PreconditionViolated):
        construction_step(iii, 1, 2)  # black 1 has degree 2


def test_fiber_identity_failure_is_loud(monkeypatch):
    import tconic.lcb as lcb

    monkeypatch.setattr(lcb, "kernel_vector", lambda g: {v: 1 for v in g.vertices})
    with pytest.raises(InconsistencyError):
        lcb.analyze(W.chain([4, 1, 2, 2, 2]))


@pytest.mark.parametrize(
    "left,right,want",
    [((2,), (2,), (True, True)), ((4,), (2, 2, 2), (True, True)), ((3,), (3,), (False, False))],
)
def test_parabolic_line_examples(left, right, want):
    assert check_parabolic_line(left, right) == want


def test_line_oracle_matches_library_small():
    found = set(oracles.parabolic_lines(6, 5))
    for total in range(3, 7):
        for k in range(1, total - 1):
            for left in itertools.product(range(2, 6), repeat=k):
                for right in itertools.product(range(2, 6), repeat=total - 1 - k):
                    par, _ = check_parabolic_line(left, right)
                    assert par == ((left, right) in found)


def test_eq_cond_exhaustive():
    lines = oracles.parabolic_lines(10, 8)
    assert lines
    for left, right in lines:
        par, cond = check_parabolic_line(left, right)
        assert par and cond, (left, right)


def test_analyze_never_raises_on_odd_input():
    tri = W({0: 1, 1: 2, 2: 2}, [(0, 1), (1, 2), (0, 2)])
    a = analyze(tri)
    assert not a.checks["tree"] and not a.t_conic_bundle
    lone = analyze(W.chain([3]))
    assert not lone.checks["blackWeights"]
    forest = analyze(W({0: 1, 1: 1}, []))
    assert not forest.t_conic_bundle
