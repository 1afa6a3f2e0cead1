from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tconic.discrepancy import (
    chain_alpha_numerators,
    component_fraction,
    log_discrepancies,
    solve_codiscrepancy,
    white_components,
)
from tconic.errors import NotApplicable, SingularSystem
from tconic.graph import WeightedGraph
from tconic.hj import HJFraction, conjugate, hj_eval
from tconic.tchain import is_t_chain

chains = st.lists(st.integers(2, 9), min_size=1, max_size=8).map(tuple)


def test_remark_chain():
    assert log_discrepancies((3, 3, 4, 2)) == tuple(Fraction(k, 5) for k in (2, 1, 1, 3))


def test_du_val_zero():
    assert set(log_discrepancies((2, 2, 2))) == {1}


def test_components_of_a_fiber():
    g = WeightedGraph.fork(2, [3, 1], [3, 1], [1])
    comps = white_components(g)
    assert len(comps) == 1 and comps[0].chain in ((3, 2, 3),)
    assert component_fraction(comps[0]) == HJFraction(12, 5)
    d = solve_codiscrepancy(g)
    assert set(d.values()) == {Fraction(1, 2)}
    assert set(d) == set(g.whites)


def test_non_chain_component():
    g = WeightedGraph.fork(2, [2], [2], [2, 1])
    (comp,) = white_components(g)
    assert not comp.is_chain
    with pytest.raises(NotApplicable):
        comp.chain
    # affine D4 on the whites has a kernel, so the system is singular
    d4 = WeightedGraph.fork(2, [2], [2], [2], [2])
    with pytest.raises(SingularSystem):
        solve_codiscrepancy(d4)


@given(chains)
def test_solver_satisfies_recurrence(c):
    a = (Fraction(1),) + log_discrepancies(c) + (Fraction(1),)
    for i, b in enumerate(c, start=1):
        assert b * a[i] == a[i - 1] + a[i + 1]
    assert all(0 < x <= 1 for x in a)


@given(chains)
def test_end_values(c):
    f = hj_eval(c)
    a = log_discrepancies(c)
    assert a[0] == Fraction(f.q + 1, f.n)
    assert a[-1] == Fraction(conjugate(f).q + 1, f.n)
    assert (a[0] + a[-1] == 1) == is_t_chain(c)


@given(chains)
def test_convex(c):
    a = (Fraction(1),) + log_discrepancies(c) + (Fraction(1),)
    assert all(a[i - 1] + a[i + 1] >= 2 * a[i] for i in range(1, len(a) - 1))


@settings(max_examples=30)
@given(st.integers(1, 6).flatmap(lambda r: st.lists(st.tuples(*[st.integers(2, 9)] * r), min_size=1, max_size=30)))
def test_vectorized_numerators(rows):
    num, n = chain_alpha_numerators(np.array(rows))
    for row, nums, nn in zip(rows, num, n):
        assert tuple(Fraction(int(x), int(nn)) for x in nums) == log_discrepancies(row)


def test_vectorized_overflow_guard():
    with pytest.raises(OverflowError):
        chain_alpha_numerators(np.full((1, 20), 9))
