import random

from hypothesis import given, settings
from hypothesis import strategies as st

from nilgrowth._fibers import FiberSet, merge
from nilgrowth.groups import IntegerHeisenberg

small = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-6, 6))


def test_merge():
    assert merge([(5, 7), (1, 2), (3, 3), (10, 11)]) == [(1, 3), (5, 7), (10, 11)]
    assert merge([]) == []


def test_membership_and_count():
    A = FiberSet.from_elements([(0, 0, 0), (0, 0, 1), (0, 0, 5), (1, 2, 3)])
    assert len(A) == 4 and A.interval_count() == 3
    assert (0, 0, 1) in A and (0, 0, 2) not in A and (9, 9, 9) not in A
    assert sorted(A) == [(0, 0, 0), (0, 0, 1), (0, 0, 5), (1, 2, 3)]


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=12), st.lists(small, min_size=1, max_size=12), st.integers(1, 3))
def test_operations_match_sets(a, b, k):
    G = IntegerHeisenberg(k)
    A, B = FiberSet.from_elements(a, k), FiberSet.from_elements(b, k)
    assert set(A * B) == {G.multiply(x, y) for x in set(a) for y in set(b)}
    assert set(A.inverse()) == {G.invert(x) for x in a}
    assert set(A.union(B)) == set(a) | set(b)
    assert A.issubset(A.union(B))
    assert A.issubset(B) == (set(a) <= set(b))
    assert (A == FiberSet.from_elements(reversed(a), k))


def test_box_constructor_drops_empty():
    A = FiberSet.box({(0, 0): [(0, 2), (1, 4)], (1, 0): []})
    assert A.fibers == {(0, 0): [(0, 4)]}
