import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import assoc_oracle as A
from nilgrowth.hall_bch import (MAX_BCH_STEP, FreeLieElement, StructureTable, WeightVector, bch_product,
                                bch_terms, enumerate_basic_commutators, free_table, hall_rewrite_bracket,
                                nilbox_contains, witt_dimension)


def rand_elem(table, rng, spread=5):
    return table.element([Fraction(rng.randint(-spread, spread), rng.randint(1, 4)) for _ in range(table.r)])


def test_small_enumerations():
    assert [str(c) for c in enumerate_basic_commutators(2, 1)] == ["f1", "f2"]
    assert [str(c) for c in enumerate_basic_commutators(2, 2)] == ["f1", "f2", "[f2,f1]"]
    assert len(enumerate_basic_commutators(2, 3)) == 5
    assert len(enumerate_basic_commutators(3, 2)) == 6


def test_rejects_degenerate_sizes():
    with pytest.raises(ValueError):
        enumerate_basic_commutators(0, 2)
    with pytest.raises(ValueError):
        enumerate_basic_commutators(2, 0)


def test_witt_formula_values():
    # necklace counts for two letters: 2, 1, 2, 3, 6, 9
    assert [witt_dimension(2, k) for k in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [witt_dimension(3, k) for k in range(1, 5)] == [3, 3, 8, 18]


@pytest.mark.parametrize("d,s", [(d, s) for d in (1, 2, 3) for s in (1, 2, 3, 4)])
def test_counts_match_witt_and_exhaustive_span(d, s):
    table = StructureTable(d, s)
    for k in range(1, s + 1):
        block = [c for c in table.basis if c.weight.total == k]
        assert len(block) == witt_dimension(d, k)
        # the expansions are independent and span every bracket of degree k
        polys = [A.expand_expr(c.expr, s) for c in block]
        assert A.rank_of(polys, d, k) == len(block)
        left_normed = []
        for word in product(range(d), repeat=k):
            expr = word[0]
            for g in word[1:]:
                expr = (expr, g)
            left_normed.append(A.expand_expr(expr, s))
        assert A.rank_of(left_normed, d, k) == len(block)


def test_hall_condition_and_blocks():
    basis = enumerate_basic_commutators(3, 4)
    for c in basis[3:]:
        left = basis[c.left]
        assert c.left > c.right
        if not left.is_generator:
            assert c.right >= left.right
    seen, prev = set(), None
    for c in basis:
        if c.weight != prev:
            assert c.weight not in seen
            seen.add(c.weight)
            prev = c.weight
    totals = [c.weight.total for c in basis]
    assert totals == sorted(totals)


@pytest.mark.parametrize("d,s", [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5)])
def test_structure_tables_are_lie(d, s):
    t = StructureTable(d, s, check=False)
    t.check_antisymmetry()
    t.check_jacobi()
    for (i, j), v in t.brackets.items():
        for k in v:
            assert t.weight(k).total == t.weight(i).total + t.weight(j).total <= s


def test_bracket_matches_associative_commutator():
    rng = random.Random(3)
    table = free_table(2, 4)
    for _ in range(10):
        X, Y = rand_elem(table, rng), rand_elem(table, rng)
        got = A.expand(table.bracket(X, Y).coords, table)
        want = A.bracket(A.expand(X.coords, table), A.expand(Y.coords, table), table.s)
        assert got == want


def test_basic_bracket_orientation_and_errors():
    t = free_table(2, 2)
    f1, f2 = t.basis_element(0), t.basis_element(1)
    assert t.bracket(f2, f1).coords == (0, 0, 1)
    assert t.bracket(f1, f2).coords == (0, 0, -1)
    assert t.bracket(f1, f1).is_zero()
    with pytest.raises(ValueError):
        hall_rewrite_bracket(f1, free_table(2, 3).basis_element(0), t)


def test_jacobi_on_random_elements():
    rng = random.Random(5)
    t = free_table(2, 3)
    for _ in range(20):
        X, Y, Z = (rand_elem(t, rng) for _ in range(3))
        b = t.bracket
        assert (b(X, b(Y, Z)) + b(Y, b(Z, X)) + b(Z, b(X, Y))).is_zero()


def test_bch_low_order_terms():
    terms = dict(bch_terms(3))
    assert terms[(0,)] == 1 and terms[(1,)] == 1
    c = lambda w: terms.get(w, 0)  # noqa: E731
    # Dynkin's series lists both orientations of a bracket; compare net coefficients
    assert c((0, 1)) - c((1, 0)) == Fraction(1, 2)
    assert c((0, 0, 1)) - c((0, 1, 0)) == Fraction(1, 12)
    assert c((1, 1, 0)) - c((1, 0, 1)) == Fraction(1, 12)


def test_bch_step_two_example():
    t = free_table(2, 2)
    f1, f2 = t.basis_element(0), t.basis_element(1)
    # [f1, f2] = -[f2, f1]
    assert bch_product(f1, f2, t).coords == (1, 1, Fraction(-1, 2))
    assert bch_product(f1, f2, t, s=1).coords == (1, 1, 0)


def test_bch_step_limit():
    with pytest.raises(ValueError):
        bch_terms(MAX_BCH_STEP + 1)
    t = StructureTable(2, 6, check=False)
    with pytest.raises(ValueError):
        bch_product(t.zero(), t.zero(), t)


@pytest.mark.parametrize("d,s", [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5)])
def test_bch_matches_log_exp_exp(d, s):
    rng = random.Random(d * 10 + s)
    t = free_table(d, s)
    for _ in range(4):
        X, Y = rand_elem(t, rng, 3), rand_elem(t, rng, 3)
        pX, pY = A.expand(X.coords, t), A.expand(Y.coords, t)
        want = A.log(A.mul(A.exp(pX, s), A.exp(pY, s), s), s)
        assert A.expand(bch_product(X, Y, t).coords, t) == want


def test_bch_identity_and_inverse():
    rng = random.Random(7)
    for s in range(1, MAX_BCH_STEP + 1):
        t = free_table(2, s)
        X = rand_elem(t, rng)
        assert bch_product(X, t.zero(), t) == X
        assert bch_product(X, -X, t).is_zero()


def _frac():
    return st.fractions(min_value=-3, max_value=3, max_denominator=5)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_bch_associative(data):
    s = data.draw(st.integers(1, 4))
    t = free_table(2, s)
    X, Y, Z = (t.element(data.draw(st.lists(_frac(), min_size=t.r, max_size=t.r))) for _ in range(3))
    assert bch_product(bch_product(X, Y, t), Z, t) == bch_product(X, bch_product(Y, Z, t), t)


def test_nilbox_membership():
    t = free_table(2, 2)
    assert nilbox_contains(t.zero(), (1, 1), 1, t)
    assert nilbox_contains(t.element((1, 0, 1)), (1, 1), 1, t)
    assert not nilbox_contains(t.element((0, 0, 7)), (2, 3), 1, t)
    assert nilbox_contains(t.element((0, 0, 6)), (2, 3), 1, t)
    with pytest.raises(ValueError):
        nilbox_contains(t.zero(), (1, 1, 1), 1, t)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=1, max_denominator=20), st.integers(0, 2**5 - 1))
def test_nilbox_scaling(rho, signs):
    # eps * B(L^chi) lies in B((eps^(1/s) L)^chi); take eps = rho^s so the root is rational
    t = free_table(2, 3)
    L = (2, 3)
    eps = rho ** t.s
    corner = FreeLieElement(tuple((-1 if signs >> i & 1 else 1) * t.weight(i).evaluate(L) for i in range(t.r)))
    assert nilbox_contains(corner, L, 1, t)
    assert nilbox_contains(corner * eps, L, rho, t)


def test_weight_vector_arithmetic():
    a, b = WeightVector((1, 0)), WeightVector((0, 2))
    assert (a + b).entries == (1, 2)
    assert (a + b).total == 3
    assert (a + b).evaluate((3, 2)) == 12
