import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilgrowth import lie_algebra as L
from nilgrowth._budget import BudgetExceeded
from nilgrowth.groups import (Abelian, Cyclic, FreeNilpotent, GeneratingSet, IntegerHeisenberg, LieLattice,
                              LieProgression, OrderedProgression, Unitriangular, check_group_axioms, dilate,
                              enumerate_progression, heisenberg_view, injectivity_radius, is_m_proper,
                              upper_triangular_check)

H = IntegerHeisenberg()
X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def sample(ctx, rng, n=6):
    gens = ctx.standard_generators()
    out = [ctx.identity]
    for _ in range(n):
        g = ctx.identity
        for _ in range(rng.randint(1, 5)):
            s = rng.choice(gens)
            g = ctx.multiply(g, s if rng.random() < 0.5 else ctx.invert(s))
        out.append(g)
    return out


CONTEXTS = [H, IntegerHeisenberg(3), Abelian(2), Cyclic(7), Unitriangular(3), Unitriangular(4),
            FreeNilpotent(2, 3), LieLattice(L.heisenberg()), LieLattice(L.free_nilpotent(2, 3))]


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.descriptor())
def test_group_axioms(ctx):
    rng = random.Random(0)
    elems = sample(ctx, rng) + list(GeneratingSet.standard(ctx))
    check_group_axioms(ctx, elems)
    for g in elems:
        assert ctx.power(g, 3) == ctx.product([g, g, g])
        assert ctx.power(g, -2) == ctx.invert(ctx.multiply(g, g))


def test_heisenberg_commutator():
    assert H.commutator(X, Y) == Z
    assert H.commutator(Y, X) == H.invert(Z)


def test_unitriangular_three_is_heisenberg():
    U = Unitriangular(3)
    _, to_h = heisenberg_view(U)
    rng = random.Random(4)
    for g, h in product(sample(U, rng), repeat=2):
        assert to_h(U.multiply(g, h)) == H.multiply(to_h(g), to_h(h))


def test_lie_lattice_heisenberg_isomorphism():
    ctx = LieLattice(L.heisenberg())
    twist, to_h = heisenberg_view(ctx)
    assert twist == 1
    Ht = IntegerHeisenberg(twist)
    rng = random.Random(5)
    for g, h in product(sample(ctx, rng), repeat=2):
        assert to_h(ctx.multiply(g, h)) == Ht.multiply(to_h(g), to_h(h))


def test_lattice_condition():
    # e1/2, e2, e3 spans a lattice whose bracket [e1/2, e2] = e3/2 is not integral
    with pytest.raises(ValueError):
        LieLattice(L.heisenberg(), [(Fraction(1, 2), 0, 0), (0, 1, 0), (0, 0, 1)])
    ctx = LieLattice(L.heisenberg(), [(2, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert ctx.heisenberg_twist() == 2


def test_free_nilpotent_uses_bch():
    F = FreeNilpotent(2, 2)
    x, y = F.standard_generators()
    assert F.multiply(x, y) == (1, 1, Fraction(-1, 2))
    assert F.commutator(x, y) == (0, 0, -1)  # exp [f1, f2]


def test_generating_set_requires_symmetry():
    with pytest.raises(ValueError, match=r"\(-1, 0, 0\)"):
        GeneratingSet(H, [(-1, 0, 0)])
    S = GeneratingSet.standard(H)
    assert len(S) == 5 and H.identity in S


def test_enumerate_progression_examples():
    P = enumerate_progression(OrderedProgression(Abelian(2), [(1, 0), (0, 1)], (2, 3)))
    assert len(P) == 35 and P.raw_count == 35
    assert sorted(enumerate_progression(OrderedProgression(Abelian(1), [(1,)], (3,))).elements) == \
        [(k,) for k in range(-3, 4)]
    P = enumerate_progression(OrderedProgression(H, [X, Y], (2, 2)))
    # x^a y^b = (a, b, ab) never collide
    assert len(P) == 25 and P.raw_count == 25
    assert P.elements == {(a, b, a * b) for a in range(-2, 3) for b in range(-2, 3)}


def test_enumerate_progression_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_progression(OrderedProgression(Abelian(2), [(1, 0), (0, 1)], (50, 50)), budget=100)


def test_progression_validation():
    with pytest.raises(ValueError):
        OrderedProgression(H, [X], (0,))
    with pytest.raises(ValueError):
        OrderedProgression(H, [X, Y], (1,))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_upper_triangular_heisenberg(n):
    good = OrderedProgression(H, [X, Y, Z], (n, n, n * n))
    assert upper_triangular_check(good, 1)
    bad = OrderedProgression(H, [X, Y, Z], (n, n, 1))
    assert upper_triangular_check(bad, 1) == (n == 1)
    assert upper_triangular_check(LieProgression(L.heisenberg(), (n, n, n * n)), 1)
    assert upper_triangular_check(LieProgression(L.heisenberg(), (n, n, 1)), 1) == (n == 1)


def test_upper_triangular_abelian():
    P = OrderedProgression(Abelian(3), [(1, 0, 0), (0, 1, 0), (0, 0, 1)], (4, 1, 2))
    assert upper_triangular_check(P, 1)


def test_lie_progression_rejects_bad_form():
    with pytest.raises(ValueError):
        LieProgression(L.heisenberg(), (2, 2, 1), C=1)


def test_m_proper_examples():
    P = OrderedProgression(Cyclic(7), [(1,)], (3,))
    assert is_m_proper(P, 1)
    assert not is_m_proper(P, 2)
    for n in range(1, 4):
        assert is_m_proper(OrderedProgression(H, [X, Y], (n, n)), 1)
    Q = OrderedProgression(Abelian(2), [(1, 0), (2, 0)], (1, 1))
    assert not is_m_proper(Q, 1)
    assert is_m_proper(Q, Fraction(1, 2))  # floor bounds are zero


def test_m_proper_monotone():
    P = OrderedProgression(Cyclic(49), [(1,)], (3,))
    flags = [is_m_proper(P, Fraction(k, 2)) for k in range(1, 30)]
    assert flags == sorted(flags, reverse=True)
    assert flags.count(True) == 16  # m <= 8: 6m + 1 <= 49


def test_m_proper_coset_version():
    # in Z/12 modulo the subgroup {0, 6}: generator 1 with length 2 sees classes mod 6
    P = OrderedProgression(Cyclic(12), [(1,)], (2,))
    assert is_m_proper(P, 1, quotient=lambda g: (g[0] % 6,))
    assert not is_m_proper(P, Fraction(3, 2), quotient=lambda g: (g[0] % 6,))


def test_coset_growth_identity():
    # G = Z x Z/5 with H = 0 x Z/5: |H P^r| = |H| |Phat^r| where Phat is the image in Z
    n = 5
    mul = lambda a, b: (a[0] + b[0], (a[1] + b[1]) % n)  # noqa: E731
    Hsub = [(0, k) for k in range(n)]
    P = {(a, (2 * a) % n) for a in range(-2, 3)}
    Phat = {a for a, _ in P}
    ball, hat = {(0, 0)}, {0}
    for r in range(1, 6):
        ball = {mul(g, p) for g in ball for p in P}
        hat = {a + b for a in hat for b in Phat}
        HP = {mul(h, g) for h in Hsub for g in ball}
        assert len(HP) == n * len(hat)


def test_inverse_and_dilate_progressions():
    ctx = H
    P = OrderedProgression(ctx, [X, Y, Z], (1, 1, 1))
    base = enumerate_progression(P).elements
    d = P.rank
    power = {ctx.identity}
    for _ in range(d):
        power = {ctx.multiply(g, p) for g in power for p in base}
    assert {ctx.invert(g) for g in base} <= power
    m = 2
    big = enumerate_progression(OrderedProgression(ctx, [X, Y, Z], (m, m, m))).elements
    more = {ctx.identity}
    for _ in range(d * m):
        more = {ctx.multiply(g, p) for g in more for p in base}
    assert big <= more


def test_injectivity_radius():
    mod = LieProgression(L.abelian(1), (3,), target=(Cyclic(49), [(1,)]))
    assert str(injectivity_radius(mod, 20)) == "8"
    same = LieProgression(L.abelian(1), (3,), target=(Abelian(1), [(1,)]))
    r = injectivity_radius(same, 6)
    assert r.value == 6 and not r.exact
    free = LieProgression(L.heisenberg(), (1, 1, 1))
    assert str(injectivity_radius(free, 5)) == ">= 5"


def test_dilate_examples():
    assert dilate((1, 0, 0), 3) == (3, 0, 0)
    assert dilate((1, 1, 1), 2) == (2, 2, 4)
    with pytest.raises(ValueError):
        dilate((1, 0, 0), Fraction(1, 2))
    assert dilate((Fraction(1, 2), 0, Fraction(1, 4)), 2) == (1, 0, 1)


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-40, 40)),
       st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-40, 40)),
       st.integers(1, 6))
def test_dilation_is_automorphism(g, h, t):
    assert dilate(H.multiply(g, h), t) == H.multiply(dilate(g, t), dilate(h, t))
