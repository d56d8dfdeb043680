import math
from fractions import Fraction

import pytest

from instances import oracle_instances
from naive import naive_balls
from nilgrowth.balls import (CoverCertificate, GrowthSeries, approx_cover, ball_growth, doubling_sequence,
                             growth_exponent_fit, relative_growth_constants)
from nilgrowth.groups import Abelian, FreeNilpotent, GeneratingSet, IntegerHeisenberg
from nilgrowth.heisenberg import s_family

H = IntegerHeisenberg()
HEIS_BALLS = [1, 5, 17, 53, 135, 299, 593, 1069, 1793, 2845, 4309, 6281, 8871, 12195, 16381, 21569, 27905,
              35549, 44673, 55453, 68079]


@pytest.mark.parametrize("name,S,m", oracle_instances(), ids=[i[0] for i in oracle_instances()])
def test_matches_naive_iteration(name, S, m):
    want = naive_balls(S, m)
    assert want[-1] <= 10**4
    assert ball_growth(S, m, method="bfs").balls() == want
    assert ball_growth(S, m).balls() == want


def test_heisenberg_standard_values():
    s = ball_growth(GeneratingSet.standard(H), 20)
    assert s.balls() == HEIS_BALLS
    assert s.spheres()[1:4] == [4, 12, 36]
    assert ball_growth(GeneratingSet.standard(H), 20, method="fibers").balls() == HEIS_BALLS


def test_overflow_returns_prefix():
    s = ball_growth(GeneratingSet.standard(Abelian(2)), 50, budget=100)
    assert s.overflow and s.m_max < 50
    assert s.balls() == [2 * m * m + 2 * m + 1 for m in range(s.m_max + 1)]


def test_fibre_method_rejects_other_groups():
    with pytest.raises(ValueError):
        ball_growth(GeneratingSet.standard(Abelian(2)), 3, method="fibers")
    with pytest.raises(ValueError):
        ball_growth(GeneratingSet.standard(Abelian(2)), 3, method="magic")


def test_doubling_sequence():
    s = GrowthSeries.from_balls(HEIS_BALLS)
    recs = doubling_sequence(s, K=20)
    assert [str(r.ratio) for r in recs[:4]] == ["5", "53/5", "299/17", "1069/53"]
    assert recs[4].ratio == Fraction(569, 27) and recs[4].exceeds
    assert not recs[2].exceeds
    # large-m ratios settle near 2^4 = 16
    assert 16 < float(recs[-1].ratio) < 22
    with pytest.raises(ValueError):
        doubling_sequence(GrowthSeries.from_balls([1]))


def test_cover_certificate():
    A = list(s_family(2, 4).S)
    cert = approx_cover(A, H)
    assert cert.K == 29
    assert cert.verify(H, A)
    assert not CoverCertificate(1, (H.identity,)).verify(H, A)


def test_cover_of_subgroup_is_trivial():
    from nilgrowth.groups import Cyclic
    C = Cyclic(6)
    A = [(0,), (2,), (4,)]
    assert approx_cover(A, C).K == 1


def test_exponent_fit_and_constants():
    s = ball_growth(GeneratingSet.standard(Abelian(2)), 30)
    fit = growth_exponent_fit(s, (5, 30))
    assert abs(fit.slope - 2) < 0.15
    with pytest.raises(ValueError):
        growth_exponent_fit(s, (5, 5))
    consts = relative_growth_constants(s, 2, (1, 10))
    assert consts[0] == 1.0 and all(0.4 < c <= 1.0 for c in consts)


def test_sumset_bound_rank_one():
    # ball(m) >= m (ball(1) - 1) for generating sets of Z
    for gens in ([(1,)], [(1,), (3,)], [(2,), (5,)], [(1,), (7,), (8,)]):
        S = GeneratingSet.symmetric_closure(Abelian(1), gens)
        s = ball_growth(S, 25)
        assert all(s.ball(m) >= m * (s.ball(1) - 1) for m in range(1, 26))


def test_free_nilpotent_growth_degree():
    # hdim of the free (2,2) group is 4
    s = ball_growth(GeneratingSet.standard(FreeNilpotent(2, 2)), 9)
    fit = growth_exponent_fit(s, (4, 9))
    assert 3 < fit.slope < 4.5
    assert math.isfinite(fit.max_residual)
