"""Boxes ``S(j, k)`` in the discrete Heisenberg group and their balls.

``P(j, k)`` is the set of matrices with ``|u|, |v| <= j`` on the
superdiagonal and ``|w| <= k`` in the corner, and ``S(j, k) = P u P^-1``.
Balls of these sets are computed fibrewise (see ``_fibers``), which keeps
``|S_n^n| ~ n^8`` and the collapsing grid well within desk scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._budget import BudgetExceeded, resolve
from ._fibers import FiberSet
from .groups import GeneratingSet, IntegerHeisenberg, dilate

HEISENBERG = IntegerHeisenberg()


def box(j: int, k: int) -> FiberSet:
    """``P(j, k)``."""
    return FiberSet({(u, v): [(-k, k)] for u in range(-j, j + 1) for v in range(-j, j + 1)})


@dataclass(frozen=True)
class SFamily:
    j: int
    k: int
    P: FiberSet
    S: FiberSet

    def generating_set(self) -> GeneratingSet:
        """Materialised ``S(j, k)``; size is about ``(2j+1)^2 (2k+1)``."""
        return GeneratingSet(HEISENBERG, iter(self.S))


def s_family(j: int, k: int) -> SFamily:
    if j < 1 or k < 1:
        raise ValueError("need j, k >= 1")
    P = box(j, k)
    S = P.union(P.inverse())
    if k >= j * j:
        assert P.issubset(S) and S.issubset(box(j, 2 * k))
    return SFamily(j, k, P, S)


def _powers(gens: FiberSet, m_max: int, budget: int):
    ball = FiberSet({(0, 0): [(0, 0)]}, gens.twist)
    for m in range(1, m_max + 1):
        ball = ball.multiply(gens)
        if ball.interval_count() > budget:
            raise BudgetExceeded(f"ball of radius {m} exceeds interval budget {budget}", partial=m - 1)
        yield m, ball


@dataclass(frozen=True)
class CollapseResult:
    i: int
    j: int
    m: int
    required: bool  # (m i)^2 >= 10 m j
    equal: bool     # S(i, j)^m == S(i, i^2)^m

    @property
    def counterexample(self) -> bool:
        return self.required and not self.equal


def collapsing_check(i: int, j: int, m: int, budget: int | None = None) -> CollapseResult:
    return collapse_grid([i], [j], m, budget, only_m=m)[0]


def collapse_grid(i_values: Iterable[int], j_values: Iterable[int], m_max: int,
                  budget: int | None = None, only_m: int | None = None) -> list[CollapseResult]:
    """Compare ``S(i, j)^m`` with ``S(i, i^2)^m`` for every ``m <= m_max``."""
    budget = resolve(budget)
    out = []
    for i in i_values:
        ref = dict(_powers(s_family(i, i * i).S, m_max, budget))
        for j in j_values:
            for m, ball in _powers(s_family(i, j).S, m_max, budget):
                if only_m is not None and m != only_m:
                    continue
                out.append(CollapseResult(i, j, m, (m * i) ** 2 >= 10 * m * j, ball == ref[m]))
    return out


@dataclass(frozen=True)
class Prop16Row:
    n: int
    f: float
    a: float           # n^a = f(n)
    k: int             # S_n = S(n, k)
    size: int          # |S_n|
    radius: int        # largest m <= n with |S_n^m| computed
    ball: int          # |S_n^radius|
    ratio: float       # |S_n^n| / (f(n) n^3 |S_n|)
    size_norm: float   # |S_n| / n^(5 - a)
    ball_norm: float   # |S_n^n| / n^8

    @property
    def complete(self) -> bool:
        return self.radius == self.n


def prop16_table(f_values: Mapping[int, float], n_list: Sequence[int], budget: int | None = None) -> list[Prop16Row]:
    """Growth numbers of ``S_n = S(n, n^(3 - a_n))`` with ``n^(a_n) = f(n)``.

    Rows whose ball exceeds the budget report the largest completed radius
    and leave the ``|S_n^n|``-based columns as NaN.
    """
    budget = resolve(budget)
    rows = []
    for n in n_list:
        if n < 2:
            raise ValueError("n must be >= 2")
        f = float(f_values[n])
        a = math.log(f) / math.log(n) if f > 1 else 0.0
        k = max(1, round(n ** (3 - a)))
        fam = s_family(n, k)
        size = len(fam.S)
        radius, ball = 0, 1
        try:
            for m, b in _powers(fam.S, n, budget):
                radius, ball = m, len(b)
        except BudgetExceeded:
            pass
        done = radius == n
        nan = float("nan")
        rows.append(Prop16Row(
            n=n, f=f, a=a, k=k, size=size, radius=radius, ball=ball,
            ratio=ball / (f * n**3 * size) if done else nan,
            size_norm=size / n ** (5 - a),
            ball_norm=ball / n**8 if done else nan,
        ))
    return rows


def word_length(target: tuple[int, int, int], gens: FiberSet, budget: int | None = None) -> int:
    if target == (0, 0, 0):
        return 0
    budget = resolve(budget)
    m = 0
    for m, ball in _powers(gens, 10**9, budget):
        if target in ball:
            return m
    raise AssertionError("unreachable")


def cc_estimate(g: Sequence, N: int, q: int, budget: int | None = None) -> Fraction:
    """``d_{S(N, N^2)}(e, delta_{Nq}(g)) / q``, a word-metric estimate of the l-infinity cc norm of ``g``."""
    if N < 1 or q < 1:
        raise ValueError("need N, q >= 1")
    target = dilate(g, N * q)
    return Fraction(word_length(target, s_family(N, N * N).S, budget), q)


@dataclass(frozen=True)
class ConvergenceTable:
    points: tuple
    scales: tuple
    estimates: tuple  # estimates[p][s]

    def max_successive_difference(self, p: int, skip_first: bool = False) -> Fraction:
        row = self.estimates[p]
        diffs = [abs(b - a) for a, b in zip(row, row[1:])]
        if skip_first:
            diffs = diffs[1:]
        return max(diffs, default=Fraction(0))


def convergence_table(points: Sequence[Sequence], scales: Sequence[tuple[int, int]],
                      budget: int | None = None) -> ConvergenceTable:
    points = tuple(tuple(Fraction(c) for c in p) for p in points)
    scales = tuple(tuple(s) for s in scales)
    est = tuple(tuple(cc_estimate(p, N, q, budget) for N, q in scales) for p in points)
    return ConvergenceTable(points, scales, est)


def diagonal_scales(rs: Iterable[int]) -> list[tuple[int, int]]:
    return [(r, r) for r in rs]
