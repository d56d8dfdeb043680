"""Word-metric balls, growth series and approximate-group diagnostics."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._budget import BudgetExceeded, resolve
from ._fibers import FiberSet
from .groups import GeneratingSet, GroupContext, heisenberg_view


@dataclass(frozen=True)
class GrowthRecord:
    m: int
    ball: int
    sphere: int


@dataclass
class GrowthSeries:
    records: list[GrowthRecord] = field(default_factory=list)
    overflow: bool = False

    @property
    def m_max(self) -> int:
        return self.records[-1].m

    def ball(self, m: int) -> int:
        return self.records[m].ball

    def balls(self) -> list[int]:
        return [r.ball for r in self.records]

    def spheres(self) -> list[int]:
        return [r.sphere for r in self.records]

    @classmethod
    def from_balls(cls, balls: Sequence[int], overflow: bool = False) -> "GrowthSeries":
        recs = [GrowthRecord(0, balls[0], balls[0])]
        for m in range(1, len(balls)):
            recs.append(GrowthRecord(m, balls[m], balls[m] - balls[m - 1]))
        return cls(recs, overflow)


def ball_growth(S: GeneratingSet, m_max: int, budget: int | None = None, method: str = "auto") -> GrowthSeries:
    """Exact ``|S^m|`` for ``m = 0..m_max``.

    ``method`` is ``"bfs"`` (frontier search over canonical elements),
    ``"fibers"`` (interval fibres, Heisenberg-type contexts only) or
    ``"auto"``.  The budget caps stored elements for BFS and stored
    intervals for fibres; on overflow the completed prefix is returned with
    ``overflow`` set.
    """
    budget = resolve(budget)
    view = heisenberg_view(S.context)
    if method == "auto":
        method = "fibers" if view is not None else "bfs"
    if method == "fibers":
        if view is None:
            raise ValueError(f"fibre method needs a Heisenberg-type context, got {S.context!r}")
        twist, to_matrix = view
        gens = FiberSet.from_elements((to_matrix(g) for g in S.elements), twist)
        return fiber_growth(gens, m_max, budget)
    if method != "bfs":
        raise ValueError(f"unknown method {method!r}")
    return _bfs_growth(S, m_max, budget)


def _bfs_growth(S: GeneratingSet, m_max: int, budget: int) -> GrowthSeries:
    ctx = S.context
    gens = sorted(S.elements)
    mul = ctx.multiply
    visited = {ctx.identity}
    frontier = [ctx.identity]
    series = GrowthSeries([GrowthRecord(0, 1, 1)])
    for m in range(1, m_max + 1):
        new = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in visited:
                    visited.add(h)
                    new.append(h)
            if len(visited) > budget:
                series.overflow = True
                return series
        series.records.append(GrowthRecord(m, len(visited), len(new)))
        frontier = new
    return series


def fiber_growth(gens: FiberSet, m_max: int, budget: int | None = None) -> GrowthSeries:
    budget = resolve(budget)
    ball = FiberSet({(0, 0): [(0, 0)]}, gens.twist)
    series = GrowthSeries([GrowthRecord(0, 1, 1)])
    for m in range(1, m_max + 1):
        ball = ball.multiply(gens)
        if ball.interval_count() > budget:
            series.overflow = True
            return series
        n = len(ball)
        series.records.append(GrowthRecord(m, n, n - series.records[-1].ball))
    return series


def fiber_powers(gens: FiberSet, m_max: int, budget: int | None = None) -> Iterable[tuple[int, FiberSet]]:
    """Yield ``(m, S^m)`` for ``m = 1..m_max``; raises on budget overflow."""
    budget = resolve(budget)
    ball = gens
    for m in range(1, m_max + 1):
        if m > 1:
            ball = ball.multiply(gens)
        if ball.interval_count() > budget:
            raise BudgetExceeded(f"S^{m} exceeds interval budget {budget}", partial=m - 1)
        yield m, ball


@dataclass(frozen=True)
class DoublingRecord:
    m: int
    ratio: Fraction
    exceeds: bool


def doubling_sequence(series: GrowthSeries, K=None) -> list[DoublingRecord]:
    """``|S^(2m+1)| / |S^m|`` for every ``m`` the series covers; flags ratios above ``K``."""
    top = (series.m_max - 1) // 2
    if top < 0 or series.m_max < 1:
        raise ValueError("series too short for any doubling ratio")
    out = []
    for m in range(0, top + 1):
        ratio = Fraction(series.ball(2 * m + 1), series.ball(m))
        out.append(DoublingRecord(m, ratio, K is not None and ratio > Fraction(K)))
    return out


@dataclass(frozen=True)
class CoverCertificate:
    K: int
    X: tuple

    def verify(self, context: GroupContext, A: Iterable) -> bool:
        A = set(A)
        XA = {context.multiply(x, a) for x in self.X for a in A}
        return all(context.multiply(a, b) in XA for a in A for b in A)


def approx_cover(A: Iterable, context: GroupContext, budget: int | None = None) -> CoverCertificate:
    """Greedy ``X`` with ``A^2 <= X A``; not minimal, always verified."""
    budget = resolve(budget)
    A = sorted(set(A))
    if len(A) ** 2 > budget:
        raise BudgetExceeded(f"|A|^2 = {len(A) ** 2} exceeds budget {budget}")
    mul = context.multiply
    A2 = sorted({mul(a, b) for a in A for b in A})
    uncovered = set(A2)
    heap = []
    for idx, x in enumerate(A2):
        cov = sum(1 for a in A if mul(x, a) in uncovered)
        heap.append((-cov, idx, x))
    heapq.heapify(heap)
    X = []
    while uncovered:
        neg, idx, x = heapq.heappop(heap)
        cov = sum(1 for a in A if mul(x, a) in uncovered)
        if cov == 0:
            continue
        if cov != -neg:
            heapq.heappush(heap, (-cov, idx, x))
            continue
        X.append(x)
        uncovered.difference_update(mul(x, a) for a in A)
    cert = CoverCertificate(len(X), tuple(X))
    assert cert.verify(context, A)
    return cert


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    max_residual: float


def growth_exponent_fit(series: GrowthSeries, window: tuple[int, int]) -> ExponentFit:
    """Least-squares slope of ``log ball`` against ``log m`` on ``window``."""
    lo, hi = window
    if lo < 1 or hi > series.m_max or hi <= lo:
        raise ValueError(f"degenerate window {window} for series up to m={series.m_max}")
    ms = np.arange(lo, hi + 1, dtype=float)
    ys = np.log(np.array([series.ball(m) for m in range(lo, hi + 1)], dtype=float))
    xs = np.log(ms)
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    return ExponentFit(float(slope), float(intercept), float(np.max(np.abs(resid))))


def relative_growth_constants(series: GrowthSeries, dim: int, window: tuple[int, int]) -> list[float]:
    """``|S^n| / (n^dim |S|)`` over the window."""
    b1 = series.ball(1)
    return [series.ball(n) / (n**dim * b1) for n in range(window[0], window[1] + 1)]


def log_ball(series: GrowthSeries, m: int) -> float:
    return math.log(series.ball(m))
