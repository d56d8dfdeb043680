"""Analytic growth profile of Lie progressions.

Pipeline: images of the basic commutators under the marking, nilbox volume
polynomial ``f(m)``, its piecewise-monomial envelope ``h(x) = max_i a_i x^i``,
and the normalised log-log profile ``t -> log h(e^t) - log h(1)`` whose
slopes are the envelope degrees.  Volumes use the measure in which the
lattice spanned by the progression basis has covolume 1.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import _linalg as la
from ._budget import BudgetExceeded, resolve
from .balls import GrowthSeries
from .groups import LieProgression
from .hall_bch import WeightVector, free_table
from .lie_algebra import MarkedLieAlgebra


def _log(q: Fraction) -> float:
    q = Fraction(q)
    return math.log(q.numerator) - math.log(q.denominator)


@dataclass(frozen=True)
class CommutatorImages:
    images: tuple[tuple[Fraction, ...], ...]
    weights: tuple[WeightVector, ...]

    @property
    def r(self) -> int:
        return len(self.images)

    @property
    def dim(self) -> int:
        return len(self.images[0])


def basic_commutator_images(M: MarkedLieAlgebra, s: int | None = None) -> CommutatorImages:
    step = M.algebra.step()
    s = step if s is None else s
    if s < step:
        raise ValueError(f"s={s} is below the nilpotency step {step} of the algebra")
    M.check_generating(s)
    table = free_table(M.d, s)
    return CommutatorImages(tuple(M.images(s)), tuple(c.weight for c in table.basis))


def subset_volume(images: CommutatorImages, L: Sequence, subset: Sequence[int]) -> Fraction:
    """Volume of the box spanned by ``L^chi(i) e_i`` for ``i`` in ``subset``."""
    if len(subset) != images.dim:
        raise ValueError(f"subset must have {images.dim} indices, got {len(subset)}")
    mat = [[images.images[i][k] for i in subset] for k in range(images.dim)]
    vol = abs(la.det(mat))
    if vol == 0:
        return Fraction(0)
    for i in subset:
        vol *= images.weights[i].evaluate(L)
    return vol * 2**images.dim


@dataclass(frozen=True)
class GrowthPolynomial:
    terms: dict  # degree -> positive Fraction

    def __call__(self, m) -> Fraction:
        m = Fraction(m)
        return sum((c * m**k for k, c in self.terms.items()), Fraction(0))

    @property
    def degree(self) -> int:
        return max(self.terms)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self.terms.items())


def nilbox_polynomial(images: CommutatorImages, L: Sequence) -> GrowthPolynomial:
    """Sum of subset volumes, each carried at degree ``sum |chi(i_j)|``; zero determinants skipped."""
    terms: dict[int, Fraction] = {}
    for subset in combinations(range(images.r), images.dim):
        vol = subset_volume(images, L, subset)
        if vol:
            deg = sum(images.weights[i].total for i in subset)
            terms[deg] = terms.get(deg, Fraction(0)) + vol
    return GrowthPolynomial(terms)


def growth_polynomial(P: LieProgression) -> GrowthPolynomial:
    alg = P.context.algebra  # written in the progression basis, so the lattice is Z^d
    marks = [alg.basis_vector(i) for i in range(alg.dim)]
    images = basic_commutator_images(MarkedLieAlgebra(alg, marks))
    return nilbox_polynomial(images, P.lengths)


@dataclass(frozen=True)
class Breakpoint:
    """The positive real ``ratio ** (1 / root)``, kept exact."""

    ratio: Fraction
    root: int

    @property
    def log(self) -> float:
        return _log(self.ratio) / self.root

    @property
    def value(self) -> float:
        return math.exp(self.log)


@dataclass(frozen=True)
class Piece:
    degree: int
    coeff: Fraction
    start: Breakpoint | None  # None: the piece starts at x = 0


@dataclass(frozen=True)
class PiecewiseMonomial:
    pieces: tuple[Piece, ...]

    def __call__(self, x) -> float:
        return max(float(p.coeff) * float(x) ** p.degree for p in self.pieces)

    def log_at(self, t: float) -> float:
        """``log h(e^t)``."""
        return max(_log(p.coeff) + p.degree * t for p in self.pieces)

    @property
    def degrees(self) -> list[int]:
        return [p.degree for p in self.pieces]


def _above(a: tuple[int, Fraction], b: tuple[int, Fraction], c: tuple[int, Fraction]) -> bool:
    """Is ``b`` strictly above the chord from ``a`` to ``c`` in (degree, log coeff) space?"""
    (i, ai), (j, aj), (k, ak) = a, b, c
    return (aj / ai) ** (k - j) > (ak / aj) ** (j - i)


def envelope(f: GrowthPolynomial) -> PiecewiseMonomial:
    """``h(x) = max_i a_i x^i`` with monomials that are never strictly maximal on x > 0 dropped."""
    points = [(k, Fraction(c)) for k, c in sorted(f.terms.items()) if c]
    if not points:
        raise ValueError("envelope of the zero polynomial")
    if any(c < 0 for _, c in points):
        raise ValueError("polynomial has negative coefficients")
    hull: list[tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2 and not _above(hull[-2], hull[-1], p):
            hull.pop()
        hull.append(p)
    pieces = [Piece(hull[0][0], hull[0][1], None)]
    for (i, ai), (j, aj) in zip(hull, hull[1:]):
        pieces.append(Piece(j, aj, Breakpoint(ai / aj, j - i)))
    return PiecewiseMonomial(tuple(pieces))


@dataclass(frozen=True)
class LogLogProfile:
    """``t -> log h(e^t) - log h(1)``: continuous, piecewise linear, integer slopes."""

    envelope: PiecewiseMonomial

    @property
    def slopes(self) -> list[int]:
        return self.envelope.degrees

    @property
    def breakpoints(self) -> list[float]:
        return [p.start.log for p in self.envelope.pieces[1:]]

    def __call__(self, t: float) -> float:
        return self.envelope.log_at(t) - self.envelope.log_at(0.0)


def loglog_profile(h: PiecewiseMonomial) -> LogLogProfile:
    return LogLogProfile(h)


@dataclass(frozen=True)
class DeviationRow:
    m: int
    log_ball: float
    profile: float
    residual: float


@dataclass(frozen=True)
class DeviationReport:
    rows: tuple[DeviationRow, ...]

    @property
    def max_abs(self) -> float:
        return max(abs(r.residual) for r in self.rows)

    @property
    def spread(self) -> float:
        res = [r.residual for r in self.rows]
        return max(res) - min(res)


def profile_deviation(series: GrowthSeries, profile: LogLogProfile) -> DeviationReport:
    """Residuals ``log|S^m| - log|S| - profile(log m)`` for ``m = 1..m_max``."""
    if series.m_max < 1:
        raise ValueError("series has no radius >= 1")
    base = math.log(series.ball(1))
    rows = []
    for m in range(1, series.m_max + 1):
        lb = math.log(series.ball(m))
        pr = profile(math.log(m))
        rows.append(DeviationRow(m, lb, pr, lb - base - pr))
    return DeviationReport(tuple(rows))


@dataclass(frozen=True)
class CramerSelection:
    indices: tuple[int, ...]
    factor: Fraction  # largest coefficient seen when expressing sampled vertices in the selected box


def cramer_select(vectors: Sequence[Sequence], M: Sequence, samples: int = 100, seed: int = 0) -> CramerSelection:
    """Indices whose box ``B(x_i; M_i)`` has maximal volume; first maximiser in lexicographic order.

    Every sampled vertex of the full box ``B(x; M)`` is solved against the
    selected box and the largest coordinate is reported; it never exceeds
    ``len(vectors)``.
    """
    xs = [la.as_vector(v) for v in vectors]
    Ms = [Fraction(m) for m in M]
    if len(xs) != len(Ms):
        raise ValueError("one length per vector")
    d = len(xs[0])
    if la.rank(xs) < d:
        raise ValueError("vectors do not span")
    best, best_vol = None, Fraction(-1)
    for subset in combinations(range(len(xs)), d):
        vol = abs(la.det([[xs[i][k] for i in subset] for k in range(d)]))
        for i in subset:
            vol *= Ms[i]
        if vol > best_vol:
            best, best_vol = subset, vol
    A = [[Ms[i] * xs[i][k] for i in best] for k in range(d)]
    Ainv = la.inverse(A)
    rng = random.Random(seed)
    factor = Fraction(0)
    for _ in range(samples):
        signs = [rng.choice((-1, 1)) for _ in xs]
        vertex = [sum(s * m * x[k] for s, m, x in zip(signs, Ms, xs)) for k in range(d)]
        y = [sum(Ainv[a][k] * vertex[k] for k in range(d)) for a in range(d)]
        factor = max(factor, max(abs(c) for c in y))
    return CramerSelection(tuple(best), factor)


@dataclass(frozen=True)
class VdcResult:
    count: int
    volume: Fraction
    passed: bool


def vdc_check(basis: Sequence[Sequence], bounds: Sequence, budget: int | None = None) -> VdcResult:
    """Count ``Z^d`` points in ``{sum l_i b_i : |l_i| <= bounds_i}`` against ``vol / 2^d``."""
    budget = resolve(budget)
    B = [la.as_vector(b) for b in basis]
    d = len(B)
    bounds = [Fraction(x) for x in bounds]
    cols = [[B[i][k] for i in range(d)] for k in range(d)]
    det = abs(la.det(cols))
    if det == 0:
        raise ValueError("basis is degenerate")
    inv = la.inverse(cols)
    reach = [sum(abs(B[i][k]) * bounds[i] for i in range(d)) for k in range(d)]
    ranges = [range(-math.floor(r), math.floor(r) + 1) for r in reach]
    if math.prod(len(r) for r in ranges) > budget:
        raise BudgetExceeded("bounding box of the body exceeds the budget")
    count = 0
    for p in product(*ranges):
        if all(abs(sum(inv[a][k] * p[k] for k in range(d))) <= bounds[a] for a in range(d)):
            count += 1
    volume = 2**d * det * math.prod(bounds)
    return VdcResult(count, volume, count >= volume / 2**d)
