"""Finite-dimensional nilpotent Lie algebras over Q given by structure constants."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import _linalg as la
from ._linalg import Subspace, Vector
from .hall_bch import StructureTable, bch_combine, free_table


class NotNilpotentError(ValueError):
    pass


class LieAlgebra:
    """Lie algebra on basis ``e_1..e_dim``; ``structure[(i, j)]`` is ``[e_i, e_j]``.

    Only pairs with ``i < j`` need to be supplied; the rest follows by
    antisymmetry. Indices are 0-based.
    """

    def __init__(self, dim: int, structure: dict | None = None, labels: Sequence[str] | None = None):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("one label per basis vector")
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), v in (structure or {}).items():
            v = la.as_vector(v)
            if len(v) != dim:
                raise ValueError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {dim}")
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"index out of range in bracket ({i}, {j})")
            if la.is_zero(v):
                continue
            table[(i, j)] = v
        self._table = table

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={len(self._table)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and all(
                self.basis_bracket(i, j) == other.basis_bracket(i, j)
                for i in range(self.dim) for j in range(self.dim)
            )
        )

    def basis_bracket(self, i: int, j: int) -> Vector:
        if (i, j) in self._table:
            return self._table[(i, j)]
        if (j, i) in self._table and (i, j) not in self._table:
            return tuple(-c for c in self._table[(j, i)])
        return la.zero_vector(self.dim)

    @property
    def structure(self) -> dict[tuple[int, int], Vector]:
        """Nonzero ``[e_i, e_j]`` for ``i < j``."""
        out = {}
        for i, j in combinations(range(self.dim), 2):
            v = self.basis_bracket(i, j)
            if not la.is_zero(v):
                out[(i, j)] = v
        return out

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            for j, b in nv:
                if i == j:
                    continue
                w = self.basis_bracket(i, j)
                p = a * b
                for k, c in enumerate(w):
                    if c:
                        out[k] += p * c
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def step(self) -> int:
        """Nilpotency class (0 for the zero algebra)."""
        return len(lower_central_series(self).ranks)

    def bch(self, x: Sequence, y: Sequence, s: int | None = None) -> Vector:
        """``log(exp x exp y)``."""
        s = self.step() if s is None else s
        if s <= 1:
            return la.add(x, y)
        return bch_combine(
            la.as_vector(x), la.as_vector(y), s,
            bracket=self.bracket, add=la.add, scale=la.scale, is_zero=la.is_zero,
        )


# -- constructors ------------------------------------------------------------

def abelian(d: int) -> LieAlgebra:
    return LieAlgebra(d)


def heisenberg() -> LieAlgebra:
    """``[e1, e2] = e3``."""
    return LieAlgebra(3, {(0, 1): (0, 0, 1)})


def free_nilpotent(d: int, s: int) -> LieAlgebra:
    table = free_table(d, s)
    structure = {}
    for (i, j), sparse in table.brackets.items():
        if i < j:
            v = [Fraction(0)] * table.r
            for k, c in sparse.items():
                v[k] = c
            structure[(i, j)] = tuple(v)
    return LieAlgebra(table.r, structure, labels=[str(c) for c in table.basis])


def change_basis(L: LieAlgebra, columns: Sequence[Sequence]) -> LieAlgebra:
    """The same algebra written in the basis whose old-basis coordinates are ``columns``."""
    n = L.dim
    mat = [[Fraction(columns[j][i]) for j in range(n)] for i in range(n)]
    inv = la.inverse(mat)
    structure = {}
    for i, j in combinations(range(n), 2):
        w = L.bracket(columns[i], columns[j])
        structure[(i, j)] = tuple(sum(inv[k][t] * w[t] for t in range(n)) for k in range(n))
    return LieAlgebra(n, structure)


# -- validation and invariants -----------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    triple: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(L: LieAlgebra) -> ValidationReport:
    """Check antisymmetry, the Jacobi identity and nilpotency; report the first violation."""
    n = L.dim
    for i in range(n):
        if not la.is_zero(L.basis_bracket(i, i)):
            return ValidationReport(False, "antisymmetry", (i, i))
        for j in range(i + 1, n):
            if la.add(L.basis_bracket(i, j), L.basis_bracket(j, i)) != la.zero_vector(n):
                return ValidationReport(False, "antisymmetry", (i, j))
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        total = la.add(
            la.add(L.bracket(ei, L.bracket(ej, ek)), L.bracket(ej, L.bracket(ek, ei))),
            L.bracket(ek, L.bracket(ei, ej)),
        )
        if not la.is_zero(total):
            return ValidationReport(False, "jacobi", (i, j, k))
    try:
        lower_central_series(L)
    except NotNilpotentError as exc:
        return ValidationReport(False, str(exc))
    return ValidationReport(True)


@dataclass(frozen=True)
class LowerCentralSeries:
    terms: tuple[Subspace, ...]  # C^1 = g, C^2, ..., ending with the zero subspace

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    @property
    def ranks(self) -> tuple[int, ...]:
        """``a_k = dim C^k - dim C^(k+1)`` for ``k = 1..step``."""
        d = self.dims
        return tuple(d[k] - d[k + 1] for k in range(len(d) - 1))


def lower_central_series(L: LieAlgebra) -> LowerCentralSeries:
    n = L.dim
    current = Subspace.span([L.basis_vector(i) for i in range(n)], n)
    terms = [current]
    while current.dim > 0:
        spans = [L.bracket(L.basis_vector(i), v) for i in range(n) for v in current.basis]
        nxt = Subspace.span([v for v in spans if not la.is_zero(v)], n)
        if nxt.dim == current.dim:
            raise NotNilpotentError(
                f"lower central series stabilises at dimension {current.dim} (not nilpotent)"
            )
        terms.append(nxt)
        current = nxt
    return LowerCentralSeries(tuple(terms))


def homogeneous_dimension(L: LieAlgebra) -> int:
    """``sum_k k * dim(C^k / C^(k+1))``."""
    return sum(k * a for k, a in enumerate(lower_central_series(L).ranks, start=1))


def xi_degree(L: LieAlgebra, u: Sequence) -> int:
    """Largest ``k`` with ``u`` in the k-th lower central series term."""
    u = la.as_vector(u)
    if la.is_zero(u):
        raise ValueError("xi is undefined for the zero vector")
    terms = lower_central_series(L).terms
    k = 0
    for t in terms:
        if not t.contains(u):
            break
        k += 1
    return k


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    # rows: coefficient of e_k in [e_i, x] as a linear form in x
    rows = []
    for i in range(n):
        cols = [L.basis_bracket(i, j) for j in range(n)]
        for k in range(n):
            rows.append([cols[j][k] for j in range(n)])
    return Subspace.span(la.nullspace(rows, n), n)


def is_central(L: LieAlgebra, u: Sequence) -> bool:
    return all(la.is_zero(L.bracket(L.basis_vector(i), u)) for i in range(L.dim))


def central_quotient(L: LieAlgebra, u: Sequence) -> LieAlgebra:
    """``L / <u>`` for a nonzero central ``u``.

    The quotient basis is the image of ``e_i`` for every ``i`` except the
    last index where ``u`` is nonzero.
    """
    u = la.as_vector(u)
    if la.is_zero(u):
        raise ValueError("cannot quotient by the zero vector")
    if not is_central(L, u):
        raise ValueError("u is not central")
    p = max(i for i, c in enumerate(u) if c)
    keep = [i for i in range(L.dim) if i != p]

    def project(v: Vector) -> Vector:
        # e_p == -(1/u_p) sum_{i != p} u_i e_i  modulo <u>
        t = v[p] / u[p]
        return tuple(v[i] - t * u[i] for i in keep)

    structure = {}
    for a, b in combinations(range(len(keep)), 2):
        structure[(a, b)] = project(L.basis_bracket(keep[a], keep[b]))
    Q = LieAlgebra(L.dim - 1, structure, labels=[L.labels[i] for i in keep])

    xi = xi_degree(L, u)
    before = lower_central_series(L).ranks
    after = lower_central_series(Q).ranks
    expected = list(before)
    expected[xi - 1] -= 1
    while expected and expected[-1] == 0:
        expected.pop()
    assert list(after) == expected, (before, after, xi)
    assert homogeneous_dimension(Q) == homogeneous_dimension(L) - xi
    return Q


# -- marked algebras ---------------------------------------------------------

@dataclass(frozen=True)
class MarkedLieAlgebra:
    """Lie algebra with ``d`` marks that generate it."""

    algebra: LieAlgebra
    marks: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(la.as_vector(m) for m in self.marks))
        for m in self.marks:
            if len(m) != self.algebra.dim:
                raise ValueError("mark has wrong length")

    @property
    def d(self) -> int:
        return len(self.marks)

    def images(self, s: int) -> list[Vector]:
        """Image of every Hall basis element of the free ``(d, s)`` algebra."""
        return commutator_images(self.algebra, self.marks, free_table(self.d, s))

    def check_generating(self, s: int) -> None:
        span = Subspace.span(self.images(s), self.algebra.dim)
        if span.dim != self.algebra.dim:
            raise ValueError(
                f"marks generate a subalgebra of dimension {span.dim} < {self.algebra.dim} at step {s}"
            )

    def kernel(self, s: int) -> Subspace:
        """Relations: ``ker(pi)`` inside the free algebra's Hall coordinates."""
        imgs = self.images(s)
        rows = [[imgs[j][k] for j in range(len(imgs))] for k in range(self.algebra.dim)]
        return Subspace.span(la.nullspace(rows, len(imgs)), len(imgs))


def commutator_images(L: LieAlgebra, marks: Sequence[Vector], table: StructureTable) -> list[Vector]:
    out: list[Vector] = []
    for c in table.basis:
        if c.is_generator:
            out.append(la.as_vector(marks[c.index]))
        else:
            out.append(L.bracket(out[c.left], out[c.right]))
    return out


@dataclass(frozen=True)
class MarkedDistance:
    """Certified bracket ``lower <= d <= upper``.

    ``upper`` is ``None`` when exactly one of the relation sets is empty;
    the distance is then unbounded and ``asymmetric`` is set.
    """

    lower: Fraction
    upper: Fraction | None
    asymmetric: bool = False


def marked_distance(A: MarkedLieAlgebra, B: MarkedLieAlgebra, directions: int = 16,
                    s: int | None = None, seed: int = 0) -> MarkedDistance:
    """Bracket the Hausdorff distance between the unit relation spheres of ``A`` and ``B``.

    Norm is l1 in Hall coordinates (unit ball = convex hull of the +-f_i).
    For the directed part from K_A to K_B the convex function dist(., K_B)
    peaks on a vertex of K_A cap Omega, i.e. on a normalised circuit of K_A,
    and bounds dist(., K_B cap sphere) within a factor of two.  When K_A is a
    line, ``directions`` random points of K_B's sphere are also tried as
    explicit witnesses to tighten the upper bound.
    """
    if A.d != B.d:
        raise ValueError("marked algebras must have the same number of marks")
    if directions < 1:
        raise ValueError("directions must be >= 1")
    if s is None:
        s = max(A.algebra.step(), B.algebra.step(), 1)
    A.check_generating(s)
    B.check_generating(s)
    KA, KB = A.kernel(s), B.kernel(s)
    if KA.basis == KB.basis:
        return MarkedDistance(Fraction(0), Fraction(0))
    if KA.dim == 0 or KB.dim == 0:
        # one sphere is empty; every point of the other is at distance >= 2 from nothing
        return MarkedDistance(Fraction(2), None, asymmetric=True)
    # each direction gets its own stream so the result is symmetric in A and B
    lo_ab, up_ab = _directed(KA, KB, directions, random.Random(seed))
    lo_ba, up_ba = _directed(KB, KA, directions, random.Random(seed))
    return MarkedDistance(max(lo_ab, lo_ba), max(up_ab, up_ba))


def _directed(KA: Subspace, KB: Subspace, directions: int, rng: random.Random) -> tuple[Fraction, Fraction]:
    vertices = _circuits(KA)
    lower = Fraction(0)
    upper = Fraction(0)
    for v in vertices:
        dist, nearest = _l1_distance_to_subspace(v, KB)
        lower = max(lower, dist)
        bound = min(Fraction(2), 2 * dist)
        if KA.dim == 1:
            cands = [nearest] if not la.is_zero(nearest) else []
            cands += list(_circuits(KB))
            for _ in range(directions):
                w = tuple(sum(Fraction(rng.randint(-6, 6)) * b[k] for b in KB.basis) for k in range(KB.ambient))
                if not la.is_zero(w):
                    cands.append(w)
            for w in cands:
                w = la.scale(1 / la.l1_norm(w), w)
                bound = min(bound, la.l1_norm(la.sub(v, w)), la.l1_norm(la.add(v, w)))
        upper = max(upper, bound)
    return lower, upper


def _circuits(K: Subspace) -> list[Vector]:
    """Normalised minimal-support vectors of ``K`` (one per +- pair): the vertices of K cap Omega / +-."""
    n = K.ambient
    found: dict[tuple[int, ...], Vector] = {}
    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            if any(set(s) <= set(support) for s in found):
                continue
            outside = [k for k in range(n) if k not in support]
            # vectors of K vanishing outside `support`: combinations c with (B^T c)_k = 0 for k outside
            rows = [[b[k] for b in K.basis] for k in outside]
            sol = la.nullspace(rows, K.dim)
            if len(sol) != 1:
                continue
            vec = tuple(sum(c * b[k] for c, b in zip(sol[0], K.basis)) for k in range(n))
            if tuple(k for k in range(n) if vec[k]) != support:
                continue
            lead = next(c for c in vec if c)
            vec = la.scale((1 if lead > 0 else -1) / la.l1_norm(vec), vec)
            found[support] = vec
    return list(found.values())


def _l1_distance_to_subspace(x: Vector, K: Subspace) -> tuple[Fraction, Vector]:
    """Exact ``min_{y in K} ||x - y||_1`` with a minimiser.

    An optimal basic solution makes ``x - y`` vanish on ``dim K`` coordinates
    where the restricted basis is invertible, so it suffices to try those.
    """
    k = K.dim
    if k == 0:
        return la.l1_norm(x), la.zero_vector(len(x))
    best = None
    for cols in combinations(range(K.ambient), k):
        mat = [[b[c] for b in K.basis] for c in cols]
        if la.det(mat) == 0:
            continue
        coef = la.solve(mat, [x[c] for c in cols])
        y = tuple(sum(a * b[t] for a, b in zip(coef, K.basis)) for t in range(K.ambient))
        dist = la.l1_norm(la.sub(x, y))
        if best is None or dist < best[0]:
            best = (dist, y)
    return best


# -- file format -------------------------------------------------------------

def to_json_dict(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j), v in sorted(L.structure.items()):
        terms = [[k + 1, c.numerator, c.denominator] for k, c in enumerate(v) if c]
        brackets.append([i + 1, j + 1, terms])
    return {"dim": L.dim, "labels": list(L.labels), "brackets": brackets}


def from_json_dict(data: dict) -> LieAlgebra:
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("algebra description needs an integer 'dim'") from exc
    labels = data.get("labels")
    structure: dict[tuple[int, int], list[Fraction]] = {}
    for entry in data.get("brackets", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise ValueError(f"malformed bracket triple: {entry!r}")
        i, j, terms = entry
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= dim):
            raise ValueError(f"malformed bracket triple: {entry!r} (need 1 <= i < j <= dim)")
        v = [Fraction(0)] * dim
        for term in terms:
            if not isinstance(term, (list, tuple)) or len(term) != 3:
                raise ValueError(f"malformed bracket term {term!r} in {entry!r}")
            k, num, den = term
            if not (isinstance(k, int) and 1 <= k <= dim) or not isinstance(num, int) \
                    or not isinstance(den, int) or den == 0:
                raise ValueError(f"malformed bracket term {term!r} in {entry!r}")
            v[k - 1] += Fraction(num, den)
        structure[(i - 1, j - 1)] = v
    return LieAlgebra(dim, structure, labels=labels)


def load(path) -> LieAlgebra:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def dumps(L: LieAlgebra) -> str:
    return json.dumps(to_json_dict(L), indent=2, sort_keys=True) + "\n"
