"""Free nilpotent Lie algebras in a Hall basis.

The basis is the list of basic commutators ``f_1, ..., f_r`` in ``d``
generators of total weight at most ``s``.  A bracket ``[f_i, f_j]`` with
``i > j`` is itself basic when ``f_i`` is a generator, or when
``f_i = [f_a, f_b]`` and ``j >= b``.  Everything else is rewritten into the
basis with antisymmetry and the Jacobi identity.

Indices are 0-based in code; ``f1`` in reprs is index 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence, TypeVar

# Highest truncation order for which BCH coefficients are generated.
MAX_BCH_STEP = 5

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class WeightVector:
    """Multiplicity of each generator in a commutator."""

    entries: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def evaluate(self, lengths: Sequence) -> Fraction:
        """``L^chi = prod L_k ** chi_k``."""
        out = Fraction(1)
        for L, e in zip(lengths, self.entries):
            out *= Fraction(L) ** e
        return out


@dataclass(frozen=True)
class BasicCommutator:
    """Entry of the Hall basis.

    ``left``/``right`` are the indices of the two factors (``None`` for a
    generator); ``expr`` is the nested tuple of generator indices, e.g.
    ``((1, 0), 0)`` for ``[[f2,f1],f1]``.
    """

    index: int
    weight: WeightVector
    left: int | None = None
    right: int | None = None
    expr: object = field(default=None, compare=False)

    @property
    def is_generator(self) -> bool:
        return self.left is None

    def __str__(self) -> str:
        return format_expr(self.expr)


def format_expr(expr) -> str:
    if isinstance(expr, int):
        return f"f{expr + 1}"
    return f"[{format_expr(expr[0])},{format_expr(expr[1])}]"


def enumerate_basic_commutators(d: int, s: int) -> list[BasicCommutator]:
    """All basic commutators of total weight <= s, weight-ascending.

    Within a total weight, commutators are grouped by weight vector (more
    weight on earlier generators first) and then ordered by the indices of
    their two factors.
    """
    if d < 1 or s < 1:
        raise ValueError(f"need d >= 1 and s >= 1, got d={d}, s={s}")
    basis = [
        BasicCommutator(i, WeightVector(tuple(int(k == i) for k in range(d))), expr=i)
        for i in range(d)
    ]
    for k in range(2, s + 1):
        found = []
        for i, a in enumerate(basis):
            for j in range(i):
                b = basis[j]
                if a.weight.total + b.weight.total != k:
                    continue
                if not a.is_generator and j < a.right:
                    continue
                found.append((a.weight + b.weight, i, j))
        found.sort(key=lambda t: (tuple(-e for e in t[0].entries), t[1], t[2]))
        for w, i, j in found:
            basis.append(BasicCommutator(len(basis), w, i, j, (basis[i].expr, basis[j].expr)))
    return basis


@dataclass(frozen=True)
class FreeLieElement:
    """Coordinates over the Hall basis of a free nilpotent Lie algebra."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __add__(self, other: "FreeLieElement") -> "FreeLieElement":
        _check_same(self, other)
        return FreeLieElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FreeLieElement") -> "FreeLieElement":
        _check_same(self, other)
        return FreeLieElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FreeLieElement":
        return FreeLieElement(tuple(-a for a in self.coords))

    def __mul__(self, c) -> "FreeLieElement":
        c = Fraction(c)
        return FreeLieElement(tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


def _check_same(a: FreeLieElement, b: FreeLieElement) -> None:
    if len(a.coords) != len(b.coords):
        raise ValueError(f"dimension mismatch: {len(a.coords)} vs {len(b.coords)}")


Sparse = dict[int, Fraction]


class StructureTable:
    """Structure constants of the free ``s``-step nilpotent Lie algebra on ``d`` generators.

    ``brackets[(i, j)]`` holds ``[f_i, f_j]`` as a sparse ``{k: coeff}``
    map for every pair with nonzero bracket.
    """

    def __init__(self, d: int, s: int, check: bool = True):
        self.d = d
        self.s = s
        self.basis = enumerate_basic_commutators(d, s)
        self.r = len(self.basis)
        self._lookup = {(c.left, c.right): c.index for c in self.basis if not c.is_generator}
        self._memo: dict[tuple[int, int], Sparse] = {}
        self.brackets: dict[tuple[int, int], Sparse] = {}
        for i in range(self.r):
            for j in range(self.r):
                val = self._basis_bracket(i, j)
                if val:
                    self.brackets[(i, j)] = val
        if check:
            self.check_antisymmetry()
            self.check_jacobi()

    def __repr__(self) -> str:
        return f"StructureTable(d={self.d}, s={self.s}, r={self.r})"

    def weight(self, i: int) -> WeightVector:
        return self.basis[i].weight

    def _basis_bracket(self, i: int, j: int) -> Sparse:
        key = (i, j)
        if key in self._memo:
            return self._memo[key]
        bi, bj = self.basis[i], self.basis[j]
        if i == j or bi.weight.total + bj.weight.total > self.s:
            out: Sparse = {}
        elif i < j:
            out = {k: -v for k, v in self._basis_bracket(j, i).items()}
        elif bi.is_generator or j >= bi.right:
            out = {self._lookup[(i, j)]: Fraction(1)}
        else:
            # [[a, b], c] = [a, [b, c]] + [[a, c], b]
            a, b = bi.left, bi.right
            out = _sparse_add(
                self._sparse_bracket({a: Fraction(1)}, self._basis_bracket(b, j)),
                self._sparse_bracket(self._basis_bracket(a, j), {b: Fraction(1)}),
            )
        self._memo[key] = out
        return out

    def _sparse_bracket(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self._basis_bracket(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    # -- elements ----------------------------------------------------------
    def zero(self) -> FreeLieElement:
        return FreeLieElement((Fraction(0),) * self.r)

    def basis_element(self, i: int) -> FreeLieElement:
        return FreeLieElement(tuple(Fraction(int(k == i)) for k in range(self.r)))

    def element(self, coords: Sequence) -> FreeLieElement:
        if len(coords) != self.r:
            raise ValueError(f"expected {self.r} coordinates, got {len(coords)}")
        return FreeLieElement(tuple(coords))

    def bracket(self, a: FreeLieElement, b: FreeLieElement) -> FreeLieElement:
        return hall_rewrite_bracket(a, b, self)

    # -- checks ------------------------------------------------------------
    def check_antisymmetry(self) -> None:
        for (i, j), v in self.brackets.items():
            w = self.brackets.get((j, i), {})
            if {k: -c for k, c in v.items()} != w:
                raise AssertionError(f"antisymmetry fails on (f{i+1}, f{j+1})")

    def check_jacobi(self) -> None:
        r = self.r
        for i, j, k in combinations(range(r), 3):
            wi, wj, wk = (self.basis[t].weight.total for t in (i, j, k))
            if wi + wj + wk > self.s:
                continue
            one = lambda t: {t: Fraction(1)}  # noqa: E731
            total = _sparse_add(
                self._sparse_bracket(one(i), self._basis_bracket(j, k)),
                self._sparse_bracket(one(j), self._basis_bracket(k, i)),
                self._sparse_bracket(one(k), self._basis_bracket(i, j)),
            )
            if total:
                raise AssertionError(f"Jacobi fails on (f{i+1}, f{j+1}, f{k+1})")


def _sparse_add(*terms: Sparse) -> Sparse:
    out: Sparse = {}
    for t in terms:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def free_table(d: int, s: int) -> StructureTable:
    """Shared, immutable structure table for ``(d, s)``."""
    return StructureTable(d, s)


def hall_rewrite_bracket(a: FreeLieElement, b: FreeLieElement, table: StructureTable) -> FreeLieElement:
    """Bilinear bracket of two elements, expanded in the Hall basis and truncated at step s."""
    if len(a.coords) != table.r or len(b.coords) != table.r:
        raise ValueError(
            f"dimension mismatch: table has r={table.r}, got {len(a.coords)} and {len(b.coords)}"
        )
    out = [Fraction(0)] * table.r
    xa = [(i, c) for i, c in enumerate(a.coords) if c]
    xb = [(j, c) for j, c in enumerate(b.coords) if c]
    brackets = table.brackets
    for i, ca in xa:
        for j, cb in xb:
            v = brackets.get((i, j))
            if v:
                p = ca * cb
                for k, c in v.items():
                    out[k] += p * c
    return FreeLieElement(tuple(out))


# -- Baker-Campbell-Hausdorff -------------------------------------------------

@lru_cache(maxsize=None)
def bch_terms(s: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Dynkin's series for ``log(exp X exp Y)`` truncated at degree ``s``.

    Returns ``(word, coeff)`` pairs; a word over {0: X, 1: Y} stands for the
    right-nested bracket ``[w1, [w2, [..., w_n]]]``.  Words whose innermost
    bracket is trivially zero are dropped, as are zero coefficients.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if s > MAX_BCH_STEP:
        raise ValueError(f"BCH truncation s={s} exceeds supported maximum {MAX_BCH_STEP}")
    acc: dict[tuple[int, ...], Fraction] = {}

    def blocks(total: int):
        # all sequences of (a, b) with a + b >= 1 summing to total
        if total == 0:
            yield ()
            return
        for size in range(1, total + 1):
            for a in range(size + 1):
                for rest in blocks(total - size):
                    yield ((a, size - a),) + rest

    for n in range(1, s + 1):
        for seq in blocks(n):
            k = len(seq)
            word: tuple[int, ...] = ()
            denom = n
            for a, b in seq:
                word += (0,) * a + (1,) * b
                denom *= math.factorial(a) * math.factorial(b)
            if n >= 2 and word[-1] == word[-2]:
                continue
            coeff = Fraction((-1) ** (k - 1), k * denom)
            acc[word] = acc.get(word, Fraction(0)) + coeff
    return tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda t: (len(t[0]), t[0])))


def bch_combine(
    x: T,
    y: T,
    s: int,
    bracket: Callable[[T, T], T],
    add: Callable[[T, T], T],
    scale: Callable[[Fraction, T], T],
    is_zero: Callable[[T], bool],
) -> T:
    """Evaluate the truncated BCH series in any nilpotent Lie algebra.

    The algebra is given by its bracket and linear operations; nested
    brackets are shared across words through their common suffixes.
    """
    letters = (x, y)
    memo: dict[tuple[int, ...], T] = {}

    def value(word: tuple[int, ...]) -> T:
        if word in memo:
            return memo[word]
        if len(word) == 1:
            v = letters[word[0]]
        else:
            inner = value(word[1:])
            v = inner if is_zero(inner) else bracket(letters[word[0]], inner)
        memo[word] = v
        return v

    result = add(x, y)
    for word, coeff in bch_terms(s):
        if len(word) == 1:
            continue
        v = value(word)
        if not is_zero(v):
            result = add(result, scale(coeff, v))
    return result


def bch_product(X: FreeLieElement, Y: FreeLieElement, table: StructureTable, s: int | None = None) -> FreeLieElement:
    """``log(exp X exp Y)`` in the free algebra of ``table``, exactly.

    ``s`` defaults to the step of the table; a smaller value truncates the
    series further.
    """
    if s is None:
        s = table.s
    if s > MAX_BCH_STEP:
        raise ValueError(f"BCH truncation s={s} exceeds supported maximum {MAX_BCH_STEP}")
    _check_same(X, Y)
    if len(X.coords) != table.r:
        raise ValueError(f"dimension mismatch: table has r={table.r}, got {len(X.coords)}")
    if s == 1:
        return X + Y
    return bch_combine(
        X, Y, s,
        bracket=table.bracket,
        add=lambda a, b: a + b,
        scale=lambda c, a: a * c,
        is_zero=lambda a: a.is_zero(),
    )


def nilbox_contains(X: FreeLieElement, L: Sequence, m, table: StructureTable) -> bool:
    """Is ``X`` in the nilbox ``B_R(f; (mL)^chi)``?"""
    if len(L) != table.d:
        raise ValueError(f"expected {table.d} lengths, got {len(L)}")
    if len(X.coords) != table.r:
        raise ValueError(f"dimension mismatch: table has r={table.r}, got {len(X.coords)}")
    m = Fraction(m)
    scaled = [m * Fraction(x) for x in L]
    return all(abs(c) <= table.weight(i).evaluate(scaled) for i, c in enumerate(X.coords))


def witt_dimension(d: int, k: int) -> int:
    """Number of basic commutators of total weight ``k`` in ``d`` generators."""
    total = 0
    for m in range(1, k + 1):
        if k % m == 0:
            total += _mobius(m) * d ** (k // m)
    return total // k


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result

