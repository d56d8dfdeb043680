"""Concrete nilpotent groups, generating sets and ordered progressions.

Elements are plain tuples in a canonical coordinate system, so equality and
hashing are coordinate equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from . import _linalg as la
from ._budget import BudgetExceeded, resolve
from .hall_bch import FreeLieElement, bch_product, free_table
from .lie_algebra import LieAlgebra, change_basis, validate

Element = tuple


class GroupContext:
    kind = "abstract"

    def multiply(self, g: Element, h: Element) -> Element:
        raise NotImplementedError

    def invert(self, g: Element) -> Element:
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def power(self, g: Element, n: int) -> Element:
        if n < 0:
            g, n = self.invert(g), -n
        result, base = self.identity, g
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def commutator(self, g: Element, h: Element) -> Element:
        """``[g, h] = g^-1 h^-1 g h``."""
        return self.multiply(self.multiply(self.invert(g), self.invert(h)), self.multiply(g, h))

    def product(self, elements: Iterable[Element]) -> Element:
        out = self.identity
        for g in elements:
            out = self.multiply(out, g)
        return out

    def standard_generators(self) -> list[Element]:
        raise NotImplementedError

    def descriptor(self) -> str:
        return self.kind

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self) -> int:
        return hash(self.descriptor())

    def __repr__(self) -> str:
        return f"<{self.descriptor()}>"


class IntegerHeisenberg(GroupContext):
    """Upper unitriangular 3x3 integer matrices as ``(u, v, w)``.

    ``u`` and ``v`` are the superdiagonal entries and ``w`` the corner, so
    ``(u, v, w)(u', v', w') = (u + u', v + v', w + w' + u v')``.  ``twist``
    multiplies the cocycle; it is 1 for the matrix group.
    """

    kind = "heisenberg"

    def __init__(self, twist: int = 1):
        if twist == 0:
            raise ValueError("twist must be nonzero")
        self.twist = twist

    def multiply(self, g, h):
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + self.twist * g[0] * h[1])

    def invert(self, g):
        return (-g[0], -g[1], -g[2] + self.twist * g[0] * g[1])

    @property
    def identity(self):
        return (0, 0, 0)

    def power(self, g, n):
        u, v, w = g
        return (n * u, n * v, n * w + self.twist * u * v * (n * (n - 1) // 2))

    def standard_generators(self):
        return [(1, 0, 0), (0, 1, 0)]

    def descriptor(self):
        return "heisenberg" if self.twist == 1 else f"heisenberg:twist={self.twist}"


class Abelian(GroupContext):
    kind = "abelian"

    def __init__(self, d: int):
        self.d = d

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    @property
    def identity(self):
        return (0,) * self.d

    def power(self, g, n):
        return tuple(n * a for a in g)

    def standard_generators(self):
        return [tuple(int(i == j) for j in range(self.d)) for i in range(self.d)]

    def descriptor(self):
        return f"abelian:d={self.d}"


class Cyclic(GroupContext):
    """Integers modulo ``n`` as 1-tuples in ``[0, n)``."""

    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n

    def multiply(self, g, h):
        return ((g[0] + h[0]) % self.n,)

    def invert(self, g):
        return ((-g[0]) % self.n,)

    @property
    def identity(self):
        return (0,)

    def power(self, g, k):
        return ((k * g[0]) % self.n,)

    def standard_generators(self):
        return [(1 % self.n,)]

    def descriptor(self):
        return f"cyclic:n={self.n}"


class Unitriangular(GroupContext):
    """Integer upper unitriangular ``n x n`` matrices, strictly-upper entries row-major."""

    kind = "unitriangular"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self._pos = {}
        for i in range(n):
            for j in range(i + 1, n):
                self._pos[(i, j)] = len(self._pos)

    def _entry(self, g, i, j):
        if i == j:
            return 1
        if i > j:
            return 0
        return g[self._pos[(i, j)]]

    def multiply(self, g, h):
        out = [0] * len(self._pos)
        for (i, j), p in self._pos.items():
            s = g[p] + h[p]
            for k in range(i + 1, j):
                s += g[self._pos[(i, k)]] * h[self._pos[(k, j)]]
            out[p] = s
        return tuple(out)

    def invert(self, g):
        # solve g * x = 1 column by column, working up from the diagonal
        out = [0] * len(self._pos)
        for gap in range(1, self.n):
            for i in range(self.n - gap):
                j = i + gap
                s = g[self._pos[(i, j)]]
                for k in range(i + 1, j):
                    s += g[self._pos[(i, k)]] * out[self._pos[(k, j)]]
                out[self._pos[(i, j)]] = -s
        return tuple(out)

    @property
    def identity(self):
        return (0,) * len(self._pos)

    def standard_generators(self):
        gens = []
        for i in range(self.n - 1):
            g = [0] * len(self._pos)
            g[self._pos[(i, i + 1)]] = 1
            gens.append(tuple(g))
        return gens

    def descriptor(self):
        return f"unitriangular:n={self.n}"


class FreeNilpotent(GroupContext):
    """Free ``s``-step nilpotent group on ``d`` generators in exponential Hall coordinates."""

    kind = "free"

    def __init__(self, d: int, s: int):
        self.d, self.s = d, s
        self.table = free_table(d, s)

    def __eq__(self, other):
        return isinstance(other, FreeNilpotent) and (self.d, self.s) == (other.d, other.s)

    __hash__ = GroupContext.__hash__

    def multiply(self, g, h):
        return bch_product(FreeLieElement(g), FreeLieElement(h), self.table).coords

    def invert(self, g):
        return tuple(-a for a in g)

    @property
    def identity(self):
        return (Fraction(0),) * self.table.r

    def power(self, g, n):
        return tuple(n * a for a in g)

    def standard_generators(self):
        return [self.table.basis_element(i).coords for i in range(self.d)]

    def descriptor(self):
        return f"free:d={self.d},s={self.s}"


class LieLattice(GroupContext):
    """Group generated by ``exp(e_i)`` inside a simply connected nilpotent Lie group.

    Elements are exponential coordinates with respect to the basis ``e``.
    Requires ``[Lambda, Lambda] in Lambda`` for the lattice spanned by ``e``.
    """

    kind = "lie-lattice"

    def __init__(self, algebra: LieAlgebra, basis: Sequence[Sequence] | None = None):
        report = validate(algebra)
        if not report:
            raise ValueError(f"invalid Lie algebra: {report.reason} {report.triple or ''}".strip())
        n = algebra.dim
        if basis is None:
            basis = [algebra.basis_vector(i) for i in range(n)]
        self.basis = tuple(la.as_vector(b) for b in basis)
        self.algebra = change_basis(algebra, self.basis)
        for (i, j), v in self.algebra.structure.items():
            if any(c.denominator != 1 for c in v):
                raise ValueError(f"lattice condition fails: [e{i+1}, e{j+1}] = {v} is not integral")
        self._step = self.algebra.step()

    def __eq__(self, other):
        return isinstance(other, LieLattice) and self.algebra == other.algebra

    __hash__ = GroupContext.__hash__

    def multiply(self, g, h):
        return self.algebra.bch(g, h, self._step)

    def invert(self, g):
        return tuple(-a for a in g)

    @property
    def identity(self):
        return (Fraction(0),) * self.algebra.dim

    def power(self, g, n):
        return tuple(n * a for a in g)

    def standard_generators(self):
        return [self.algebra.basis_vector(i) for i in range(self.algebra.dim)]

    def heisenberg_twist(self) -> int | None:
        """``k`` if the algebra is ``[e1, e2] = k e3`` with all else zero."""
        if self.algebra.dim != 3:
            return None
        st = self.algebra.structure
        if set(st) != {(0, 1)}:
            return None
        v = st[(0, 1)]
        if v[0] or v[1] or v[2].denominator != 1:
            return None
        return int(v[2])

    def to_heisenberg(self, g) -> tuple[int, int, int]:
        """Isomorphism onto the twisted integer Heisenberg group (matrix coordinates)."""
        k = self.heisenberg_twist()
        a, b, c = g
        w = c + Fraction(k) * a * b / 2
        if a.denominator != 1 or b.denominator != 1 or w.denominator != 1:
            raise ValueError(f"{g} is not in the lattice group")
        return (int(a), int(b), int(w))

    def descriptor(self):
        return f"lie-lattice:dim={self.algebra.dim}"


def heisenberg_view(context: GroupContext):
    """``(twist, to_matrix)`` if the context is Heisenberg-type, else ``None``."""
    if isinstance(context, IntegerHeisenberg):
        return context.twist, lambda g: g
    if isinstance(context, LieLattice) and context.heisenberg_twist() is not None:
        return context.heisenberg_twist(), context.to_heisenberg
    if isinstance(context, Unitriangular) and context.n == 3:
        return 1, lambda g: (g[0], g[2], g[1])
    return None


def check_group_axioms(context: GroupContext, elements: Sequence[Element]) -> None:
    e = context.identity
    for g in elements:
        assert context.multiply(e, g) == g and context.multiply(g, e) == g
        assert context.multiply(g, context.invert(g)) == e
        assert context.multiply(context.invert(g), g) == e
    for g in elements:
        for h in elements:
            gh = context.multiply(g, h)
            for k in elements:
                assert context.multiply(gh, k) == context.multiply(g, context.multiply(h, k))


# -- generating sets -----------------------------------------------------------

class GeneratingSet:
    """Finite symmetric subset containing the identity."""

    def __init__(self, context: GroupContext, elements: Iterable[Element]):
        self.context = context
        elems = set(elements)
        elems.add(context.identity)
        for g in sorted(elems):
            if context.invert(g) not in elems:
                raise ValueError(f"generating set is not symmetric: inverse of {g} missing")
        self.elements = frozenset(elems)

    @classmethod
    def symmetric_closure(cls, context: GroupContext, elements: Iterable[Element]) -> "GeneratingSet":
        elems = set(elements)
        elems |= {context.invert(g) for g in elems}
        return cls(context, elems)

    @classmethod
    def standard(cls, context: GroupContext) -> "GeneratingSet":
        return cls.symmetric_closure(context, context.standard_generators())

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __repr__(self) -> str:
        return f"GeneratingSet({self.context!r}, {len(self)} elements)"


# -- progressions --------------------------------------------------------------

@dataclass(frozen=True)
class OrderedProgression:
    context: GroupContext
    generators: tuple
    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if not self.generators:
            raise ValueError("need at least one generator")
        if len(self.generators) != len(self.lengths):
            raise ValueError("one length per generator")
        if any(L < 1 for L in self.lengths):
            raise ValueError("lengths must be >= 1")

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class ProgressionSet:
    elements: frozenset
    raw_count: int

    def __len__(self) -> int:
        return len(self.elements)


def _ordered_products(context: GroupContext, generators, bounds, budget: int) -> ProgressionSet:
    raw = math.prod(2 * b + 1 for b in bounds)
    if raw > budget:
        raise BudgetExceeded(f"progression has {raw} exponent tuples, budget is {budget}")
    current = {context.identity}
    for u, b in zip(generators, bounds):
        powers = [context.power(u, k) for k in range(-b, b + 1)]
        current = {context.multiply(g, p) for g in current for p in powers}
    return ProgressionSet(frozenset(current), raw)


def enumerate_progression(P: OrderedProgression, budget: int | None = None) -> ProgressionSet:
    """The set ``{u_1^l_1 ... u_d^l_d : |l_i| <= L_i}`` and the raw tuple count."""
    return _ordered_products(P.context, P.generators, P.lengths, resolve(budget))


def _scaled_bounds(lengths, factor) -> list[int]:
    return [math.floor(Fraction(factor) * Fraction(L)) for L in lengths]


def upper_triangular_check(P, C, budget: int | None = None) -> bool:
    """C-upper-triangular test.

    ``P`` is an :class:`OrderedProgression` (group side: every
    ``[u_i^+-1, u_j^+-1]`` must lie in the tail progression on
    ``u_{j+1}..u_d`` with lengths ``C L_k / (L_i L_j)``) or a
    :class:`LieProgression` (Lie side: ``[e_i, e_j]`` must lie in the real
    box on ``e_{j+1}..e_d`` with the same lengths).
    """
    C = Fraction(C)
    if isinstance(P, LieProgression):
        return _lie_upper_triangular(P, C)
    budget = resolve(budget)
    ctx, u, L = P.context, P.generators, P.lengths
    d = len(u)
    for i in range(d):
        for j in range(i + 1, d):
            scale = C / (Fraction(L[i]) * Fraction(L[j]))
            tail = _ordered_products(ctx, u[j + 1:], _scaled_bounds(L[j + 1:], scale), budget).elements
            for a in (u[i], ctx.invert(u[i])):
                for b in (u[j], ctx.invert(u[j])):
                    if ctx.commutator(a, b) not in tail:
                        return False
    return True


def _lie_upper_triangular(P: "LieProgression", C: Fraction) -> bool:
    alg = P.context.algebra
    L = [Fraction(x) for x in P.lengths]
    d = alg.dim
    for i in range(d):
        for j in range(i + 1, d):
            v = alg.basis_bracket(i, j)
            for k in range(d):
                if k <= j:
                    if v[k]:
                        return False
                elif abs(v[k]) > C * L[k] / (L[i] * L[j]):
                    return False
    return True


def is_m_proper(P: OrderedProgression, m, budget: int | None = None,
                quotient: Callable[[Element], object] | None = None) -> bool:
    """Are the products over ``|l_i| <= m L_i`` pairwise distinct?

    ``quotient`` maps elements to coset keys for the coset version.
    """
    bounds = _scaled_bounds(P.lengths, m)
    raw = math.prod(2 * b + 1 for b in bounds)
    budget = resolve(budget)
    if raw > budget:
        raise BudgetExceeded(f"{raw} exponent tuples exceed budget {budget}")
    ctx = P.context
    key = quotient or (lambda g: g)
    seen: set = set()
    powers = [[ctx.power(u, k) for k in range(-b, b + 1)] for u, b in zip(P.generators, bounds)]
    for combo in product(*powers):
        k = key(ctx.product(combo))
        if k in seen:
            return False
        seen.add(k)
    return True


# -- Lie progressions ------------------------------------------------------------

@dataclass(frozen=True)
class InjectivityRadius:
    value: int
    exact: bool  # False means the radius is at least ``value``

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">= {self.value}"


@dataclass(frozen=True)
class LieProgression:
    """``P_ord(exp e; L)`` for a lattice basis ``e`` of a nilpotent Lie algebra.

    ``target`` optionally gives ``(context, images)`` describing the map
    ``exp(e_i) -> y_i`` into another group; without it the map is the
    identity and the progression is infinitely proper.
    """

    algebra: LieAlgebra
    lengths: tuple
    basis: tuple | None = None
    C: Fraction | None = None
    target: tuple | None = None
    context: LieLattice = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(self.lengths))
        ctx = LieLattice(self.algebra, self.basis)
        object.__setattr__(self, "context", ctx)
        if len(self.lengths) != self.algebra.dim:
            raise ValueError("one length per basis vector")
        if self.C is not None and not upper_triangular_check(self, self.C):
            raise ValueError(f"(e; L) is not in {self.C}-upper-triangular form")

    @property
    def generators(self) -> list:
        return self.context.standard_generators()

    def ordered(self) -> OrderedProgression:
        return OrderedProgression(self.context, self.generators, self.lengths)


def injectivity_radius(P: LieProgression, r_max: int, budget: int | None = None) -> InjectivityRadius:
    """Largest ``j`` such that the map to the target is injective on ``P^j``."""
    budget = resolve(budget)
    if P.target is None:
        return InjectivityRadius(r_max, exact=False)
    tctx, images = P.target
    src = P.context
    base: dict = {}
    for ells in product(*[range(-L, L + 1) for L in P.lengths]):
        g = src.product(src.power(u, k) for u, k in zip(P.generators, ells))
        y = tctx.product(tctx.power(t, k) for t, k in zip(images, ells))
        base[g] = y
    current: dict = {src.identity: tctx.identity}
    for j in range(1, r_max + 1):
        nxt: dict = {}
        for g, y in current.items():
            for h, z in base.items():
                nxt[src.multiply(g, h)] = tctx.multiply(y, z)
            if len(nxt) > budget:
                raise BudgetExceeded(f"P^{j} exceeds budget {budget}", partial=j - 1)
        if len(set(nxt.values())) < len(nxt):
            return InjectivityRadius(j - 1, exact=True)
        current = nxt
    return InjectivityRadius(r_max, exact=False)


# -- Heisenberg dilations ----------------------------------------------------------

def dilate(g: Sequence, t) -> tuple[int, int, int]:
    """``delta_t(u, v, w) = (t u, t v, t^2 w)`` on integer Heisenberg coordinates."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    u, v, w = (Fraction(x) for x in g)
    out = (t * u, t * v, t * t * w)
    if any(c.denominator != 1 for c in out):
        shown = ", ".join(str(c) for c in out)
        raise ValueError(f"delta_{t} of {', '.join(str(Fraction(x)) for x in g)} is ({shown}), not integral")
    return tuple(int(c) for c in out)
