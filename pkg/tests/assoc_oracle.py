"""Truncated free associative algebra, used as an independent oracle.

Polynomials are dicts ``word -> Fraction`` with words as tuples of
generator indices; everything above degree ``s`` is dropped.
"""
from fractions import Fraction
from itertools import product

from nilgrowth import _linalg as la


def mul(p, q, s):
    out = {}
    for w1, a in p.items():
        for w2, b in q.items():
            if len(w1) + len(w2) <= s:
                w = w1 + w2
                out[w] = out.get(w, 0) + a * b
    return {w: c for w, c in out.items() if c}


def add(p, q, c=1):
    out = dict(p)
    for w, b in q.items():
        out[w] = out.get(w, 0) + c * b
    return {w: v for w, v in out.items() if v}


def bracket(p, q, s):
    return add(mul(p, q, s), mul(q, p, s), -1)


def exp(p, s):
    # p has no constant term
    out, term = {(): Fraction(1)}, {(): Fraction(1)}
    for k in range(1, s + 1):
        term = {w: c / k for w, c in mul(term, p, s).items()}
        out = add(out, term)
    return out


def log(p, s):
    x = add(p, {(): Fraction(1)}, -1)
    out, power = {}, {(): Fraction(1)}
    for k in range(1, s + 1):
        power = mul(power, x, s)
        out = add(out, power, Fraction((-1) ** (k + 1), k))
    return out


def expand_expr(expr, s):
    """Associative polynomial of a nested bracket expression of generator indices."""
    if isinstance(expr, int):
        return {(expr,): Fraction(1)}
    return bracket(expand_expr(expr[0], s), expand_expr(expr[1], s), s)


def expand(coords, table):
    out = {}
    for c, b in zip(coords, table.basis):
        if c:
            out = add(out, expand_expr(b.expr, table.s), c)
    return out


def rank_of(polys, d, k):
    words = list(product(range(d), repeat=k))
    return la.rank([[p.get(w, 0) for w in words] for p in polys])
