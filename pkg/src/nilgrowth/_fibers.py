"""Heisenberg subsets stored fibrewise over the horizontal plane.

A set ``A`` in the (twisted) integer Heisenberg group is kept as a map
``(u, v) -> sorted disjoint integer intervals`` of central coordinates.
Products of such sets stay in this form:

    (u, v, W) * (a, b, V) = (u + a, v + b, W + V + k u b)

so balls of huge generating sets never need to be materialised.
"""
from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, Iterator

Intervals = list[tuple[int, int]]


def merge(intervals: Iterable[tuple[int, int]]) -> Intervals:
    out: Intervals = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


class FiberSet:
    __slots__ = ("fibers", "twist")

    def __init__(self, fibers: dict[tuple[int, int], Intervals], twist: int = 1):
        self.fibers = fibers
        self.twist = twist

    @classmethod
    def from_elements(cls, elements: Iterable[tuple[int, int, int]], twist: int = 1) -> "FiberSet":
        raw: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for u, v, w in elements:
            raw.setdefault((u, v), []).append((w, w))
        return cls({k: merge(iv) for k, iv in raw.items()}, twist)

    @classmethod
    def box(cls, fibers: dict[tuple[int, int], Intervals], twist: int = 1) -> "FiberSet":
        return cls({k: merge(iv) for k, iv in fibers.items() if iv}, twist)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for iv in self.fibers.values() for lo, hi in iv)

    count = __len__

    def interval_count(self) -> int:
        return sum(len(iv) for iv in self.fibers.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberSet) and self.twist == other.twist and self.fibers == other.fibers

    def __contains__(self, g) -> bool:
        iv = self.fibers.get((g[0], g[1]))
        if not iv:
            return False
        i = bisect_right(iv, (g[2], float("inf"))) - 1
        return i >= 0 and iv[i][0] <= g[2] <= iv[i][1]

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        for (u, v) in sorted(self.fibers):
            for lo, hi in self.fibers[(u, v)]:
                for w in range(lo, hi + 1):
                    yield (u, v, w)

    def issubset(self, other: "FiberSet") -> bool:
        for key, iv in self.fibers.items():
            jv = other.fibers.get(key)
            if not jv:
                return False
            for lo, hi in iv:
                i = bisect_right(jv, (lo, float("inf"))) - 1
                if i < 0 or jv[i][1] < hi:
                    return False
        return True

    def union(self, other: "FiberSet") -> "FiberSet":
        out = {k: list(v) for k, v in self.fibers.items()}
        for k, iv in other.fibers.items():
            out[k] = merge(out.get(k, []) + iv)
        return FiberSet(out, self.twist)

    def inverse(self) -> "FiberSet":
        k = self.twist
        out = {}
        for (u, v), iv in self.fibers.items():
            shift = k * u * v
            out[(-u, -v)] = merge((shift - hi, shift - lo) for lo, hi in iv)
        return FiberSet(out, self.twist)

    def multiply(self, other: "FiberSet") -> "FiberSet":
        k = self.twist
        acc: dict[tuple[int, int], list[tuple[int, int]]] = {}
        right = list(other.fibers.items())
        for (u, v), iv in self.fibers.items():
            for (a, b), jv in right:
                shift = k * u * b
                bucket = acc.setdefault((u + a, v + b), [])
                for lo, hi in iv:
                    lo += shift
                    hi += shift
                    for lo2, hi2 in jv:
                        bucket.append((lo + lo2, hi + hi2))
        return FiberSet({key: merge(b) for key, b in acc.items()}, k)

    def __mul__(self, other: "FiberSet") -> "FiberSet":
        return self.multiply(other)
