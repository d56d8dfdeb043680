"""Approximating the Carnot-Caratheodory norm by word lengths.

Dilate a point g by N q, measure its word length with respect to the box
S(N, N^2), and divide by q.  Horizontal points are easy (the answer is
exactly 1 for (1, 0, 0)); the central direction converges slowly from below.
"""
from nilgrowth.heisenberg import convergence_table, diagonal_scales

table = convergence_table([(1, 0, 0), (0, 0, 1), (1, 1, 0)], diagonal_scales([2, 3, 4, 5]))
print("point        r=2    r=3    r=4    r=5")
for p, row in zip(table.points, table.estimates):
    print(f"{str(tuple(int(c) for c in p)):10s}", "  ".join(f"{float(v):5.3f}" for v in row))
