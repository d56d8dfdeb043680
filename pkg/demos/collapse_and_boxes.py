"""Boxes S(j, k) in the Heisenberg group, and where the collapsing identity breaks.

Once (m i)^2 is large compared with m j, one expects the central height j
of S(i, j) to stop mattering: S(i, j)^m should equal S(i, i^2)^m.  Counting
exactly shows otherwise at desk scale: with a short central side every
fibre over (u, v) reaches a smaller range of central coordinates, so the
sets only agree up to a bounded distortion, not as sets.
"""
from nilgrowth.heisenberg import collapse_grid, prop16_table, s_family

rows = collapse_grid([1, 2], range(1, 7), 6)
for r in rows:
    if r.required:
        print(f"i={r.i} j={r.j} m={r.m}: {'equal' if r.equal else 'DIFFERENT'}")

small, big = s_family(2, 1).S, s_family(2, 4).S
a, b = small, big
for _ in range(2):
    a, b = a.multiply(small), b.multiply(big)
missing = sorted(set(b) - set(a))
print(f"\nlargest centre over (0,0): {max(w for u, v, w in a if u == v == 0)} versus "
      f"{max(w for u, v, w in b if u == v == 0)}")
print(f"|S(2,1)^3| = {len(a)}, |S(2,4)^3| = {len(b)}; {len(missing)} elements missing, e.g. {missing[:3]}")

print("\n n   k   |S_n|   |S_n^n|   |S_n^n|/n^8")
for r in prop16_table({n: 1 for n in (2, 3, 4)}, [2, 3, 4]):
    print(f"{r.n:2d} {r.k:3d} {r.size:7d} {r.ball:9d}   {r.ball_norm:.3f}")
