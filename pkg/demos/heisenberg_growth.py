"""How fast do balls grow in the discrete Heisenberg group?

Abelian Z^2 grows quadratically, but the Heisenberg group with the same two
generators picks up an extra factor of m^2 from the centre: commutators of
words of length m reach central elements of size about m^2.  We count balls
exactly and fit the log-log slope.
"""
from nilgrowth import GeneratingSet, IntegerHeisenberg, ball_growth, growth_exponent_fit
from nilgrowth import lie_algebra as L
from nilgrowth.groups import Abelian

heis = ball_growth(GeneratingSet.standard(IntegerHeisenberg()), 30)
flat = ball_growth(GeneratingSet.standard(Abelian(2)), 30)

print(" m   |S^m| Heisenberg   |S^m| Z^2")
for m in (1, 2, 5, 10, 20, 30):
    print(f"{m:2d}   {heis.ball(m):17d}   {flat.ball(m):9d}")

print(f"\nfitted exponent on [5, 30]: Heisenberg {growth_exponent_fit(heis, (5, 30)).slope:.3f}, "
      f"Z^2 {growth_exponent_fit(flat, (5, 30)).slope:.3f}")
print("homogeneous dimension of the Heisenberg algebra:", L.homogeneous_dimension(L.heisenberg()))
