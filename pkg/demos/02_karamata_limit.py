"""
Diagonals of a regular polygon
==============================

Draw every diagonal of a regular n-gon and count the crossings that land
within distance r of the centre.  As n grows the count, taken over all pairs
of lines through four distinct vertices, follows (2 / pi^2) Li2(r^2).  The
same curve is P(l < r) for the uniform measure, which a Monte Carlo run
confirms.
"""

from chordprob import montecarlo, special
from chordprob import measure as ms

radii = [0.2, 0.4, 0.6, 0.8, 1.0]

# %%
print("   n " + "".join(f"   r={r:<5}" for r in radii))
for n in (10, 20, 50, 100, 200):
    counts = special.polygon_counts(n, radii)
    print(f"{n:4d} " + "".join(f"  {pc.ratio:.5f} " for pc in counts))
print(" law " + "".join(f"  {special.karamata_law(r):.5f} " for r in radii))

# %%
# Even polygons have all their diameters through the centre, so a tiny disk
# already holds C(n/2, 2) crossings.  The limit does not notice.
for n in (10, 11):
    print(f"n = {n}: {special.polygon_intersections(n, 1e-6).inside} crossings within 1e-6 of the centre")

# %%
# Uniform measure, a million quadruples per radius.
print("\n  r     MC mean     law        (mean - law) / se")
for seed, r in enumerate([0.25, 0.5, 0.75, 0.9]):
    est = montecarlo.estimate_two_chord(ms.uniform(), r, 1_000_000, seed=seed)
    law = special.karamata_law(r)
    print(f"{r:4}   {est.mean:.5f}   {law:.5f}   {(est.mean - law) / est.std_error:+.2f}")
