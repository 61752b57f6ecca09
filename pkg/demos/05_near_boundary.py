"""
Just inside the unit circle
===========================

At r = 1 the supremum 1/3 is reached only in the limit of spread-out
measures.  For r = 1 - theta the best value stays a fixed amount below 1/3.
Here we probe that gap with the optimiser.  The numbers are lower bounds
found by a heuristic search, not certified suprema.
"""

from chordprob import exact, optimize, special
from chordprob import measure as ms
from chordprob.optimize import OptimizeConfig

# %%
# Reference points: the uniform measure sits on the limit law, and equal
# polygons approach 1/3 at r = 1 but do much worse just inside.
for r in (0.8, 0.9, 0.95, 1.0):
    polys = [exact.prob_enumerate(ms.regular_polygon(n), r).value for n in (8, 12, 16)]
    print(f"r = {r:4}: law {special.karamata_law(r):.4f}, polygons 8/12/16 " + " ".join(f"{p:.4f}" for p in polys))

# %%
# Optimiser at r = 0.9.  Two equal atoms already give 1/4 at any radius.
for n in (4, 8):
    rep = optimize.maximize_two_chord(OptimizeConfig(r=0.9, n_atoms=n, restarts=2, seed=1))
    print(f"r = 0.9, {n} atoms: best {rep.best_value:.6f}, gap to 1/3 {1 / 3 - rep.best_value:.6f}")
