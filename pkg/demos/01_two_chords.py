"""
Where do two random chords meet?
================================

Pick four points on the unit circle, join the first two and the last two.
The two lines meet somewhere; ``f`` is the distance of that point from the
centre.  This script walks through the conventions and the exact values at
``r = 1``.
"""

import numpy as np

from chordprob import exact, geometry
from chordprob import measure as ms

# %%
# Angles are in turns.  Two diameters meet at the centre, a shared endpoint
# is the meeting point itself, and two horizontal chords never meet.
print("diameters      ", geometry.f_value(0, 0.5, 0.25, 0.75))
print("shared endpoint", geometry.f_value(0, 0.5, 0.1, 0.5))
print("same chord     ", geometry.f_value(0, 0.25, 0.25, 0))
print("parallel       ", geometry.f_value(1 / 6, 1 / 3, 5 / 6, 2 / 3))

# %%
# Half the mass at p and half at -p.  Both chords are the diameter through p
# whenever the endpoints differ, so P(l < r) = 1/4 for every r > 0.
pair = ms.antipodal_pair(0.1)
for r in (0.05, 0.3, 0.5, 0.9):
    print(f"antipodal pair, r = {r}: {exact.prob_enumerate(pair, r).value}")

# %%
# At r = 1 only the weights matter.  For n equal atoms the probability is
# 1/3 - 2/n + 17/(3 n^2) - 4/n^3, which creeps up to 1/3 but never reaches it.
print("\n   n   closed form      enumeration")
for n in (2, 3, 4, 6, 10, 20):
    m = ms.regular_polygon(n)
    enum = exact.prob_enumerate(m, 1.0).value
    print(f"{n:4d}   {exact.prob_closed_form_r1(m).value:.12f}   {enum:.12f}")
for n in (100, 10_000):
    print(f"{n:>5}  {exact.prob_closed_form_r1(ms.regular_polygon(n)).value:.12f}")

# %%
# Uneven weights do not help.  The quartic w = 1/3 - P(l < 1) stays above
# one hundredth of the sum of squared weights.
rng = np.random.default_rng(0)
ratios = []
for _ in range(2000):
    a = rng.dirichlet(np.full(int(rng.integers(2, 13)), 0.3))
    if np.all(a > 0):
        a /= a.sum()
        ratios.append(exact.w_function(a) / np.sum(a * a))
print(f"\nsmallest w / sum(a^2) over {len(ratios)} random weight vectors: {min(ratios):.4f}")
