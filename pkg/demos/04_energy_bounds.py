"""
Mean distance from the centre to a random chord
===============================================

E|X + Y| / 2 is the mean distance from the centre to the chord through two
independent points.  It equals a weighted sum of squared Fourier
coefficients of the measure, and the weights have an alternating sign.
Equal weight everywhere gives 2/pi; the antipodal pair gives 1/2, the
smallest value any measure can reach.
"""

import math

import numpy as np

from chordprob import energy, montecarlo
from chordprob import measure as ms

# %%
print("cosine coefficients c_n of sqrt(1 + cos 2 pi t) and sqrt(1 - cos 2 pi t):")
n = np.arange(0, 7)
print("  plus ", np.round(energy.kernel_coefficient(n, "plus"), 6))
print("  minus", np.round(energy.kernel_coefficient(n, "minus"), 6))

# %%
cases = {
    "uniform": ms.uniform(),
    "antipodal pair": ms.antipodal_pair(0.2),
    "single atom": ms.discrete([0.7]),
    "triangle": ms.regular_polygon(3),
}
rng = np.random.default_rng(3)
cases["random mixture"] = ms.random_mixture(rng, 3, 2)
cases["its symmetrisation"] = ms.symmetrize(cases["random mixture"])

print(f"\n{'measure':20s} {'Fourier':>10s} {'tail':>9s} {'Monte Carlo':>12s}")
for seed, (name, m) in enumerate(cases.items()):
    rep = energy.expected_half_sum(m)
    mean, se = montecarlo.estimate_half_sum(m, 400_000, seed)
    print(f"{name:20s} {rep.value:10.6f} {rep.tail_bound:9.1e} {mean:9.6f} +- {se:.0e}")
print(f"2/pi = {2 / math.pi:.6f}")

# %%
# The indicator of cos(2 pi t) <= r - 1 would give the two-chord problem the
# same treatment, but its coefficients change sign with k.
print("\nindicator coefficients at r = 0.7:")
print(np.round([energy.f_r_fourier(k, 0.7) for k in range(1, 11)], 4))
print("mass term", round(energy.f_r_mass(0.7), 6))
