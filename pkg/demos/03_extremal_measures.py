"""
Searching for the best measure
==============================

For fixed atom positions both objectives are polynomials in the weights, so
the weights are climbed by projected gradient ascent.  The positions are
moved by simulated annealing.  Every value printed is recomputed exactly from
the measure that produced it.
"""

import numpy as np

from chordprob import exact, optimize
from chordprob import measure as ms
from chordprob.optimize import OptimizeConfig


def show(rep):
    a = np.round(rep.best_measure.angles, 4)
    w = np.round(rep.best_measure.weights, 4)
    print(f"  value {rep.best_value:.12f}  EL residual {rep.el_residual:.1e}")
    print(f"  atoms {a}  weights {w}")


# %%
# One chord.  Below r = 1/2 the best is 1/2; just above it three equal
# atoms at the corners of a triangle give 2/3.
for r, n in [(0.3, 6), (0.45, 6), (0.55, 6)]:
    print(f"one chord, r = {r}, up to {n} atoms")
    show(optimize.maximize_one_chord(OptimizeConfig(r=r, n_atoms=n, restarts=6)))

# %%
# Two chords.  For r <= 1/2 nothing beats the antipodal pair's 1/4.
for r in (0.2, 0.45):
    print(f"two chords, r = {r}, up to 4 atoms")
    rep = optimize.maximize_two_chord(OptimizeConfig(r=r, n_atoms=4, restarts=6))
    show(rep)
    b = optimize.maximize_one_chord(OptimizeConfig(r=r, n_atoms=4, restarts=3)).best_value
    print(f"  one-chord value {b:.6f}, squared {b * b:.6f} >= two-chord value")

# %%
# At a local maximiser the marginal is the same at every atom.  A lopsided
# measure shows what failure looks like.
for name, m, r in [
    ("antipodal pair", ms.antipodal_pair(), 0.4),
    ("triangle", ms.regular_polygon(3), 0.55),
    ("lopsided", ms.discrete([0.0, 0.5, 0.25], [0.45, 0.45, 0.1]), 0.4),
]:
    row, value = optimize.marginals(m, r, "one_chord")
    print(f"{name:15s} marginals {np.round(row, 4)} value {value:.4f}")
print("triangle at r = 0.55, exactly:", exact.one_chord_functional(ms.regular_polygon(3), 0.55))
