"""Dilogarithm, the limit law for diagonal crossings, and the polygon counter."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import BudgetError, DomainError
from .geometry import TIE_TOL, f_values

DEFAULT_POLYGON_BUDGET = 300
PI2_6 = math.pi**2 / 6.0


def _dilog_series(x: float) -> float:
    # x <= 1/2: terms shrink at least like 2^-k
    total, power, k = 0.0, x, 1
    terms = []
    while power > 1e-18 * k * k:
        terms.append(power / (k * k))
        k += 1
        power *= x
    total = math.fsum(terms)
    return total


def dilog(x: float) -> float:
    """Li2(x) = sum_{k>=1} x^k / k^2 on ``[0, 1]``.

    Uses the series directly up to 1/2 and Euler's reflection above.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"dilog is implemented on [0, 1], got {x}")
    if x == 1.0:
        return PI2_6
    if x <= 0.5:
        return _dilog_series(x)
    return PI2_6 - math.log(x) * math.log1p(-x) - _dilog_series(1.0 - x)


def karamata_law(r: float) -> float:
    """Limiting share ``(2 / pi^2) Li2(r^2)`` of diagonal crossings inside radius ``r``."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    return 2.0 / math.pi**2 * dilog(r * r)


@dataclass(frozen=True)
class PolygonCount:
    """Crossing counts for the diagonals of a regular ``n``-gon.

    ``total`` is the number of crossing pairs anywhere in the disk, which is
    ``C(n, 4)``.  ``pairs`` counts every pair of lines through four distinct
    vertices (three pairings per 4-subset, crossing or not); ``ratio`` is
    measured against it, which is the normalisation under which it tends to
    :func:`karamata_law` and equals 1/3 at ``r = 1``.
    """

    n: int
    r: float
    inside: int
    total: int

    @property
    def pairs(self) -> int:
        return 3 * self.total

    @property
    def ratio(self) -> float:
        return self.inside / self.pairs

    @property
    def crossing_share(self) -> float:
        """Share of the crossings in the disk that lie inside radius ``r``."""
        return self.inside / self.total


def _gap_compositions(n: int) -> np.ndarray:
    """All ``(g1, g2, g3)`` with ``g_i >= 1`` and ``g1 + g2 + g3 <= n - 1``."""
    g1, g2, g3 = np.meshgrid(np.arange(1, n), np.arange(1, n), np.arange(1, n), indexing="ij")
    keep = g1 + g2 + g3 <= n - 1
    return np.column_stack([g1[keep], g2[keep], g3[keep]])


def crossing_radii(n: int) -> np.ndarray:
    """Distance from the centre of the crossing point for every gap composition.

    Four vertices ``0 < b < c < d`` of the regular ``n``-gon (as vertex
    indices) give crossing diagonals ``0c`` and ``bd``; every 4-subset appears
    once per choice of its first vertex, so counts must be scaled by ``n / 4``.
    Each radius is computed from the lexicographically smallest cyclic
    rotation of the gaps, so all four representatives of a 4-subset agree
    bit for bit.
    """
    g = _gap_compositions(n)
    gaps = np.column_stack([g, n - g.sum(axis=1)])
    rots = np.stack([np.roll(gaps, -s, axis=1) for s in range(4)])
    keys = ((rots[..., 0] * n + rots[..., 1]) * n + rots[..., 2]) * n + rots[..., 3]
    canon = rots[np.argmin(keys, axis=0), np.arange(len(gaps))]
    b = canon[:, 0]
    c = b + canon[:, 1]
    d = c + canon[:, 2]
    zero = np.zeros(len(g))
    return f_values(zero, c / n, b / n, d / n)


def polygon_intersections(n: int, r: float, budget: int = DEFAULT_POLYGON_BUDGET) -> PolygonCount:
    """Count crossing pairs of diagonals of the regular ``n``-gon inside radius ``r``.

    Every unordered pair of crossing diagonals counts once, so concurrent
    diagonals contribute with multiplicity.  Points within ``TIE_TOL`` of the
    circle of radius ``r`` count as inside.
    """
    if n < 4:
        raise DomainError("a polygon needs at least 4 vertices to have crossing diagonals")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r}")
    if n > budget:
        raise BudgetError(f"n = {n} is over the polygon budget of {budget}")
    return polygon_counts(n, [r])[0]


def polygon_counts(n: int, rs) -> list[PolygonCount]:
    """:func:`polygon_intersections` for several radii sharing one enumeration."""
    radii = crossing_radii(n)
    total = math.comb(n, 4)
    out = []
    for r in rs:
        hits = int(np.count_nonzero(radii < r + TIE_TOL))
        inside, rem = divmod(n * hits, 4)
        assert rem == 0, "rotation classes must cover each 4-subset exactly four times"
        out.append(PolygonCount(n, float(r), inside, total))
    return out
