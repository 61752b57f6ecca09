"""Exact evaluation for discrete measures.

Everything here is a finite sum over atoms: the two-chord probability
``P(l < r)`` by enumerating ordered quadruples, its closed form at ``r = 1``,
the quartic ``w`` functional, and the one-chord quadratic functional
``sum_ij a_i a_j [d(chord_ij) <= r]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import below, chord_distances, f_values
from .measure import Measure

DEFAULT_BUDGET = 60
SIMPLEX_TOL = 1e-12


class DomainError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class EvalReport:
    value: float
    method: str  # "closed_form" or "enumeration"
    strict: bool
    r: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "strictness": "strict" if self.strict else "non_strict",
            "r": self.r,
        }


def _require_discrete(m: Measure) -> None:
    if not m.is_discrete:
        raise DomainError("exact evaluation needs a purely discrete measure; use Monte Carlo")


def _power_sums(weights: np.ndarray) -> tuple[float, float, float]:
    return (
        math.fsum(weights**2),
        math.fsum(weights**3),
        math.fsum(weights**4),
    )


def w_function(weights) -> float:
    """``2 S2 - 8/3 S3 - 3 S2^2 + 4 S4`` with ``Sk`` the k-th power sum."""
    a = np.asarray(weights, dtype=float)
    if a.ndim != 1 or len(a) == 0 or np.any(a <= 0.0) or abs(math.fsum(a) - 1.0) > SIMPLEX_TOL:
        raise DomainError("w_function needs strictly positive weights summing to 1")
    s2, s3, s4 = _power_sums(a)
    return math.fsum([2.0 * s2, -8.0 / 3.0 * s3, -3.0 * s2 * s2, 4.0 * s4])


def prob_closed_form_r1(m: Measure) -> EvalReport:
    """``P(l < 1)`` for a discrete measure from its weights alone."""
    _require_discrete(m)
    a = m.weights
    n = len(a)
    if n < 2:
        raise DomainError("closed form needs at least two atoms (one atom gives probability 0)")
    if n == 2:
        value = 4.0 * a[0] ** 2 * a[1] ** 2
    elif n == 3:
        sq = a**2
        value = 4.0 * (sq[0] * sq[1] + sq[0] * sq[2] + sq[1] * sq[2])
    else:
        s2, s3, s4 = _power_sums(a)
        value = math.fsum([1.0 / 3.0, -2.0 * s2, 8.0 / 3.0 * s3, 3.0 * s2 * s2, -4.0 * s4])
    return EvalReport(float(value), "closed_form", True, 1.0)


def _ranks(angles: np.ndarray) -> np.ndarray:
    ranks = np.empty(len(angles), dtype=np.int64)
    ranks[np.argsort(angles, kind="stable")] = np.arange(len(angles))
    return ranks


def _rows_r1(ranks: np.ndarray, i: np.ndarray, j: np.ndarray, strict: bool) -> np.ndarray:
    """Indicator rows at ``r = 1`` from circular order alone (distinct atoms).

    Strict: interleaved distinct quadruples plus a repeated non-degenerate
    chord.  Non-strict adds every pair of lines meeting on the circle itself
    (shared endpoint, or the same tangent line twice).
    """
    n = len(ranks)
    i = i[:, None, None]
    j = j[:, None, None]
    k = np.arange(n)[None, :, None]
    l = np.arange(n)[None, None, :]
    ri, rj, rk, rl = ranks[i], ranks[j], ranks[k], ranks[l]
    span = (rj - ri) % n
    in_k = ((rk - ri) % n > 0) & ((rk - ri) % n < span)
    in_l = ((rl - ri) % n > 0) & ((rl - ri) % n < span)
    distinct = (i != j) & (k != l) & (i != k) & (i != l) & (j != k) & (j != l)
    same = ((i == k) & (j == l)) | ((i == l) & (j == k))
    out = (distinct & (in_k != in_l)) | (same & (i != j))
    if not strict:
        shared = (i == k) | (i == l) | (j == k) | (j == l)
        out = out | (shared & ~same) | (same & (i == j))
    return out


def quadruple_rows(angles: np.ndarray, r: float, strict: bool, rows: np.ndarray) -> np.ndarray:
    """Indicator ``[f(x_i, x_j, x_k, x_l) < r]`` for the chords ``(i, j)`` listed
    in ``rows`` (shape ``(m, 2)``) against all ``(k, l)``; shape ``(m, n, n)``."""
    angles = np.asarray(angles, dtype=float)
    i, j = rows[:, 0], rows[:, 1]
    if r == 1.0 and len(np.unique(angles)) == len(angles):
        return _rows_r1(_ranks(angles), i, j, strict)
    f = f_values(
        angles[i][:, None, None],
        angles[j][:, None, None],
        angles[None, :, None],
        angles[None, None, :],
    )
    return below(f, r, strict)


def quadruple_kernel(angles: np.ndarray, r: float, strict: bool) -> np.ndarray:
    """Full ``(n, n, n, n)`` indicator tensor; meant for small ``n``."""
    n = len(angles)
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    rows = np.column_stack([ii.ravel(), jj.ravel()])
    return quadruple_rows(angles, r, strict, rows).reshape(n, n, n, n)


def prob_enumerate(
    m: Measure, r: float, strict: bool = True, budget: int = DEFAULT_BUDGET
) -> EvalReport:
    """``P(l < r)`` (or ``<=``) summed over all ordered atom quadruples."""
    _require_discrete(m)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    n = m.n_atoms
    if n > budget:
        raise BudgetError(
            f"{n} atoms means {n**4} quadruples, over the budget of {budget} atoms; "
            "raise the budget or use Monte Carlo"
        )
    a, w = m.angles, m.weights
    pair_w = np.outer(w, w)
    totals = []
    for i in range(n):
        rows = np.column_stack([np.full(n, i), np.arange(n)])
        hits = quadruple_rows(a, r, strict, rows)
        for j in range(n):
            terms = pair_w[hits[j]]
            if terms.size:
                totals.append(pair_w[i, j] * math.fsum(terms))
    value = min(max(math.fsum(totals), 0.0), 1.0)
    return EvalReport(value, "enumeration", strict, float(r))


def chord_kernel(angles, r: float, strict: bool = False) -> np.ndarray:
    """``K_ij = [d(chord x_i x_j) <= r]``; the diagonal uses the tangent line."""
    angles = np.asarray(angles, dtype=float)
    return below(chord_distances(angles[:, None], angles[None, :]), r, strict)


def one_chord_functional(m: Measure, r: float, strict: bool = False) -> float:
    """``integral of m(I_r(x)) dm(x)`` for a discrete measure."""
    _require_discrete(m)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    w = m.weights
    k = chord_kernel(m.angles, r, strict)
    return math.fsum(np.outer(w, w)[k])
