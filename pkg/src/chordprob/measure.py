"""Probability measures on the circle.

A :class:`Measure` is a finite list of atoms plus a finite list of components
that are uniform on an arc.  That covers point masses, the uniform measure and
everything in between that the rest of the package needs, while keeping both
sampling and Fourier coefficients exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Arc, canon_angle, canon_angles

MASS_TOL = 1e-12
GAP_TOL = 1e-12


class MeasureError(ValueError):
    """A measure violates one of its invariants; the message names it."""


@dataclass(frozen=True)
class Measure:
    """Atoms ``(angles, weights)`` plus arc-uniform components ``(arc, mass)``.

    Construction validates: angles are reduced to ``[0, 1)`` and sorted,
    weights must be positive, atoms at least ``GAP_TOL`` apart, and the total
    mass must be 1.
    """

    angles: np.ndarray
    weights: np.ndarray
    arcs: tuple[tuple[Arc, float], ...] = field(default=())

    def __post_init__(self):
        angles = canon_angles(np.atleast_1d(np.asarray(self.angles, dtype=float)))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        if angles.shape != weights.shape or angles.ndim != 1:
            raise MeasureError("angles and weights must be 1-d arrays of equal length")
        if not np.all(np.isfinite(weights)):
            raise MeasureError("weights must be finite")
        if np.any(weights <= 0.0):
            raise MeasureError("negative weight: atom weights must be strictly positive")
        order = np.argsort(angles, kind="stable")
        angles, weights = angles[order], weights[order]
        if len(angles) > 1:
            gaps = np.diff(np.append(angles, angles[0] + 1.0))
            if gaps.min() <= GAP_TOL:
                i = int(np.argmin(gaps))
                raise MeasureError(
                    f"duplicate atom: angles {angles[i]!r} and {angles[(i + 1) % len(angles)]!r} "
                    "coincide; merge them explicitly"
                )
        arcs = []
        for arc, mass in self.arcs:
            mass = float(mass)
            if not math.isfinite(mass) or mass < 0.0:
                raise MeasureError(f"negative weight: arc mass must be >= 0, got {mass}")
            if arc.length <= 0.0:
                raise MeasureError("arc component needs positive length")
            arcs.append((arc, mass))
        total = math.fsum(weights) + math.fsum(m for _, m in arcs)
        if abs(total - 1.0) > MASS_TOL:
            raise MeasureError(f"total mass is {total!r}, expected 1")
        angles.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "arcs", tuple(arcs))

    @property
    def n_atoms(self) -> int:
        return len(self.angles)

    @property
    def is_discrete(self) -> bool:
        return all(mass == 0.0 for _, mass in self.arcs)

    @property
    def continuous_mass(self) -> float:
        return math.fsum(m for _, m in self.arcs)

    def rotate(self, shift: float) -> Measure:
        arcs = tuple((a.rotate(shift), m) for a, m in self.arcs)
        return Measure(self.angles + shift, self.weights, arcs)

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return (
            np.array_equal(self.angles, other.angles)
            and np.array_equal(self.weights, other.weights)
            and self.arcs == other.arcs
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "atoms": [
                {"angle_turns": float(a), "weight": float(w)}
                for a, w in zip(self.angles, self.weights)
            ],
            "arcs": [
                {"start_turns": arc.start, "end_turns": arc.end, "mass": mass}
                for arc, mass in self.arcs
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, unit: str = "turns") -> Measure:
        try:
            atoms = data.get("atoms", [])
            arcs = data.get("arcs", [])
            angles = [canon_angle(float(a["angle_turns"]), unit) for a in atoms]
            weights = [float(a["weight"]) for a in atoms]
            parsed = []
            for a in arcs:
                start, end = float(a["start_turns"]), float(a["end_turns"])
                if unit == "radians":
                    start, end = start / (2 * math.pi), end / (2 * math.pi)
                parsed.append((Arc(start, end), float(a["mass"])))
        except (KeyError, TypeError, AttributeError) as exc:
            raise MeasureError(f"malformed measure document: {exc}") from None
        return cls(np.array(angles, dtype=float), np.array(weights, dtype=float), tuple(parsed))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str, unit: str = "turns") -> Measure:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MeasureError(f"measure file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise MeasureError("measure document must be a JSON object")
        return cls.from_dict(data, unit)


def discrete(angles, weights=None) -> Measure:
    angles = np.asarray(angles, dtype=float)
    if weights is None:
        weights = np.full(len(angles), 1.0 / len(angles))
    return Measure(angles, np.asarray(weights, dtype=float))


def uniform() -> Measure:
    return Measure(np.empty(0), np.empty(0), ((Arc.span(0.0, 1.0), 1.0),))


def antipodal_pair(p: float = 0.0) -> Measure:
    return discrete([p, p + 0.5], [0.5, 0.5])


def regular_polygon(n: int, offset: float = 0.0) -> Measure:
    return discrete(offset + np.arange(n) / n)


def random_discrete(rng: np.random.Generator, n: int) -> Measure:
    """``n`` uniform angles with Dirichlet(1, ..., 1) weights."""
    return Measure(rng.random(n), rng.dirichlet(np.ones(n)))


def random_mixture(rng: np.random.Generator, n_atoms: int, n_arcs: int) -> Measure:
    """Random atoms plus random arc-uniform pieces; every component has positive mass."""
    if n_atoms + n_arcs < 1:
        raise MeasureError("a measure needs at least one component")
    masses = rng.dirichlet(np.ones(n_atoms + n_arcs))
    arcs = tuple(
        (Arc.span(rng.random(), 0.05 + 0.9 * rng.random()), float(mass)) for mass in masses[n_atoms:]
    )
    # fix the rounding so the total is 1 to the last bit that fsum can see
    weights = masses[:n_atoms]
    if n_atoms:
        weights[-1] = 1.0 - math.fsum(weights[:-1]) - math.fsum(m for _, m in arcs)
    return Measure(rng.random(n_atoms), weights, arcs)


def symmetrize(m: Measure) -> Measure:
    """Average of ``m`` and its half-turn rotation (antipodally symmetric)."""
    angles = np.concatenate([m.angles, canon_angles(m.angles + 0.5)])
    weights = np.concatenate([m.weights, m.weights]) / 2.0
    angles, weights = merge_close_atoms(angles, weights)
    arcs = tuple((a, mass / 2.0) for a, mass in m.arcs) + tuple(
        (a.rotate(0.5), mass / 2.0) for a, mass in m.arcs
    )
    return Measure(angles, weights, arcs)


def validate(m: Measure) -> Measure:
    """Rebuild ``m`` through the validating constructor (idempotent)."""
    return Measure(m.angles, m.weights, m.arcs)


def merge_close_atoms(angles, weights, tol: float = GAP_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Combine atoms closer than ``tol`` turns, summing their weights."""
    angles = canon_angles(angles)
    weights = np.asarray(weights, dtype=float)
    order = np.argsort(angles)
    angles, weights = angles[order], weights[order]
    out_a, out_w = [], []
    for a, w in zip(angles, weights):
        if out_a and a - out_a[-1] <= tol:
            out_w[-1] += w
        else:
            out_a.append(a)
            out_w.append(w)
    if len(out_a) > 1 and out_a[0] + 1.0 - out_a[-1] <= tol:
        out_w[0] += out_w.pop()
        out_a.pop()
    return np.array(out_a), np.array(out_w)


def sample(m: Measure, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw ``size`` independent points (in turns) from ``m``."""
    probs = np.concatenate([m.weights, [mass for _, mass in m.arcs]])
    probs = probs / probs.sum()
    comp = rng.choice(len(probs), size=size, p=probs)
    out = np.empty(size)
    is_atom = comp < m.n_atoms
    out[is_atom] = m.angles[comp[is_atom]]
    for j, (arc, _) in enumerate(m.arcs):
        sel = comp == m.n_atoms + j
        k = int(sel.sum())
        if k:
            out[sel] = arc.start + arc.length * rng.random(k)
    return canon_angles(out)


def fourier_coefficient(m: Measure, n) -> np.ndarray | complex:
    """``integral of exp(-2 pi i n t) dm(t)``, vectorised over integer ``n``."""
    n_arr = np.asarray(n, dtype=np.int64)
    scalar = n_arr.ndim == 0
    n_arr = np.atleast_1d(n_arr)
    # reduce n * angle mod 1 before exponentiating to keep the phase accurate
    phase = np.mod(np.outer(n_arr, m.angles), 1.0)
    total = np.exp(-2j * np.pi * phase) @ m.weights if m.n_atoms else np.zeros(len(n_arr), complex)
    for arc, mass in m.arcs:
        if mass == 0.0:
            continue
        if arc.length >= 1.0:
            total = total + np.where(n_arr == 0, mass, 0.0)
            continue
        length = arc.length
        u = np.exp(-2j * np.pi * np.mod(n_arr * arc.start, 1.0))
        v = np.exp(-2j * np.pi * np.mod(n_arr * arc.end, 1.0))
        nz = np.where(n_arr == 0, 1, n_arr)
        term = (v - u) / (-2j * np.pi * nz * length)
        total = total + mass * np.where(n_arr == 0, 1.0, term)
    return complex(total[0]) if scalar else total


def _density(m: Measure, t: np.ndarray) -> np.ndarray:
    dens = np.zeros_like(t)
    for arc, mass in m.arcs:
        offset = np.mod(t - arc.start, 1.0)
        dens += np.where(offset < arc.length, mass / arc.length, 0.0)
    return dens


def is_antipodally_symmetric(m: Measure, tol: float = 1e-9) -> bool:
    """Whether ``m`` is unchanged by a half-turn rotation."""
    if m.n_atoms:
        rot_a = canon_angles(m.angles + 0.5)
        order = np.argsort(rot_a)
        rot_a, rot_w = rot_a[order], m.weights[order]
        # compare as circular sequences, allowing the seam at 0 to move
        da = np.abs(rot_a - m.angles)
        da = np.minimum(da, 1.0 - da)
        if da.max() > tol or np.abs(rot_w - m.weights).max() > tol:
            return False
    # the continuous part is a step function; compare it at every cell midpoint
    cuts = []
    for arc, _ in m.arcs:
        cuts += [arc.start, arc.end, arc.start + 0.5, arc.end + 0.5]
    if not cuts:
        return True
    cuts = np.unique(np.mod(cuts, 1.0))
    # rotated endpoints can differ from the originals in the last bit
    cuts = cuts[np.append(True, np.diff(cuts) > tol)]
    mids = np.mod(cuts + np.diff(np.append(cuts, cuts[0] + 1.0)) / 2.0, 1.0)
    return bool(np.all(np.abs(_density(m, mids) - _density(m, mids + 0.5)) <= tol))
