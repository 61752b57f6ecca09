"""Chords of the unit circle and where they meet.

Points on the circle are plain floats measured in turns (fractions of a full
revolution) so that polygon vertices ``k/n`` stay exact; radians only appear
inside trigonometric calls.

A chord through angles ``a`` and ``b`` lies on the line

    x cos(m) + y sin(m) = cos(h),   m = pi (a + b),  h = pi (a - b),

which for ``a == b`` is the tangent line at ``a``.  Every routine below works
from this normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

# Ties within this distance of the radius are treated as sitting on the circle.
TIE_TOL = 1e-12
# Direction determinant below which two distinct lines count as parallel.
PARALLEL_TOL = 1e-12


class GeometryError(ValueError):
    pass


def canon_angle(t: float, unit: str = "turns") -> float:
    """Reduce ``t`` to a representative in ``[0, 1)`` turns."""
    if not math.isfinite(t):
        raise GeometryError(f"angle must be finite, got {t!r}")
    if unit == "radians":
        t = t / (2.0 * math.pi)
    elif unit != "turns":
        raise GeometryError(f"unknown angle unit {unit!r}")
    t = t % 1.0
    # -1e-18 % 1.0 rounds to 1.0
    return 0.0 if t >= 1.0 else t


def canon_angles(t, unit: str = "turns") -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise GeometryError("angles must be finite")
    if unit == "radians":
        t = t / (2.0 * np.pi)
    t = np.mod(t, 1.0)
    return np.where(t >= 1.0, 0.0, t)


@dataclass(frozen=True)
class Arc:
    """Counter-clockwise arc from ``start`` to ``end``.

    Both endpoints are kept in ``[0, 1)`` except for the whole circle, which
    is stored as ``end == start + 1``.  Equal endpoints give a single point.
    """

    start: float
    end: float

    def __post_init__(self):
        start, end = float(self.start), float(self.end)
        if not (math.isfinite(start) and math.isfinite(end)):
            raise GeometryError("arc endpoints must be finite")
        full = start != end and (end - start) % 1.0 == 0.0
        start = canon_angle(start)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", start + 1.0 if full else canon_angle(end))

    @classmethod
    def span(cls, start: float, length: float) -> Arc:
        if not 0.0 <= length <= 1.0:
            raise GeometryError(f"arc length must lie in [0, 1], got {length}")
        if length == 1.0:
            return cls(start, start + 1.0)
        return cls(start, start + length)

    @property
    def length(self) -> float:
        if self.end - self.start >= 1.0:
            return 1.0
        return (self.end - self.start) % 1.0

    def rotate(self, shift: float) -> Arc:
        if self.length == 1.0:
            return Arc.span(self.start + shift, 1.0)
        return Arc(self.start + shift, self.end + shift)

    def contains(self, t, closed: bool = True):
        """Membership test, vectorised over ``t``."""
        offset = np.mod(np.asarray(t, dtype=float) - self.start, 1.0)
        length = self.length
        if length >= 1.0:
            return np.ones_like(offset, dtype=bool) if offset.ndim else True
        if closed:
            inside = (offset <= length + TIE_TOL) | (offset >= 1.0 - TIE_TOL)
        else:
            inside = (offset > TIE_TOL) & (offset < length - TIE_TOL)
        return inside if offset.ndim else bool(inside)


@dataclass(frozen=True)
class IntersectAt:
    point: tuple[float, float]


@dataclass(frozen=True)
class SameLine:
    distance_to_origin: float


@dataclass(frozen=True)
class Parallel:
    pass


LineClass = Union[IntersectAt, SameLine, Parallel]


def _line(a: float, b: float) -> tuple[float, float, float]:
    m = math.pi * (a + b)
    return math.cos(m), math.sin(m), math.cos(math.pi * (a - b))


def chord_distance_to_origin(a: float, b: float) -> float:
    """Distance from the origin to the line through ``a`` and ``b``.

    Coincident points give the tangent line, at distance 1.
    """
    a, b = canon_angle(a), canon_angle(b)
    if a == b:
        return 1.0
    return abs(math.cos(math.pi * (a - b)))


def chord_distances(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.abs(np.cos(np.pi * (a - b)))
    return np.where(a == b, 1.0, d)


def _same_chord(a1, a2, a3, a4) -> bool:
    return (a1 == a3 and a2 == a4) or (a1 == a4 and a2 == a3)


def classify_lines(a1: float, a2: float, a3: float, a4: float) -> LineClass:
    """Decide how the line through ``a1, a2`` meets the line through ``a3, a4``."""
    a1, a2, a3, a4 = (canon_angle(t) for t in (a1, a2, a3, a4))
    if _same_chord(a1, a2, a3, a4):
        return SameLine(chord_distance_to_origin(a1, a2))
    c1, s1, d1 = _line(a1, a2)
    c2, s2, d2 = _line(a3, a4)
    det = c1 * s2 - s1 * c2
    if abs(det) < PARALLEL_TOL:
        return Parallel()
    # a shared endpoint is the intersection point; keep it exactly on the circle
    shared = {a1, a2} & {a3, a4}
    if shared:
        t = 2.0 * math.pi * shared.pop()
        return IntersectAt((math.cos(t), math.sin(t)))
    x = (d1 * s2 - d2 * s1) / det
    y = (c1 * d2 - c2 * d1) / det
    return IntersectAt((x, y))


def f_value(a1: float, a2: float, a3: float, a4: float) -> float:
    """Distance from the origin to where the two chord lines meet.

    Identical lines give the line's own distance to the origin and parallel
    lines give ``inf``.
    """
    a1, a2, a3, a4 = (canon_angle(t) for t in (a1, a2, a3, a4))
    cls = classify_lines(a1, a2, a3, a4)
    if isinstance(cls, SameLine):
        return cls.distance_to_origin
    if isinstance(cls, Parallel):
        return math.inf
    if {a1, a2} & {a3, a4}:
        return 1.0
    return math.hypot(*cls.point)


def f_values(a1, a2, a3, a4) -> np.ndarray:
    """Vectorised :func:`f_value`; inputs must already be canonical turns.

    Same-line and shared-endpoint cases are detected by exact equality of the
    angle representatives, which is what atoms of a discrete measure produce.
    """
    a1, a2, a3, a4 = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (a1, a2, a3, a4)))
    m1 = np.pi * (a1 + a2)
    m2 = np.pi * (a3 + a4)
    d1 = np.cos(np.pi * (a1 - a2))
    d2 = np.cos(np.pi * (a3 - a4))
    sin_dm = np.sin(m2 - m1)
    with np.errstate(divide="ignore", invalid="ignore"):
        sq = (d1 * d1 + d2 * d2 - 2.0 * d1 * d2 * np.cos(m2 - m1)) / (sin_dm * sin_dm)
        out = np.sqrt(np.maximum(sq, 0.0))
    out = np.where(np.abs(sin_dm) < PARALLEL_TOL, np.inf, out)
    shared = (a1 == a3) | (a1 == a4) | (a2 == a3) | (a2 == a4)
    out = np.where(shared, 1.0, out)
    same = ((a1 == a3) & (a2 == a4)) | ((a1 == a4) & (a2 == a3))
    line_dist = np.where(a1 == a2, 1.0, np.abs(d1))
    return np.where(same, line_dist, out)


def below(values, r: float, strict: bool):
    """``values < r`` (strict) or ``values <= r``, with ties at ``r`` resolved
    by :data:`TIE_TOL`."""
    values = np.asarray(values, dtype=float)
    if strict:
        return values < r - TIE_TOL
    return values <= r + TIE_TOL


def _in_open_arc(t: float, a: float, b: float) -> bool:
    return 0.0 < (t - a) % 1.0 < (b - a) % 1.0


def chords_cross_strictly_inside(a1: float, a2: float, a3: float, a4: float) -> bool:
    """True when chord ``a1 a2`` crosses chord ``a3 a4`` inside the open disk.

    Purely combinatorial: the endpoints must interleave around the circle.
    """
    pts = [canon_angle(t) for t in (a1, a2, a3, a4)]
    if len(set(pts)) < 4:
        raise GeometryError("chords_cross_strictly_inside needs four distinct points")
    a1, a2, a3, a4 = pts
    return _in_open_arc(a3, a1, a2) != _in_open_arc(a4, a1, a2)


def i_r_arc(x: float, r: float) -> Arc:
    """Closed arc of points ``y`` whose chord with ``x`` meets the closed disk
    of radius ``r``: centred at the antipode of ``x``, half-width
    ``2 arcsin(r)`` radians."""
    if not 0.0 <= r <= 1.0:
        raise GeometryError(f"r must lie in [0, 1], got {r}")
    half = math.asin(r) / math.pi  # 2 arcsin(r) radians, in turns
    if r == 1.0:
        return Arc.span(x, 1.0)
    return Arc(x + 0.5 - half, x + 0.5 + half)


def in_i_r(y: float, x: float, r: float, strict: bool = False) -> bool:
    if not 0.0 <= r <= 1.0:
        raise GeometryError(f"r must lie in [0, 1], got {r}")
    return bool(below(chord_distance_to_origin(x, y), r, strict))
