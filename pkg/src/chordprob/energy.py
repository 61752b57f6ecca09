"""Fourier evaluation of ``E|X + Y| / 2`` and ``E|X - Y| / 2``.

With ``a_n`` the Fourier coefficients of the measure,

    E|X +- Y| / 2 = sum_n h_n |a_n|^2,

where ``h_n`` is half of ``sqrt(2)`` times the cosine coefficient of
``(1 +- cos 2 pi t)^(1/2)``:

    plus:   h_n = (-1)^(n+1) 2 / (pi (4n^2 - 1))
    minus:  h_n = -2 / (pi (4n^2 - 1))

Since ``|a_n| <= 1`` the truncated sum is off by at most
``sum_{|n| > N} |h_n| = 2 / (pi (2N + 1))`` (the series telescopes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import DomainError
from .measure import Measure, fourier_coefficient

DEFAULT_TRUNCATION = 2000
KERNELS = ("plus", "minus")


@dataclass(frozen=True)
class EnergyReport:
    value: float
    truncation: int
    tail_bound: float
    kernel: str

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "truncation": self.truncation,
            "tail_bound": self.tail_bound,
            "kernel": self.kernel,
        }


def _check_kernel(kernel: str) -> None:
    if kernel not in KERNELS:
        raise DomainError(f"kernel must be one of {KERNELS}, got {kernel!r}")


def kernel_coefficient(n, kernel: str = "plus"):
    """Cosine coefficient ``c_n`` of ``(1 +- cos 2 pi t)^(1/2)`` on ``[-1/2, 1/2]``."""
    _check_kernel(kernel)
    n = np.asarray(n)
    base = 2.0 * math.sqrt(2.0) / (math.pi * (4.0 * n.astype(float) ** 2 - 1.0))
    out = np.where(n % 2 == 0, -base, base) if kernel == "plus" else -base
    return float(out) if out.ndim == 0 else out


def _half_coefficients(n: np.ndarray, kernel: str) -> np.ndarray:
    # sqrt(2)/2 * c_n written out so the n = 0 term is exactly 2/pi
    base = 2.0 / (math.pi * (4.0 * n.astype(float) ** 2 - 1.0))
    return np.where(n % 2 == 0, -base, base) if kernel == "plus" else -base


def tail_bound(N: int) -> float:
    return 2.0 / (math.pi * (2 * N + 1))


def _expected(m: Measure, N: int, kernel: str) -> EnergyReport:
    if N < 1:
        raise DomainError(f"truncation must be >= 1, got {N}")
    n = np.arange(1, N + 1)
    a = fourier_coefficient(m, n)
    h = _half_coefficients(n, kernel)
    # a_{-n} is the conjugate of a_n, so the two sides contribute equally
    terms = 2.0 * h * (a.real**2 + a.imag**2)
    value = math.fsum(np.append(terms, _half_coefficients(np.array(0), kernel)))
    return EnergyReport(value, N, tail_bound(N), kernel)


def expected_half_sum(m: Measure, N: int = DEFAULT_TRUNCATION) -> EnergyReport:
    """``E|X + Y| / 2``, the mean distance from the origin to a random chord."""
    return _expected(m, N, "plus")


def expected_half_diff(m: Measure, N: int = DEFAULT_TRUNCATION) -> EnergyReport:
    """``E|X - Y| / 2``, half the mean chord length."""
    return _expected(m, N, "minus")


def f_r_fourier(k: int, r: float) -> float:
    """Fourier coefficient of the indicator of ``cos(2 pi t) <= r - 1`` on ``[-1/2, 1/2]``."""
    if k == 0:
        raise DomainError("k = 0 is the mass term; use f_r_mass")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r}")
    return -math.sin(k * math.acos(r - 1.0)) / (math.pi * k)


def f_r_mass(r: float) -> float:
    """Length of ``{t : cos(2 pi t) <= r - 1}``, the zeroth coefficient."""
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r}")
    return 1.0 - math.acos(r - 1.0) / math.pi
