"""Seeded Monte Carlo estimates for the chord probabilities.

Trials are split into fixed-size blocks and block ``b`` draws from
``SeedSequence(seed, spawn_key=(b,))``.  Because the blocks do not depend on
how many workers run them, estimates are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import below, chord_distances, f_values
from .measure import Measure, sample

BLOCK = 1 << 16


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    r: float
    strict: bool

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "trials": self.trials,
            "seed": self.seed,
            "r": self.r,
            "strict": self.strict,
        }

    def within(self, value: float, k: float = 4.0) -> bool:
        return abs(self.mean - value) <= k * self.std_error


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _count(trials: int, seed: int, workers: int, hits_in_block) -> int:
    sizes = [min(BLOCK, trials - start) for start in range(0, trials, BLOCK)]
    jobs = list(enumerate(sizes))

    def run(job):
        b, size = job
        return int(hits_in_block(block_rng(seed, b), size))

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, jobs))
    else:
        counts = [run(job) for job in jobs]
    return sum(counts)


def _estimate(hits: int, trials: int, seed: int, r: float, strict: bool) -> MCEstimate:
    mean = hits / trials
    return MCEstimate(mean, math.sqrt(mean * (1.0 - mean) / trials), trials, seed, float(r), strict)


def _check(trials: int, r: float) -> None:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")


def estimate_two_chord(
    m: Measure, r: float, trials: int, seed: int, strict: bool = True, workers: int = 1
) -> MCEstimate:
    """Estimate ``P(l < r)``: four independent points per trial."""
    _check(trials, r)

    def hits(rng, size):
        x = sample(m, rng, 4 * size).reshape(4, size)
        return np.count_nonzero(below(f_values(x[0], x[1], x[2], x[3]), r, strict))

    return _estimate(_count(trials, seed, workers, hits), trials, seed, r, strict)


def estimate_one_chord(
    m: Measure, r: float, trials: int, seed: int, strict: bool = True, workers: int = 1
) -> MCEstimate:
    """Estimate the probability that one random chord passes within ``r`` of the centre."""
    _check(trials, r)

    def hits(rng, size):
        x = sample(m, rng, 2 * size).reshape(2, size)
        return np.count_nonzero(below(chord_distances(x[0], x[1]), r, strict))

    return _estimate(_count(trials, seed, workers, hits), trials, seed, r, strict)


def estimate_half_sum(m: Measure, trials: int, seed: int) -> tuple[float, float]:
    """Sample mean and standard error of ``|X + Y| / 2`` (the chord's distance to 0)."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    parts = []
    for b, start in enumerate(range(0, trials, BLOCK)):
        size = min(BLOCK, trials - start)
        x = sample(m, block_rng(seed, b), 2 * size).reshape(2, size)
        parts.append(np.abs(np.cos(np.pi * (x[0] - x[1]))))
    d = np.concatenate(parts)
    return float(d.mean()), float(d.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
