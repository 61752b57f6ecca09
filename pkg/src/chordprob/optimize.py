"""Search for measures that make chords meet near the centre.

The objectives are polynomials in the atom weights with 0/1 coefficients
that depend on the atom angles:

* one chord:  ``sum_ij a_i a_j K_ij``,  ``K_ij = [d(x_i x_j) <= r]``
* two chords: ``sum_ijkl a_i a_j a_k a_l T_ijkl``,  ``T_ijkl = [f(x_i, x_j, x_k, x_l) < r]``

For fixed angles the weights are improved by projected gradient ascent on
the simplex.  The angles only enter through indicator kernels, so they are
searched without derivatives by simulated annealing with restarts.  Every
reported value is recomputed from the returned measure with :mod:`exact`, so
it is a lower bound that the measure actually attains.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .geometry import canon_angles
from .measure import Measure, merge_close_atoms

PRUNE = 1e-9
# weight ascent inside the annealing loop only has to rank proposals
ANNEAL_TOL = 1e-10
ANNEAL_ITERATIONS = 40
OBJECTIVES = ("one_chord", "two_chord")


@dataclass(frozen=True)
class OptimizeConfig:
    r: float
    n_atoms: int = 6
    restarts: int = 8
    anneal_steps: int = 300
    anneal_temp_initial: float = 0.05
    anneal_temp_final: float = 1e-4
    weight_iterations: int = 300
    step_size: float = 1.0
    seed: int = 0
    strict: bool | None = None
    budget: int = exact.DEFAULT_BUDGET

    def __post_init__(self):
        for name in ("n_atoms", "restarts", "anneal_steps", "weight_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {self.r}")
        if not 0.0 < self.anneal_temp_final <= self.anneal_temp_initial:
            raise ValueError("temperatures must be positive and decreasing")
        if self.step_size <= 0.0:
            raise ValueError("step_size must be positive")


@dataclass
class OptimumReport:
    best_measure: Measure
    best_value: float
    objective: str
    trace: list[tuple[int, float]] = field(default_factory=list)
    el_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "best_value": self.best_value,
            "best_measure": self.best_measure.to_dict(),
            "trace": [[k, v] for k, v in self.trace],
            "el_residual": self.el_residual,
        }


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto ``{x >= 0, sum x = 1}`` by sorting."""
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, len(y) + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    return np.maximum(y - css[rho] / (rho + 1), 0.0)


class _Quadratic:
    def __init__(self, kernel: np.ndarray):
        self.k = kernel.astype(float)

    def value(self, w):
        return float(w @ self.k @ w)

    def grad(self, w):
        return 2.0 * (self.k @ w)


class _Quartic:
    # grad_i = 4 sum_jkl T_ijkl w_j w_k w_l holds because T is symmetric under
    # swapping a chord's endpoints and under swapping the two chords
    def __init__(self, kernel: np.ndarray):
        self.t = kernel.astype(float)

    def _marginal(self, w):
        return ((self.t @ w) @ w) @ w

    def value(self, w):
        return float(self._marginal(w) @ w)

    def grad(self, w):
        return 4.0 * self._marginal(w)


def ascend_weights(obj, w: np.ndarray, iterations: int, step: float, tol: float = 1e-15):
    """Monotone projected gradient ascent; returns ``(weights, value)``.

    The step doubles after every accepted move and halves on rejection.  Stops
    once a step gains less than ``tol``.
    """
    val = obj.value(w)
    t = step
    for _ in range(iterations):
        g = obj.grad(w)
        while t > 1e-12:
            cand = project_simplex(w + t * g)
            cval = obj.value(cand)
            if cval >= val:
                break
            t *= 0.5
        else:
            break
        gain = cval - val
        w, val = cand, cval
        if gain <= tol:
            break
        t = min(2.0 * t, 64.0 * step)
    return w, val


def _polish_quadratic(obj: _Quadratic, w: np.ndarray, val: float):
    """Solve the stationarity system on the current support exactly."""
    s = np.nonzero(w > PRUNE)[0]
    m = len(s)
    a = np.zeros((m + 1, m + 1))
    a[:m, :m] = obj.k[np.ix_(s, s)]
    a[:m, m] = -1.0
    a[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    try:
        sol = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError:
        return w, val
    if np.any(sol[:m] <= 0.0):
        return w, val
    cand = np.zeros_like(w)
    cand[s] = sol[:m]
    cand /= cand.sum()
    cval = obj.value(cand)
    return (cand, cval) if cval >= val else (w, val)


def _build(objective: str, angles: np.ndarray, r: float, strict: bool):
    if objective == "one_chord":
        return _Quadratic(exact.chord_kernel(angles, r, strict))
    return _Quartic(exact.quadruple_kernel(angles, r, strict))


def _resolve_strict(objective: str, strict: bool | None) -> bool:
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if strict is None:
        return objective == "two_chord"
    return strict


def _propose(rng, angles, sigma, r):
    new = angles.copy()
    i = rng.integers(len(new))
    u = rng.random()
    if u < 0.6 or len(new) == 1:
        new[i] += sigma * rng.standard_normal()
    elif u < 0.9:
        # drop the atom somewhere on the arc its chord with atom j must hit the disk
        j = (i + 1 + rng.integers(len(new) - 1)) % len(new)
        half = math.asin(r) / math.pi
        new[i] = new[j] + 0.5 + half * (2.0 * rng.random() - 1.0)
    else:
        new += sigma * rng.standard_normal(len(new))
    return canon_angles(new)


def _anneal(cfg: OptimizeConfig, objective: str, strict: bool, rng, angles):
    n = len(angles)
    iters = min(cfg.weight_iterations, ANNEAL_ITERATIONS)
    # a little noise keeps the ascent off symmetric saddle points
    w = 0.5 / n + 0.5 * rng.dirichlet(np.ones(n))
    obj = _build(objective, angles, cfg.r, strict)
    w, val = ascend_weights(obj, w, iters, cfg.step_size, ANNEAL_TOL)
    best = (val, angles, w)
    steps = cfg.anneal_steps
    for s in range(steps):
        frac = s / max(steps - 1, 1)
        temp = cfg.anneal_temp_initial * (cfg.anneal_temp_final / cfg.anneal_temp_initial) ** frac
        sigma = 0.25 * (0.002 / 0.25) ** frac
        cand = _propose(rng, angles, sigma, cfg.r)
        cobj = _build(objective, cand, cfg.r, strict)
        # restart the weights from a blend so atoms dropped earlier can recover
        cw = 0.9 * w + 0.1 * rng.dirichlet(np.ones(n))
        cw, cval = ascend_weights(cobj, cw, iters, cfg.step_size, ANNEAL_TOL)
        if cval >= val or rng.random() < math.exp((cval - val) / temp):
            angles, w, val = cand, cw, cval
            if val > best[0]:
                best = (val, angles, w)
    return best


def _finish(objective: str, strict: bool, cfg: OptimizeConfig, angles, w) -> Measure:
    obj = _build(objective, angles, cfg.r, strict)
    w, val = ascend_weights(obj, w, 20 * cfg.weight_iterations, cfg.step_size)
    if objective == "one_chord":
        w, val = _polish_quadratic(obj, w, val)
    keep = w > PRUNE
    a, wt = merge_close_atoms(angles[keep], w[keep])
    wt = wt / wt.sum()
    if len(a) < len(angles) or objective == "one_chord":
        obj = _build(objective, a, cfg.r, strict)
        wt, _ = ascend_weights(obj, wt, 20 * cfg.weight_iterations, cfg.step_size)
        if objective == "one_chord":
            wt, _ = _polish_quadratic(obj, wt, obj.value(wt))
        keep = wt > PRUNE
        a, wt = a[keep], wt[keep] / wt[keep].sum()
    return Measure(a, wt)


def evaluate(m: Measure, r: float, objective: str, strict: bool | None = None, budget: int = exact.DEFAULT_BUDGET) -> float:
    strict = _resolve_strict(objective, strict)
    if objective == "one_chord":
        return exact.one_chord_functional(m, r, strict)
    return exact.prob_enumerate(m, r, strict, budget).value


def _restart(cfg: OptimizeConfig, objective: str, strict: bool, k: int, ss) -> tuple[float, Measure]:
    rng = np.random.default_rng(ss)
    if k == 0:
        # a regular polygon at a random rotation is a natural symmetric start
        start = (rng.random() + np.arange(cfg.n_atoms)) / cfg.n_atoms
    else:
        start = rng.random(cfg.n_atoms)
    _, angles, w = _anneal(cfg, objective, strict, rng, canon_angles(start))
    m = _finish(objective, strict, cfg, angles, w)
    return evaluate(m, cfg.r, objective, strict, cfg.budget), m


def _maximize(cfg: OptimizeConfig, objective: str, workers: int = 1) -> OptimumReport:
    strict = _resolve_strict(objective, cfg.strict)
    if objective == "two_chord" and cfg.n_atoms > cfg.budget:
        raise exact.BudgetError(f"{cfg.n_atoms} atoms is over the enumeration budget of {cfg.budget}")
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    jobs = list(enumerate(streams))

    def run(job):
        return _restart(cfg, objective, strict, *job)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    # strict improvement only, so ties go to the lower restart index
    best_val, best_m, trace = -1.0, None, []
    for k, (val, m) in enumerate(results):
        if val > best_val:
            best_val, best_m = val, m
        trace.append((k, best_val))
    residual = check_euler_lagrange(best_m, cfg.r, objective, strict)
    return OptimumReport(best_m, best_val, objective, trace, residual)


def maximize_one_chord(cfg: OptimizeConfig, workers: int = 1) -> OptimumReport:
    """Best measure found for ``integral of m(I_r(x)) dm(x)``.

    Restarts draw from independent child seeds, so the result does not
    depend on ``workers``.
    """
    return _maximize(cfg, "one_chord", workers)


def maximize_two_chord(cfg: OptimizeConfig, workers: int = 1) -> OptimumReport:
    """Best measure found for ``P(l < r)`` (``<=`` with ``strict=False``)."""
    return _maximize(cfg, "two_chord", workers)


def marginals(m: Measure, r: float, objective: str, strict: bool | None = None) -> tuple[np.ndarray, float]:
    """Per-atom marginal of the objective and the objective itself.

    One chord: ``m(I_r(x_i))``.  Two chords: ``m x m x m`` of the triples
    ``(y2, y3, y4)`` with ``f(x_i, y2, y3, y4)`` below ``r``.
    """
    strict = _resolve_strict(objective, strict)
    if not m.is_discrete:
        raise exact.DomainError("Euler-Lagrange check needs a discrete measure")
    w = m.weights
    n = m.n_atoms
    if objective == "one_chord":
        row = exact.chord_kernel(m.angles, r, strict).astype(float) @ w
    else:
        row = np.empty(n)
        for i in range(n):
            rows = np.column_stack([np.full(n, i), np.arange(n)])
            t = exact.quadruple_rows(m.angles, r, strict, rows).astype(float)
            row[i] = ((t @ w) @ w) @ w
    return row, math.fsum(row * w)


def check_euler_lagrange(m: Measure, r: float, objective: str, strict: bool | None = None) -> float:
    """Largest deviation over the atoms of the marginal from the objective value.

    A local maximiser has a constant marginal on its support, so this is 0
    there.
    """
    row, value = marginals(m, r, objective, strict)
    return float(np.abs(row - value).max())
