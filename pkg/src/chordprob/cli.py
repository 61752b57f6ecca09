"""Command line interface: ``chordprob {eval,sample,karamata,optimize,energy,verify}``.

Every command prints its result on stdout (JSON, or CSV for ``karamata``) and
writes a run manifest, either to ``--manifest PATH`` or as one JSON line on
stderr.  Exit codes: 0 success, 1 verification failure, 2 input error,
3 budget error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, energy, exact, geometry, measure, montecarlo, optimize, special

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
SEED_ENV = "CHORD_SEED"
SUITES = ("lemma1", "w-bound", "karamata", "el", "energy")


class InputError(ValueError):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str = __version__
    outputs: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def load_measure(path: str, radians: bool = False) -> measure.Measure:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read measure file: {exc}") from None
    return measure.Measure.from_json(text, "radians" if radians else "turns")


def _unit_r(r: float) -> float:
    if not 0.0 <= r <= 1.0:
        raise InputError(f"r must lie in [0, 1], got {r}")
    return r


def _emit(text: str, out: str | None, outputs: list[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        outputs.append(out)
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------


def cmd_eval(args, outputs) -> int:
    m = load_measure(args.measure_file, args.radians)
    r = _unit_r(args.r)
    method = args.method
    if method == "auto":
        method = "closed-form" if r == 1.0 and args.strict and m.is_discrete and m.n_atoms >= 2 else "enumerate"
    if method == "closed-form":
        if r != 1.0 or not args.strict:
            raise InputError("the closed form only covers r = 1 with strict comparison")
        report = exact.prob_closed_form_r1(m)
    else:
        report = exact.prob_enumerate(m, r, args.strict, args.budget)
    _emit(_dumps(report.to_dict()) + "\n", args.out, outputs)
    return EXIT_OK


def cmd_sample(args, outputs) -> int:
    m = load_measure(args.measure_file, args.radians)
    r = _unit_r(args.r)
    if args.trials < 1:
        raise InputError(f"trials must be >= 1, got {args.trials}")
    estimator = montecarlo.estimate_two_chord if args.objective == "two-chord" else montecarlo.estimate_one_chord
    est = estimator(m, r, args.trials, args.seed, strict=args.strict, workers=args.workers)
    doc = est.to_dict()
    doc["objective"] = args.objective.replace("-", "_")
    _emit(_dumps(doc) + "\n", args.out, outputs)
    return EXIT_OK


def _float_grid(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cannot parse r grid {text!r}") from None
    if not values:
        raise InputError("r grid is empty")
    for r in values:
        if not 0.0 < r <= 1.0:
            raise InputError(f"r must lie in (0, 1], got {r}")
    return values


def cmd_karamata(args, outputs) -> int:
    rs = _float_grid(args.r_grid)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "r", "inside", "total", "ratio", "law", "abs_err", "crossing_share"])
    for n in args.n:
        if n < 4:
            raise InputError(f"n must be >= 4, got {n}")
        if n > args.budget:
            raise exact.BudgetError(f"n = {n} is over the polygon budget of {args.budget}")
        for pc in special.polygon_counts(n, rs):
            law = special.karamata_law(pc.r)
            reals = (pc.ratio, law, abs(pc.ratio - law), pc.crossing_share)
            writer.writerow([n, repr(pc.r), pc.inside, pc.total] + [f"{x:.17g}" for x in reals])
    _emit(buf.getvalue(), args.out, outputs)
    return EXIT_OK


def cmd_optimize(args, outputs) -> int:
    try:
        cfg = optimize.OptimizeConfig(
            r=args.r,
            n_atoms=args.atoms,
            restarts=args.restarts,
            anneal_steps=args.anneal_steps,
            seed=args.seed,
            strict=args.strict,
            budget=args.budget,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    run = optimize.maximize_two_chord if args.objective == "two-chord" else optimize.maximize_one_chord
    report = run(cfg, workers=args.workers)
    _emit(_dumps(report.to_dict()) + "\n", args.out, outputs)
    return EXIT_OK


def cmd_energy(args, outputs) -> int:
    m = load_measure(args.measure_file, args.radians)
    if args.truncation < 1:
        raise InputError(f"truncation must be >= 1, got {args.truncation}")
    fn = energy.expected_half_sum if args.kernel == "plus" else energy.expected_half_diff
    _emit(_dumps(fn(m, args.truncation).to_dict()) + "\n", args.out, outputs)
    return EXIT_OK


# --- verification suites ---------------------------------------------------------
# Each suite returns (name, passed, detail) triples.  Library functions are
# looked up through their modules at call time so a perturbed implementation
# is what gets checked.


def suite_lemma1(seed: int, **_):
    rng = np.random.default_rng([seed, 1])
    worst = 0.0
    for _ in range(200):
        m = measure.random_discrete(rng, int(rng.integers(2, 9)))
        diff = abs(exact.prob_enumerate(m, 1.0, True).value - exact.prob_closed_form_r1(m).value)
        worst = max(worst, diff)
    out = [("closed form = enumeration (200 measures)", worst < 1e-12, f"max diff {worst:.3e}")]
    sq = exact.prob_closed_form_r1(measure.regular_polygon(4)).value
    out.append(("square gives 1/8", abs(sq - 0.125) < 1e-15, f"{sq!r}"))
    hexa = exact.prob_closed_form_r1(measure.regular_polygon(6)).value
    out.append(("hexagon gives 5/36", abs(hexa - 5 / 36) < 1e-15, f"{hexa!r}"))
    return out


def suite_w_bound(seed: int, points: int = 100_000, **_):
    rng = np.random.default_rng([seed, 2])
    ns = rng.integers(2, 13, size=points)
    bound_fail = positive_fail = tested = 0
    worst = math.inf
    for n in range(2, 13):
        k = int(np.count_nonzero(ns == n))
        if not k:
            continue
        # mix flat and spiky Dirichlet draws to reach both the centre and the corners
        conc = np.where(rng.random(k) < 0.5, 1.0, 0.2)
        alphas = rng.gamma(np.repeat(conc[:, None], n, axis=1))
        alphas /= alphas.sum(axis=1, keepdims=True)
        for a in alphas:
            if np.any(a <= 0.0):
                # a coordinate underflowed; the point is off the open simplex
                continue
            tested += 1
            a = a / math.fsum(a)
            w = exact.w_function(a)
            s2 = math.fsum(a * a)
            worst = min(worst, w / s2)
            bound_fail += w < 0.01 * s2
            positive_fail += w <= 0.0
    return [
        (f"w >= 0.01 S2 ({tested} points)", bound_fail == 0, f"{bound_fail} violations, min w/S2 {worst:.4f}"),
        ("w > 0", positive_fail == 0, f"{positive_fail} violations"),
    ]


def suite_karamata(seed: int, polygon_n: int = 200, **_):
    out = []
    for pc in special.polygon_counts(polygon_n, [0.4, 0.6, 0.8]):
        err = abs(pc.ratio - special.karamata_law(pc.r))
        out.append((f"polygon n={polygon_n} r={pc.r}", err < 0.02, f"ratio {pc.ratio:.6f} abs err {err:.2e}"))
    top = special.karamata_law(1.0)
    out.append(("law(1) = 1/3", abs(top - 1 / 3) < 1e-15, f"{top!r}"))
    xs = np.linspace(0.01, 0.99, 99)
    res = max(
        abs(special.dilog(x) + special.dilog(1 - x) - math.pi**2 / 6 + math.log(x) * math.log1p(-x)) for x in xs
    )
    out.append(("dilog reflection identity", res < 1e-11, f"max residual {res:.2e}"))
    est = montecarlo.estimate_two_chord(measure.uniform(), 0.5, 200_000, seed)
    law = special.karamata_law(0.5)
    out.append(("uniform MC at r=0.5", est.within(law), f"mean {est.mean:.5f} law {law:.5f} se {est.std_error:.1e}"))
    return out


def suite_el(seed: int, **_):
    cases = [
        ("antipodal pair r=0.4 one chord", measure.antipodal_pair(), 0.4, "one_chord"),
        ("antipodal pair r=0.4 two chord", measure.antipodal_pair(), 0.4, "two_chord"),
        ("triangle r=0.55 one chord", measure.regular_polygon(3), 0.55, "one_chord"),
    ]
    out = []
    for name, m, r, obj in cases:
        res = optimize.check_euler_lagrange(m, r, obj)
        out.append((name, res < 1e-6, f"residual {res:.2e}"))
    return out


def suite_energy(seed: int, **_):
    rng = np.random.default_rng([seed, 5])
    out = []
    u = energy.expected_half_sum(measure.uniform(), 10)
    out.append(("uniform gives 2/pi", u.value == 2 / math.pi, f"{u.value!r}"))
    a = energy.expected_half_sum(measure.antipodal_pair())
    ok = abs(a.value - 0.5) <= a.tail_bound <= 3e-4
    out.append(("antipodal pair gives 1/2", ok, f"{a.value!r} tail {a.tail_bound:.2e}"))
    upper = lower = 0
    for _ in range(20):
        m = measure.random_mixture(rng, int(rng.integers(0, 5)), int(rng.integers(1, 3)))
        s = energy.expected_half_sum(measure.symmetrize(m))
        upper += s.value > 2 / math.pi + s.tail_bound
        g = energy.expected_half_sum(measure.random_mixture(rng, int(rng.integers(1, 6)), int(rng.integers(0, 2))))
        lower += g.value < 0.5 - g.tail_bound
    out.append(("symmetric measures <= 2/pi (20)", upper == 0, f"{upper} violations"))
    out.append(("all measures >= 1/2 (20)", lower == 0, f"{lower} violations"))
    n = np.arange(0, 21)
    same = np.array_equal(np.abs(energy.kernel_coefficient(n, "plus")), np.abs(energy.kernel_coefficient(n, "minus")))
    out.append(("|c_n plus| = |c_n minus|", bool(same), "n = 0..20"))
    return out


SUITE_FUNCS = {
    "lemma1": suite_lemma1,
    "w-bound": suite_w_bound,
    "karamata": suite_karamata,
    "el": suite_el,
    "energy": suite_energy,
}


def run_suites(names, seed: int, polygon_n: int = 200) -> list[dict]:
    checks = []
    for name in names:
        for check, passed, detail in SUITE_FUNCS[name](seed, polygon_n=polygon_n):
            checks.append({"suite": name, "name": check, "passed": bool(passed), "detail": detail})
    return checks


def cmd_verify(args, outputs) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    if "karamata" in names and args.polygon_n > args.budget:
        raise exact.BudgetError(f"n = {args.polygon_n} is over the polygon budget of {args.budget}")
    start = time.perf_counter()
    checks = run_suites(names, args.seed, args.polygon_n)
    passed = all(c["passed"] for c in checks)
    if args.json:
        text = _dumps({"passed": passed, "checks": checks}) + "\n"
    else:
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  [{c['suite']}] {c['name']}: {c['detail']}" for c in checks]
        n_fail = sum(not c["passed"] for c in checks)
        lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed in {time.perf_counter() - start:.1f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out, outputs)
    return EXIT_OK if passed else EXIT_FAIL


# --- argument parsing ---------------------------------------------------------


def _add_strict(p, default: bool) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", help="compare with < r")
    g.add_argument("--non-strict", dest="strict", action="store_false", help="compare with <= r")
    p.set_defaults(strict=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chordprob", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chordprob {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", metavar="PATH", help="write the run manifest here instead of stderr")
    common.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--radians", action="store_true", help="angles in measure files are radians")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="exact P(l < r) for a discrete measure")
    p.add_argument("measure_file")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--method", choices=("auto", "closed-form", "enumerate"), default="auto")
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    _add_strict(p, True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo estimate")
    p.add_argument("measure_file")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--objective", choices=("two-chord", "one-chord"), default="two-chord")
    _add_strict(p, True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("karamata", parents=[common], help="polygon diagonal crossings against the limit law")
    p.add_argument("--n", type=int, nargs="+", default=[200])
    p.add_argument("--r-grid", default="0.2,0.4,0.6,0.8,1.0", help="comma separated radii")
    p.add_argument("--budget", type=int, default=special.DEFAULT_POLYGON_BUDGET)
    p.set_defaults(func=cmd_karamata)

    p = sub.add_parser("optimize", parents=[common], help="search for extremal measures")
    p.add_argument("--objective", choices=("two-chord", "one-chord"), default="two-chord")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--atoms", type=int, default=6)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--anneal-steps", type=int, default=300)
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", default=None)
    g.add_argument("--non-strict", dest="strict", action="store_false")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("energy", parents=[common], help="E|X + Y|/2 or E|X - Y|/2 by Fourier series")
    p.add_argument("measure_file")
    p.add_argument("--kernel", choices=energy.KERNELS, default="plus")
    p.add_argument("--truncation", type=int, default=energy.DEFAULT_TRUNCATION)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--polygon-n", type=int, default=200)
    p.add_argument("--budget", type=int, default=special.DEFAULT_POLYGON_BUDGET)
    p.add_argument("--json", action="store_true", help="print a JSON summary")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    outputs: list[str] = []
    try:
        if args.seed is None:
            args.seed = default_seed()
        if args.workers < 1:
            raise InputError(f"workers must be >= 1, got {args.workers}")
        code = args.func(args, outputs)
    except exact.BudgetError as exc:
        print(f"chordprob: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, measure.MeasureError, geometry.GeometryError, exact.DomainError) as exc:
        print(f"chordprob: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "seed", "command")}
    manifest = RunManifest(args.command, params, args.seed, outputs=outputs)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json() + "\n")
    else:
        print(manifest.to_json(), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
