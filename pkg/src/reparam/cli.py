"""Command-line front end: verification, distribution checks, grids, MLE demos.

Every check is a thin wrapper over a library invariant; the CLI only
orchestrates, formats and sets the exit code (0 all checks pass, 1 a check
failed, 2 usage/parse error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import inference as inf
from . import param_tree as pt
from . import stat_oracles as so
from . import vector_maps as vm
from ._errors import ConvergenceError, DomainError, ParseError, ReparamError
from .scalar_maps import expit

USAGE_ERROR = 2
CHECK_FAILURE = 1


class RunReport:
    """Accumulates named checks and serializes them reproducibly."""

    def __init__(self, command, seed):
        self.command = command
        self.seed = seed
        self.checks = []
        self.extra = {}
        self._t0 = time.perf_counter()

    def check(self, name, passed, metric, threshold):
        self.checks.append(
            {
                "name": name,
                "status": "pass" if passed else "fail",
                "metric": float(metric),
                "threshold": threshold,
            }
        )

    @property
    def passed(self):
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self):
        # wall time is excluded here so identical command+seed gives
        # byte-identical output
        payload = {
            "command": self.command,
            "seed": self.seed,
            "checks": self.checks,
            **self.extra,
        }
        return json.dumps(payload, sort_keys=True)

    def print_human(self, out=None):
        out = out if out is not None else sys.stdout
        wall = time.perf_counter() - self._t0
        print(f"command: {self.command}", file=out)
        print(f"seed: {self.seed}", file=out)
        for c in self.checks:
            print(
                f"[{c['status'].upper():4s}] {c['name']}: metric={c['metric']:.6g} "
                f"threshold={c['threshold']}",
                file=out,
            )
        for key, val in self.extra.items():
            print(f"{key}: {val}", file=out)
        print(f"wall_time_s: {wall:.3f}", file=out)


def _emit(report, args):
    if args.json:
        print(report.to_json())
    else:
        report.print_human()
    return 0 if report.passed else CHECK_FAILURE


def cmd_roundtrip(args):
    try:
        spec = pt.parse_spec(args.spec)
    except (ParseError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    report = RunReport(f"roundtrip --spec {args.spec!r}", args.seed)
    rng = so.Rng(args.seed)
    k = spec.size
    max_err = 0.0
    for _ in range(args.trials):
        theta = rng.uniform((k,)) * 20.0 - 10.0
        try:
            back = pt.params_to_reals1d(spec, pt.reals1d_to_params(spec, theta))
        except ReparamError:
            # a corner draw degenerated numerically; count it as a failure
            max_err = math.inf
            break
        if k:
            max_err = max(max_err, float(np.max(np.abs(back - theta))))
    report.check("roundtrip_max_error", max_err <= args.tol, max_err, args.tol)
    return _emit(report, args)


def _mean_symmetry_checks(report, coords, label):
    n = coords.shape[0]
    for i, col in enumerate(coords):
        se = float(np.std(col) / np.sqrt(col.shape[0])) or 1.0
        dev = abs(float(np.mean(col)))
        report.check(f"{label}_mean_coord{i}", dev <= 4.0 * se, dev, 4.0 * se)


def cmd_distcheck(args):
    if args.samples < 10**4:
        print("error: --samples must be at least 10000", file=sys.stderr)
        return USAGE_ERROR
    family, n, N = args.family, args.dim, args.samples
    report = RunReport(f"distcheck --family {family} --dim {n}", args.seed)
    rng = so.Rng(args.seed)
    x = so.sample_logistic(rng, (N, n))
    if family == "simplex":
        w = vm.reals_to_simplex(x)
        target = 1.0 / (n + 1)
        for i in range(n + 1):
            se = float(np.std(w[:, i]) / np.sqrt(N))
            dev = abs(float(np.mean(w[:, i])) - target)
            report.check(f"simplex_mean_coord{i}", dev <= 4.0 * se, dev, 4.0 * se)
        u = expit(vm.simplex_to_reals(w))
        for i in range(n):
            _, p = so.ks_test(u[:, i], lambda t: np.clip(t, 0.0, 1.0))
            report.check(f"simplex_uniform_ks_coord{i}", p > 0.01, p, 0.01)
    elif family == "sphere":
        v = vm.reals_to_sphere(x)
        _mean_symmetry_checks(report, v[:, :n].T, "sphere")
    elif family == "halfsphere":
        v = vm.reals_to_half_sphere(x)
        _mean_symmetry_checks(report, v[:, :n].T, "halfsphere")
    elif family == "ball":
        if n < 2:
            print("error: ball needs --dim >= 2", file=sys.stderr)
            return USAGE_ERROR
        u = vm.reals_to_ball(x)
        _mean_symmetry_checks(report, u.T, "ball")
        if n == 2:
            r2 = np.sum(u * u, axis=-1)
            _, p = so.ks_test(r2, lambda t: np.clip(t, 0.0, 1.0))
            report.check("ball_radial_ks", p > 0.01, p, 0.01)
    else:  # pragma: no cover - argparse choices prevent this
        return USAGE_ERROR
    return _emit(report, args)


_GRID_MAPS = {
    "simplex2": (vm.reals_to_simplex, 3),
    "sphere2": (vm.reals_to_sphere, 3),
    "halfsphere2": (vm.reals_to_half_sphere, 3),
    "ball2": (vm.reals_to_ball, 2),
}


def cmd_grid(args):
    map_fn, out_dim = _GRID_MAPS[args.map]
    report = RunReport(f"grid --map {args.map}", args.seed)
    steps = np.arange(-args.range, args.range + 0.5 * args.step, args.step)
    xs = np.array([(a, b) for a in steps for b in steps])
    ys = map_fn(xs)
    header = "x0,x1," + ",".join(f"y{i}" for i in range(out_dim))
    lines = [header]
    for row_x, row_y in zip(xs, ys):
        vals = [format(v, ".17g") for v in (*row_x, *row_y)]
        lines.append(",".join(vals))
    try:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return USAGE_ERROR
    if args.map == "ball2":
        metric = float(np.max(np.sum(ys * ys, axis=-1)))
        report.check("ball2_inside", metric < 1.0, metric, 1.0)
    elif args.map == "simplex2":
        metric = float(np.max(np.abs(np.sum(ys, axis=-1) - 1.0)))
        report.check("simplex2_sum", metric <= 1e-12, metric, 1e-12)
        report.check(
            "simplex2_positive",
            bool(np.all(ys > 0.0)),
            float(np.min(ys)),
            0.0,
        )
    else:
        metric = float(np.max(np.abs(np.linalg.norm(ys, axis=-1) - 1.0)))
        report.check(f"{args.map}_norm", metric <= 1e-12, metric, 1e-12)
        if args.map == "halfsphere2":
            report.check(
                "halfsphere2_last_positive",
                bool(np.all(ys[:, -1] > 0.0)),
                float(np.min(ys[:, -1])),
                0.0,
            )
    report.extra["out"] = args.out
    report.extra["rows"] = len(lines) - 1
    return _emit(report, args)


def _gumbel_spec():
    return pt.NamedTuple(mu=pt.Real(), beta=pt.RealPositive())


def _student_spec(p):
    return pt.NamedTuple(
        mu=pt.Real(shape=p), Sigma=pt.MatrixSymPosDef(dim=p), df=pt.RealPositive()
    )


STUDENT_MU0 = np.array([0.0, 1.0, 2.0])
STUDENT_SIGMA0 = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.5], [1.0, 1.5, 2.0]])


def _fit_gumbel(data):
    spec = _gumbel_spec()
    mu0, beta0 = inf.gumbel_moment_init(data)
    init = pt.params_to_reals1d(spec, spec._result_type()(mu0, beta0))
    report = inf.fit_mle(
        spec, lambda p, d: inf.gumbel_loglik(p.mu, p.beta, d), data, init=init
    )
    return report


def _fit_student(data):
    spec = _student_spec(data.shape[1])
    mu0, Sigma0, nu0 = inf.student_moment_init(data)
    init = pt.params_to_reals1d(spec, spec._result_type()(mu0, Sigma0, nu0))
    report = inf.fit_mle(
        spec, lambda p, d: inf.student_loglik(p.mu, p.Sigma, p.df, d), data, init=init
    )
    return report


def cmd_mle(args):
    report = RunReport(f"mle {args.model} --n {args.n}", args.seed)
    rng = so.Rng(args.seed)
    try:
        if args.model == "gumbel":
            data = so.sample_gumbel(rng, args.mu, args.beta, args.n)
            fit = _fit_gumbel(data)
            lo, hi = inf.delta_method_ci(lambda p: p.beta, fit)
            params = fit.params
            report.extra["theta_hat"] = [float(v) for v in fit.theta_hat]
            report.extra["mu_hat"] = float(params.mu)
            report.extra["beta_hat"] = float(params.beta)
            report.extra["beta_ci"] = [lo, hi]
            report.extra["loglik"] = fit.loglik
            report.check("fit_converged", fit.converged, float(fit.converged), 1)
            if (args.n, args.mu, args.beta) == (1000, 5.0, 2.0):
                width = hi - lo
                report.check(
                    "beta_ci_width", 0.15 <= width <= 0.23, width, [0.15, 0.23]
                )
        else:
            data = so.sample_multivariate_student(
                rng, STUDENT_MU0, STUDENT_SIGMA0, args.nu, args.n
            )
            fit = _fit_student(data)
            nu_lo, nu_hi = inf.delta_method_ci(lambda p: p.df, fit)
            det_lo, det_hi = inf.delta_method_ci(lambda p: inf.spd_det(p.Sigma), fit)
            params = fit.params
            report.extra["theta_hat"] = [float(v) for v in fit.theta_hat]
            report.extra["df_hat"] = float(params.df)
            report.extra["nu_ci"] = [nu_lo, nu_hi]
            report.extra["det_sigma_ci"] = [det_lo, det_hi]
            report.extra["loglik"] = fit.loglik
            report.check("fit_converged", fit.converged, float(fit.converged), 1)
            report.check("nu_ci_positive", 0.0 < nu_lo < nu_hi, nu_lo, 0.0)
            report.check(
                "det_ci_positive", 0.0 < det_lo < det_hi, det_lo, 0.0
            )
        if args.json:
            report.extra["fisher"] = [
                [float(v) for v in row] for row in fit.fisher
            ]
            report.extra["iterations"] = fit.iterations
            report.extra["converged"] = fit.converged
    except (ConvergenceError, ReparamError) as e:
        print(f"error: {e}", file=sys.stderr)
        return CHECK_FAILURE
    return _emit(report, args)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (echoed)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=1e-7, help="check tolerance")

    parser = argparse.ArgumentParser(
        prog="reparam",
        description="verification and demo front end for the parametrization library",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("roundtrip", parents=[common])
    p.add_argument("--spec", required=True, help="textual parametrization spec")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("distcheck", parents=[common])
    p.add_argument(
        "--family",
        required=True,
        choices=["simplex", "sphere", "halfsphere", "ball"],
    )
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--samples", type=int, default=10**5)
    p.set_defaults(func=cmd_distcheck)

    p = sub.add_parser("grid", parents=[common])
    p.add_argument("--map", required=True, choices=sorted(_GRID_MAPS))
    p.add_argument("--range", type=float, default=10.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("mle", parents=[common])
    p.add_argument("model", choices=["gumbel", "student"])
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--mu", type=float, default=5.0, help="Gumbel location")
    p.add_argument("--beta", type=float, default=2.0, help="Gumbel scale")
    p.add_argument("--nu", type=float, default=7.0, help="Student degrees of freedom")
    p.set_defaults(func=cmd_mle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
