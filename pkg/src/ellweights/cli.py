"""Command-line verification harness.

Three modes:

* ``matrix``  -- build the restriction matrix by direct evaluation and by
  both recursions, report pairwise deviations;
* ``weights`` -- evaluate every weight function at a seeded random point;
* ``verify``  -- run identity suites and report per-check residuals.

Reports are JSON with a ``schema`` field; identical configurations
(including the seed) produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import EvaluationError, ResamplingError
from .mirror import (DualityInterface, interpolation_residuals,
                     mirror_residual)
from .permcomb import Permutation, all_permutations, compose
from .qtheta import ThetaContext, theta
from .restriction import A_diagonal, build_A_direct
from .rmatrix import (build_A_by_dual_recursion, build_A_by_R_recursion,
                      dual_residual, exchange_residual)
from .sampling import random_chern_point, random_parameter_point
from .weightfn import P, W

SUITE_NAMES = ("theta", "triangular", "diagonal", "rmatrel", "dualrel",
               "mirror", "interface", "pprop")
MODES = ("matrix", "weights", "verify")
DEFAULT_N_CAP = 5


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters; equal configs give byte-identical reports."""

    n: int = 3
    q: complex = 0.3
    trunc: int | None = None           # None means the |q|-based default
    tol: float = 1e-8
    seed: int = 20240801
    points: int = 1
    sigma: tuple[int, ...] | None = None
    mode: str = "verify"
    suites: tuple[str, ...] = SUITE_NAMES
    allow_large: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.n > DEFAULT_N_CAP and not self.allow_large:
            raise ValueError(
                f"n={self.n} exceeds the default cap {DEFAULT_N_CAP}; "
                "pass --allow-large to override")
        if not abs(complex(self.q)) < 1:
            raise ValueError("|q| must be < 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.points < 1:
            raise ValueError("points must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ValueError(f"unknown suite {s!r}")
        if self.sigma is not None:
            Permutation(self.sigma)  # validates

    def context(self) -> ThetaContext:
        return ThetaContext.create(q=self.q, trunc=self.trunc, tol=self.tol)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": [complex(self.q).real, complex(self.q).imag],
            "trunc": self.trunc,
            "tol": self.tol,
            "seed": self.seed,
            "points": self.points,
            "sigma": list(self.sigma) if self.sigma else None,
            "mode": self.mode,
            "suites": list(self.suites),
        }


def _rng_for(config: RunConfig, stream: str) -> np.random.Generator:
    return np.random.default_rng([config.seed, SUITE_NAMES.index(stream)
                                  if stream in SUITE_NAMES else 31 + len(stream)])


def _check(cid: str, residual: float, tol: float) -> dict:
    return {"id": cid, "residual": residual, "pass": bool(residual < tol)}


def _suite_report(checks: list[dict], extra: dict | None = None) -> dict:
    out = {
        "checks": checks,
        "max_residual": max((c["residual"] for c in checks), default=0.0),
        "pass": all(c["pass"] for c in checks),
    }
    if extra:
        out.update(extra)
    return out


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def suite_theta(config: RunConfig, ctx: ThetaContext) -> dict:
    """Oddness and quasi-periodicity over 1000 random log-arguments."""
    rng = _rng_for(config, "theta")
    checks = []
    worst_odd = 0.0
    worst_qp = 0.0
    for _ in range(1000):
        lx = complex(rng.uniform(-2, 2), rng.uniform(-2 * cmath.pi, 2 * cmath.pi))
        tv = theta(ctx, lx)
        odd = abs(theta(ctx, -lx) + tv) / (1.0 + abs(tv))
        shift = theta(ctx, ctx.log_q + lx)
        qp = abs(shift + cmath.exp(-ctx.log_q / 2 - lx) * tv) \
            / (1.0 + abs(shift) + abs(tv))
        worst_odd = max(worst_odd, odd)
        worst_qp = max(worst_qp, qp)
    checks.append(_check("oddness x1000", worst_odd, ctx.tol))
    checks.append(_check("quasi-periodicity x1000", worst_qp, ctx.tol))
    return _suite_report(checks)


def suite_pprop(config: RunConfig, ctx: ThetaContext) -> dict:
    """Inversion-reflection symmetry of the diagonal product."""
    rng = _rng_for(config, "pprop")
    n = config.n
    s0 = Permutation.longest(n)
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        args_inv_rev = tuple(-v for v in p.log_z[::-1])
        for I in all_permutations(n):
            K = compose(compose(s0, I), s0)   # word n+1-I_{n+1-j}
            lhs = P(K, args_inv_rev, p, ctx)
            rhs = P(I, p.log_z, p, ctx)
            res = abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-300)
            checks.append(_check(f"pprop I={''.join(map(str, I.word))} pt={pt}",
                                 res, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


def suite_triangular(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "triangular")
    n = config.n
    sigma = Permutation(config.sigma) if config.sigma else Permutation.identity(n)
    checks = []
    zero_counts = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        mat = build_A_direct(sigma, p, ctx)
        checks.append(_check(f"triangularity pt={pt}",
                             mat.triangularity_violation(ctx.tol), ctx.tol))
        zero_counts.append(len(mat.zero_pairs(ctx.tol)))
    return _suite_report(checks, {"observed_zero_counts": zero_counts,
                                  "points": [p.to_json() for p in pts]})


def suite_diagonal(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "diagonal")
    n = config.n
    ident = Permutation.identity(n)
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        mat = build_A_direct(ident, p, ctx)
        for I in all_permutations(n):
            closed = A_diagonal(I, p, ctx)
            got = mat.entry(I, I)
            res = abs(got - closed) / (abs(closed) + 1e-300)
            checks.append(_check(f"diagonal I={''.join(map(str, I.word))} pt={pt}",
                                 res, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


def _cached_entry(ctx: ThetaContext):
    ident_cache: dict = {}

    def entry(I: Permutation, J: Permutation, p) -> complex:
        mat = ident_cache.get(p)
        if mat is None:
            mat = build_A_direct(Permutation.identity(p.n), p, ctx)
            ident_cache[p] = mat
        return mat.entry(I, J)

    return entry


def suite_rmatrel(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "rmatrel")
    n = config.n
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        entry = _cached_entry(ctx)
        worst = 0.0
        count = 0
        for I in all_permutations(n):
            for J in all_permutations(n):
                for k in range(1, n):
                    worst = max(worst, exchange_residual(I, J, k, p, ctx, entry=entry))
                    count += 1
        checks.append(_check(f"exchange relation x{count} pt={pt}", worst, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


def suite_dualrel(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "dualrel")
    n = config.n
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        entry = _cached_entry(ctx)
        worst = 0.0
        count = 0
        for I in all_permutations(n):
            for J in all_permutations(n):
                for k in range(1, n):
                    worst = max(worst, dual_residual(I, J, k, p, ctx, entry=entry))
                    count += 1
        checks.append(_check(f"dual relation x{count} pt={pt}", worst, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


def suite_mirror(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "mirror")
    n = config.n
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        for I in all_permutations(n):
            for J in all_permutations(n):
                res = mirror_residual(I, J, p, ctx)
                cid = (f"mirror I={''.join(map(str, I.word))} "
                       f"J={''.join(map(str, J.word))} pt={pt}")
                checks.append(_check(cid, res, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


def suite_interface(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "interface")
    n = config.n
    checks = []
    pts = []
    for pt in range(config.points):
        p = random_parameter_point(n, rng, ctx)
        pts.append(p)
        iface = DualityInterface.create(p, ctx)
        t = random_chern_point(n, rng)
        tp = random_chern_point(n, rng)
        for I in all_permutations(n):
            r1, r2 = interpolation_residuals(iface, I, t, tp)
            iw = "".join(map(str, I.word))
            checks.append(_check(f"interface first I={iw} pt={pt}", r1, ctx.tol))
            checks.append(_check(f"interface second I={iw} pt={pt}", r2, ctx.tol))
    return _suite_report(checks, {"points": [p.to_json() for p in pts]})


SUITES = {
    "theta": suite_theta,
    "triangular": suite_triangular,
    "diagonal": suite_diagonal,
    "rmatrel": suite_rmatrel,
    "dualrel": suite_dualrel,
    "mirror": suite_mirror,
    "interface": suite_interface,
    "pprop": suite_pprop,
}


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def run_matrix_mode(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "matrix-mode")
    n = config.n
    sigma = Permutation(config.sigma) if config.sigma else Permutation.identity(n)
    p = random_parameter_point(n, rng, ctx)
    direct = build_A_direct(sigma, p, ctx)
    report: dict = {"direct": direct.to_json_dict()}
    deviations = {}
    if sigma.word == Permutation.identity(n).word:
        rrec = build_A_by_R_recursion(p, ctx)
        drec = build_A_by_dual_recursion(p, ctx)
        report["r_recursion"] = rrec.to_json_dict()
        report["dual_recursion"] = drec.to_json_dict()
        deviations = {
            "direct_vs_r_recursion": direct.max_deviation(rrec),
            "direct_vs_dual_recursion": direct.max_deviation(drec),
            "r_recursion_vs_dual_recursion": rrec.max_deviation(drec),
        }
    report["deviations"] = deviations
    report["observed_zero_count"] = len(direct.zero_pairs(ctx.tol))
    report["pass"] = all(d < ctx.tol for d in deviations.values())
    return report


def run_weights_mode(config: RunConfig, ctx: ThetaContext) -> dict:
    rng = _rng_for(config, "weights-mode")
    n = config.n
    p = random_parameter_point(n, rng, ctx)
    t = random_chern_point(n, rng)
    values = {}
    for I in all_permutations(n):
        v = W(I, t, p, ctx)
        values["".join(map(str, I.word))] = [v.real, v.imag]
    return {
        "point": p.to_json(),
        "chern": [[[v.real, v.imag] for v in lv] for lv in t.levels],
        "values": values,
        "pass": True,
    }


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one configured run; returns (exit_status, report)."""
    ctx = config.context()
    report: dict = {"schema": 1, "version": __version__,
                    "config": config.to_json(), "mode": config.mode}
    try:
        if config.mode == "matrix":
            body = run_matrix_mode(config, ctx)
            report["matrix"] = body
            report["pass"] = body["pass"]
        elif config.mode == "weights":
            body = run_weights_mode(config, ctx)
            report["weights"] = body
            report["pass"] = True
        else:
            suites = {name: SUITES[name](config, ctx) for name in config.suites}
            report["suites"] = suites
            report["pass"] = all(s["pass"] for s in suites.values())
    except EvaluationError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["pass"] = False
        return 1, report
    return (0 if report["pass"] else 1), report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_sigma(text: str) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text)
    return tuple(int(v) for v in parts)


def _parse_q(text: str) -> complex:
    return complex(text.replace(" ", ""))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellweights",
        description="Verify elliptic weight-function identities numerically.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, default=3, help="rank (default 3)")
        sp.add_argument("--q", type=_parse_q, default="0.3",
                        help="modular parameter, |q|<1 (default 0.3)")
        sp.add_argument("--trunc", default="auto",
                        help="product truncation depth or 'auto'")
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--seed", type=int, default=20240801)
        sp.add_argument("--points", type=int, default=1,
                        help="number of random parameter points")
        sp.add_argument("--allow-large", action="store_true",
                        help="lift the default cap n <= 5")
        sp.add_argument("--out", default=None, help="write the JSON report here")
        sp.add_argument("--csv", default=None,
                        help="write matrix moduli as CSV here (matrix mode)")

    sp_matrix = sub.add_parser("matrix", help="build restriction matrices")
    common(sp_matrix)
    sp_matrix.add_argument("--sigma", type=_parse_sigma, default=None,
                           help="chamber permutation word, e.g. 2,1,3")

    sp_weights = sub.add_parser("weights", help="evaluate weight functions")
    common(sp_weights)

    sp_verify = sub.add_parser("verify", help="run verification suites")
    common(sp_verify)
    sp_verify.add_argument("--suites", default=",".join(SUITE_NAMES),
                           help="comma-separated subset of: " + ", ".join(SUITE_NAMES))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    trunc = None if args.trunc in (None, "auto") else int(args.trunc)
    suites = tuple(s.strip() for s in getattr(args, "suites", ",".join(SUITE_NAMES)).split(",") if s.strip())
    return RunConfig(
        n=args.n, q=args.q, trunc=trunc, tol=args.tol, seed=args.seed,
        points=args.points, sigma=getattr(args, "sigma", None),
        mode=args.mode, suites=suites, allow_large=args.allow_large)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    status, report = run(config)
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.csv and config.mode == "matrix" and "matrix" in report:
        from .restriction import RestrictionMatrix
        mat = RestrictionMatrix.from_json_dict(report["matrix"]["direct"])
        with open(args.csv, "w") as fh:
            fh.write(mat.to_csv())
    return status


if __name__ == "__main__":
    sys.exit(main())
