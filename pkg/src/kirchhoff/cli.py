"""``solve`` command line front end.

Exit codes: 0 success, 2 shooting failure or usage error, 3 nonlinearity
rejected, 4 no Kirchhoff solution exists, 5 a verification gate failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .config import resolve
from .errors import IntegrationBlowup, ModelRejected, NoBracket, ShootingFailed
from .functional import (
    build_kirchhoff_solution, kirchhoff_pohozaev_residual, nonnegativity_sample, pde_residual,
)
from .nonlinearity import PowerNonlinearity
from .pipeline import BRANCHES, ground_state, solve_branches
from .scaling import (
    KirchhoffProblem, existence_report, reduced_action, solve_scaling, t_star,
    threshold_a_max,
)

SPEC_VERSION = "1.0"
EXIT_OK, EXIT_SHOOTING, EXIT_MODEL, EXIT_NO_SOLUTION, EXIT_GATE = 0, 2, 3, 4, 5
SWEEP_HEADER = ["N", "a", "b", "K", "regime", "t1", "t2", "a_max", "I", "pohozaev_res", "pde_res"]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def _tag(v) -> str:
    return f"{v:g}".replace("-", "m")


def _config(args):
    keys = ("tol", "n_grid", "r_max", "eps_eq", "pde_points", "seed", "trials")
    return resolve({k: getattr(args, k, None) for k in keys})


def _envelope(payload: dict, config) -> dict:
    out = dict(payload)
    out["spec_version"] = SPEC_VERSION
    out["version"] = __version__
    out["config"] = config.to_dict()
    return out


def _model(args) -> PowerNonlinearity:
    model = PowerNonlinearity(args.m, args.p)
    model.require_valid(args.N)
    return model


def cmd_ground_state(args) -> int:
    config = _config(args)
    model = _model(args)
    profile = ground_state(model, args.N, config, args.nodes)
    stem = f"profile_N{args.N}_m{_tag(args.m)}_p{_tag(args.p)}_nodes{args.nodes}"
    os.makedirs(args.out, exist_ok=True)
    profile.to_csv(os.path.join(args.out, stem + ".csv"))
    doc = dumps(_envelope(profile.sidecar(), config))
    _write(os.path.join(args.out, stem + ".json"), doc)
    sys.stdout.write(doc)
    return EXIT_OK


def cmd_kirchhoff(args) -> int:
    config = _config(args)
    model = _model(args)
    problem = KirchhoffProblem(args.N, args.a, args.b)
    profile = ground_state(model, args.N, config)
    existence = existence_report(problem, profile.K, config.eps_eq)
    if not existence.exists:
        sys.stdout.write(dumps(_envelope({"existence": existence.to_dict()}, config)))
        print(f"no solution: regime {existence.regime}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    roots, results = solve_branches(profile, problem, config, args.branch)
    os.makedirs(args.out, exist_ok=True)
    stem = f"kirchhoff_N{args.N}_m{_tag(args.m)}_p{_tag(args.p)}_a{_tag(args.a)}_b{_tag(args.b)}"
    summary = []
    for res in results:
        body = res.to_dict()
        body.update(problem.to_dict(), model=model.to_dict(), K=profile.K, xi=profile.xi,
                    regime=roots.regime)
        doc = dumps(_envelope(body, config))
        _write(os.path.join(args.out, f"{stem}_{res.branch}.json"), doc)
        if args.csv:
            u = build_kirchhoff_solution(profile, res.report.t, problem)
            u.to_csv(os.path.join(args.out, f"{stem}_{res.branch}.csv"))
        summary.append(body)
    sys.stdout.write(dumps(_envelope({"existence": existence.to_dict(), "branches": summary},
                                     config)))
    failed = [r.branch for r in results if not r.passed]
    if failed:
        print(f"verification gates failed for branch(es): {', '.join(failed)}", file=sys.stderr)
        return EXIT_GATE
    return EXIT_OK


def cmd_threshold(args) -> int:
    config = _config(args)
    model = _model(args)
    profile = ground_state(model, args.N, config)
    K, N, b = profile.K, args.N, args.b
    out = {"N": N, "b": b, "K": K, "model": model.to_dict()}
    if N == 3:
        print("always exists: solutions for all a, b > 0")
        out["verdict"] = "exists for all a,b"
    elif N == 4:
        bK = b * K
        verdict = "exists" if bK < 1.0 else "does not exist"
        print(f"bK = {bK!r} (threshold 1): {verdict} for every a > 0")
        out.update(bK=bK, threshold=1.0, verdict=verdict)
    else:
        a_max = threshold_a_max(N, b, K)
        ts = t_star(N, a_max, b * K)
        print(f"a_max = {a_max!r}, t_star = {ts!r}: exists iff a <= a_max")
        out.update(a_max=a_max, t_star=ts, verdict="exists iff a <= a_max")
    if args.a is not None:
        out["existence"] = existence_report(KirchhoffProblem(N, args.a, b), K,
                                            config.eps_eq).to_dict()
    sys.stdout.write(dumps(_envelope(out, config)))
    return EXIT_OK


def _axis(lo, hi, steps, scale):
    if steps < 1 or lo <= 0 or hi <= 0:
        raise ValueError("ranges must be positive with at least one step")
    if steps == 1:
        return [float(lo)]
    if scale == "log":
        return [float(x) for x in np.geomspace(lo, hi, steps)]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def sweep_row(profile, N, a, b, level, config):
    """One CSV row (as strings) for the point (a, b)."""
    row = {"N": str(N), "a": _fmt(a), "b": _fmt(b), "K": _fmt(profile.K)}
    try:
        problem = KirchhoffProblem(N, a, b)
        roots = solve_scaling(problem, profile.K, config.eps_eq)
        ts = list(roots.roots)
        row.update(regime=roots.regime, t1=_fmt(ts[0]) if ts else "",
                   t2=_fmt(ts[1]) if len(ts) > 1 else "", a_max=_fmt(roots.a_max))
        row.update(I="", pohozaev_res="", pde_res="")
        if ts and level != "none":
            u = build_kirchhoff_solution(profile, ts[0], problem)
            row["I"] = _fmt(reduced_action(profile.K, ts[0], problem))
            row["pohozaev_res"] = _fmt(kirchhoff_pohozaev_residual(u, profile.model, problem))
            if level == "full":
                row["pde_res"] = _fmt(pde_residual(u, profile.model, problem, config.pde_points))
    except Exception as exc:  # recorded per row
        row.update(regime="ERROR", t1="", t2="", a_max="", I="", pohozaev_res="",
                   pde_res="", error=str(exc))
    return row


def _sweep_task(job):
    return sweep_row(*job)


def cmd_sweep(args) -> int:
    config = _config(args)
    model = _model(args)
    a_vals = _axis(args.a_lo, args.a_hi, args.a_steps, args.a_scale)
    b_vals = _axis(args.b_lo, args.b_hi, args.b_steps, args.b_scale)
    profile = ground_state(model, args.N, config)
    jobs = [(profile, args.N, a, b, args.verify, config) for a in a_vals for b in b_vals]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_task, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        rows = [_sweep_task(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow([row[k] for k in SWEEP_HEADER])
        if "error" in row:
            print(f"row a={row['a']} b={row['b']}: {row['error']}", file=sys.stderr)
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
    else:
        _write(args.out, buf.getvalue())
    return EXIT_SHOOTING if rows and all(r["regime"] == "ERROR" for r in rows) else EXIT_OK


def cmd_verify(args) -> int:
    """Ground state, every scaling branch and (N >= 5) the sampled action sign."""
    config = _config(args)
    model = _model(args)
    N = args.N
    profile = ground_state(model, N, config)
    checks = {"ground_state_pohozaev": profile.pohozaev_residual < 1e-6}
    body = {"ground_state": profile.sidecar()}
    b = args.b if args.b is not None else (2.0 / profile.K if N >= 5 else 0.5 / profile.K)
    a = args.a
    if a is None:
        a = 0.9 * threshold_a_max(N, b, profile.K) if N >= 5 else 1.0
    problem = KirchhoffProblem(N, a, b)
    existence = existence_report(problem, profile.K, config.eps_eq)
    body["existence"] = existence.to_dict()
    if existence.exists:
        _, results = solve_branches(profile, problem, config, "all")
        for res in results:
            checks[f"branch_{res.branch}"] = res.passed
        body["branches"] = [r.to_dict() for r in results]
    if N >= 5:
        above = KirchhoffProblem(N, max(a, 1.1 * threshold_a_max(N, b, profile.K)), b)
        sample = nonnegativity_sample(above, model, config.trials, profile.K, config.seed)
        checks["nonnegative_above_threshold"] = sample.passed
        body["nonnegativity"] = sample.to_dict()
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
    body["checks"] = checks
    sys.stdout.write(dumps(_envelope(body, config)))
    return EXIT_OK if all(checks.values()) else EXIT_GATE


def _common(p, model=True):
    p.add_argument("--N", type=int, required=True, help="space dimension (>= 3)")
    if model:
        p.add_argument("--m", type=float, default=1.0, help="linear decay rate m > 0")
        p.add_argument("--p", type=float, default=3.0, help="power exponent 1 < p < 2*-1")
    p.add_argument("--tol", type=float, help="integrator tolerance")
    p.add_argument("--n-grid", dest="n_grid", type=int, help="quadrature intervals")
    p.add_argument("--r-max", dest="r_max", type=float, help="outer radius")
    p.add_argument("--eps-eq", dest="eps_eq", type=float, help="double-root band")
    p.add_argument("--pde-points", dest="pde_points", type=int, help="residual grid size")
    p.add_argument("--seed", type=int, help="seed for sampled checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground-state", help="radial bound state of -Δv = g(v)")
    _common(p)
    p.add_argument("--nodes", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_ground_state)

    p = sub.add_parser("kirchhoff", help="build and verify Kirchhoff solutions")
    _common(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--branch", choices=BRANCHES, default="all")
    p.add_argument("--csv", action="store_true", help="also export scaled profiles")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_kirchhoff)

    p = sub.add_parser("threshold", help="existence threshold report")
    _common(p)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--a", type=float)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep", help="regime table over an (a, b) grid")
    _common(p)
    for name in ("a", "b"):
        p.add_argument(f"--{name}-lo", dest=f"{name}_lo", type=float, required=True)
        p.add_argument(f"--{name}-hi", dest=f"{name}_hi", type=float, required=True)
        p.add_argument(f"--{name}-steps", dest=f"{name}_steps", type=int, default=10)
        p.add_argument(f"--{name}-scale", dest=f"{name}_scale", choices=("linear", "log"),
                       default="linear")
    p.add_argument("--verify", choices=("none", "pohozaev", "full"), default="none")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the verification checks for one model")
    _common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--trials", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelRejected as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (ShootingFailed, NoBracket, IntegrationBlowup) as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_SHOOTING
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHOOTING


if __name__ == "__main__":
    sys.exit(main())
