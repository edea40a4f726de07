"""End-to-end construction: ground state -> scaling roots -> verified solutions."""
from __future__ import annotations

from dataclasses import dataclass

from .config import Config
from .functional import (
    ActionReport, action_report, build_kirchhoff_solution, kirchhoff_pohozaev_residual,
    pde_residual, recover_scalar_profile,
)
from .nonlinearity import PowerNonlinearity
from .scaling import KirchhoffProblem, ScalingRoots, solve_scaling
from .shooting import RadialProfile, shoot_state

BRANCHES = ("lower", "upper", "all")


def ground_state(model: PowerNonlinearity, N: int, config: Config, nodes: int = 0) -> RadialProfile:
    return shoot_state(model, N, nodes, tol=config.tol, r_max=config.r_max, n_grid=config.n_grid)


def select_roots(roots: ScalingRoots, branch: str) -> list[tuple[str, float]]:
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    ts = list(roots.roots)
    if not ts:
        return []
    if len(ts) == 1:
        return [("unique", ts[0])]
    labelled = [("lower", ts[0]), ("upper", ts[1])]
    return labelled if branch == "all" else [x for x in labelled if x[0] == branch]


@dataclass(frozen=True)
class BranchResult:
    branch: str
    report: ActionReport
    roundtrip_pohozaev: float
    roundtrip_pde: float
    gates: dict

    @property
    def passed(self) -> bool:
        return all(self.gates.values())

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out.update(branch=self.branch, roundtrip_pohozaev=self.roundtrip_pohozaev,
                   roundtrip_pde=self.roundtrip_pde, gates=dict(self.gates), passed=self.passed)
        return out


def verify_branch(profile: RadialProfile, t: float, problem: KirchhoffProblem,
                  config: Config, branch: str = "unique") -> BranchResult:
    model = profile.model
    u = build_kirchhoff_solution(profile, t, problem)
    report = action_report(u, model, problem, config.pde_points)
    w = recover_scalar_profile(u, problem)
    scalar = KirchhoffProblem(problem.N, 1.0, 0.0)
    rt_poh = kirchhoff_pohozaev_residual(w, model, scalar)
    rt_pde = pde_residual(w, model, scalar, config.pde_points)
    gates = report.gates(config.pohozaev_tol, config.pde_tol, config.action_tol)
    gates["roundtrip"] = rt_poh < config.pde_tol and rt_pde < config.pde_tol
    return BranchResult(branch, report, rt_poh, rt_pde, gates)


def solve_branches(profile: RadialProfile, problem: KirchhoffProblem, config: Config,
                   branch: str = "all"):
    roots = solve_scaling(problem, profile.K, config.eps_eq)
    results = [verify_branch(profile, t, problem, config, label)
               for label, t in select_roots(roots, branch)]
    return roots, results
