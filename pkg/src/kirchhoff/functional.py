"""Kirchhoff solutions u = v(t ·) and their verification.

Given a profile v of -Δv = g(v) and a root t of the scaling relation, u(r) =
v(t r) solves -(a + b ∫|∇u|²) Δu = g(u).  This module builds u, evaluates
the action

    I(u) = (1/2)(a + (b/2) ∫|∇u|²) ∫|∇u|² - ∫G(u)

by quadrature and by the two closed forms available on solutions, and
checks the Pohozaev identity and the finite-difference PDE residual.
Rescaling u by h = sqrt(a + b ∫|∇u|²) recovers a scalar-field solution.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import gamma

from .errors import GridError, HypothesisError, NotARoot
from .quadrature import gradient_and_potential, sphere_area
from .scaling import KirchhoffProblem, _action_pair, scaling_function, threshold_a_max
from .shooting import RadialProfile

ROOT_TOL = 1e-8
SCALING_TOL = 1e-8
PDE_POINTS = 4096
MIN_PDE_POINTS = 64
EXCLUDED_CELLS = 3


@dataclass(frozen=True, eq=False)
class ScaledProfile:
    """u(r) = v(t r) sampled on grid / t."""

    base: RadialProfile
    t: float
    grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    K_u: float  # quadrature
    K_u_identity: float  # t^(2-N) K
    GInt_u: float  # quadrature
    GInt_identity: float  # t^(-N) GInt

    @property
    def N(self) -> int:
        return self.base.N

    @property
    def scaling_mismatch(self) -> float:
        return abs(self.K_u - self.K_u_identity) / self.K_u_identity

    @property
    def flagged(self) -> bool:
        return self.scaling_mismatch > SCALING_TOL

    def sample(self, grid):
        """u and u' on an arbitrary grid, re-integrated from the base shot."""
        v, dv = self.base.sample(self.t * np.asarray(grid, dtype=float))
        return v, self.t * dv

    def to_csv(self, path) -> None:
        from .shooting import write_profile_csv
        write_profile_csv(path, self.grid, self.values, self.derivatives)


def scale_profile(profile: RadialProfile, t: float) -> ScaledProfile:
    """u = v(t ·) without checking the scaling relation."""
    N = profile.N
    grid = profile.grid / t
    values = profile.values
    derivatives = t * profile.derivatives
    K_u, GInt_u = gradient_and_potential(grid, values, derivatives, N, profile.model,
                                         profile.tail, rate=t * math.sqrt(profile.model.m))
    return ScaledProfile(
        base=profile, t=t, grid=grid, values=values, derivatives=derivatives,
        K_u=K_u, K_u_identity=t ** (2 - N) * profile.K,
        GInt_u=GInt_u, GInt_identity=t ** (-N) * profile.GInt,
    )


def build_kirchhoff_solution(profile: RadialProfile, t: float,
                             problem: KirchhoffProblem) -> ScaledProfile:
    """Kirchhoff solution from a scaling root ``t`` of (problem, profile.K)."""
    if problem.N != profile.N:
        raise ValueError("problem and profile dimensions differ")
    defect = scaling_function(t, problem.a, problem.b * profile.K, problem.N) - 1.0
    if not abs(defect) <= ROOT_TOL:
        raise NotARoot(f"f(t) - 1 = {defect:.3e} at t = {t!r}")
    return scale_profile(profile, t)


def action_definition(u: ScaledProfile, model, problem: KirchhoffProblem,
                      route: str = "quadrature") -> float:
    """Action of u from its definition; ∫G(u) by quadrature or by t^(-N) GInt."""
    GInt = {"quadrature": u.GInt_u, "identity": u.GInt_identity}[route]
    return 0.5 * (problem.a + 0.5 * problem.b * u.K_u) * u.K_u - GInt


def kirchhoff_pohozaev_residual(u: ScaledProfile, model, problem: KirchhoffProblem) -> float:
    N = problem.N
    c = (N - 2.0) / (2.0 * N)
    first = problem.a * c * u.K_u
    return abs(first + problem.b * c * u.K_u ** 2 - u.GInt_u) / first


def fd_residual(grid, values, N: int, model, coefficient: float) -> float:
    """sup |coefficient Δu + g(u)| / sup |g(u)| on a uniform radial grid.

    Central second-order differences; the first ``EXCLUDED_CELLS`` cells next
    to the origin and the last point are left out.
    """
    grid = np.asarray(grid, dtype=float)
    u = np.asarray(values, dtype=float)
    if grid.size < MIN_PDE_POINTS:
        raise GridError(f"grid has {grid.size} points, need at least {MIN_PDE_POINTS}")
    h = grid[1] - grid[0]
    if not np.allclose(np.diff(grid), h, rtol=1e-9, atol=0.0):
        raise GridError("grid is not uniform")
    i = np.arange(EXCLUDED_CELLS + 1, grid.size - 1)
    upp = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h)
    up = (u[i + 1] - u[i - 1]) / (2.0 * h)
    lap = upp + (N - 1) / grid[i] * up
    g = model.g(u)
    return float(np.max(np.abs(-coefficient * lap - g[i])) / np.max(np.abs(g)))


def residual_grid(u: ScaledProfile, n_points: int = PDE_POINTS) -> np.ndarray:
    """Uniform grid over the support of u, up to where |u| < 1e-8 u(0)."""
    if n_points < MIN_PDE_POINTS:
        raise GridError(f"grid has {n_points} points, need at least {MIN_PDE_POINTS}")
    return np.linspace(0.0, u.base.r_decay / u.t, n_points)


def pde_residual(u: ScaledProfile, model, problem: KirchhoffProblem,
                 n_points: int = PDE_POINTS) -> float:
    """Normalised sup residual of -(a + b K_u) Δu = g(u)."""
    grid = residual_grid(u, n_points)
    values, _ = u.sample(grid)
    return fd_residual(grid, values, problem.N, model, problem.a + problem.b * u.K_u)


def recover_scalar_profile(u: ScaledProfile, problem: KirchhoffProblem) -> ScaledProfile:
    """w = u(h ·) with h = sqrt(a + b ∫|∇u|²); solves -Δw = g(w)."""
    h = math.sqrt(problem.a + problem.b * u.K_u)
    return scale_profile(u.base, u.t * h)


@dataclass(frozen=True)
class ActionReport:
    I_definition: float
    I_reduced: float
    I_func: float
    pohozaev_residual: float
    pde_residual: float
    t: float
    K_u: float
    I_definition_identity: float
    scaling_mismatch: float

    def to_dict(self) -> dict:
        return asdict(self)

    def gates(self, pohozaev_tol=1e-5, pde_tol=1e-4, action_tol=1e-5) -> dict:
        return {
            "pohozaev": self.pohozaev_residual < pohozaev_tol,
            "pde": self.pde_residual < pde_tol,
            "action": abs(self.I_definition - self.I_func) / max(1.0, abs(self.I_func)) < action_tol,
            "scaling": self.scaling_mismatch < SCALING_TOL,
        }


def action_report(u: ScaledProfile, model, problem: KirchhoffProblem,
                  n_points: int = PDE_POINTS) -> ActionReport:
    I_func, I_red = _action_pair(u.base.K, u.t, problem)
    return ActionReport(
        I_definition=action_definition(u, model, problem),
        I_reduced=I_red,
        I_func=I_func,
        pohozaev_residual=kirchhoff_pohozaev_residual(u, model, problem),
        pde_residual=pde_residual(u, model, problem, n_points),
        t=u.t,
        K_u=u.K_u,
        I_definition_identity=action_definition(u, model, problem, route="identity"),
        scaling_mismatch=u.scaling_mismatch,
    )


def gaussian_action(alpha, sigma, model, problem: KirchhoffProblem):
    """Action of alpha exp(-(r/sigma)^2), in closed form (vectorised)."""
    N, p, m = problem.N, model.p, model.m
    alpha = np.asarray(alpha, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    om = sphere_area(N)

    def moment(k, c):
        # ∫_0^∞ r^k exp(-c r^2) dr
        return gamma((k + 1) / 2.0) / (2.0 * c ** ((k + 1) / 2.0))

    K = om * 4.0 * alpha ** 2 / sigma ** 4 * moment(N + 1, 2.0 / sigma ** 2)
    G = om * (-0.5 * m * alpha ** 2 * moment(N - 1, 2.0 / sigma ** 2)
              + np.abs(alpha) ** (p + 1) / (p + 1) * moment(N - 1, (p + 1) / sigma ** 2))
    return 0.5 * (problem.a + 0.5 * problem.b * K) * K - G


@dataclass(frozen=True)
class NonnegativityReport:
    trials: int
    seed: int
    min_action: float
    argmin_alpha: float
    argmin_sigma: float
    negative_count: int
    a: float
    a_max: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def nonnegativity_sample(problem: KirchhoffProblem, model, trial_count: int,
                         K_ground: float, seed: int = 0, enforce: bool = True,
                         floor: float = -1e-10) -> NonnegativityReport:
    """Minimum of I over seeded Gaussian trial functions.

    Amplitudes are log-uniform in [0.01, 100] zeta0 and widths log-uniform in
    [0.1, 10].  ``enforce`` requires a > a_max (the regime where no solution
    exists); switch it off for negative controls.
    """
    a_max = threshold_a_max(problem.N, problem.b, K_ground)
    if enforce and not problem.a > a_max:
        raise HypothesisError(f"a = {problem.a} does not exceed a_max = {a_max}")
    rng = np.random.default_rng(seed)
    alpha = model.zeta0 * 10.0 ** rng.uniform(-2.0, 2.0, trial_count)
    sigma = 10.0 ** rng.uniform(-1.0, 1.0, trial_count)
    I = gaussian_action(alpha, sigma, model, problem)
    k = int(np.argmin(I))
    min_I = float(I[k])
    return NonnegativityReport(
        trials=trial_count, seed=seed, min_action=min_I, argmin_alpha=float(alpha[k]),
        argmin_sigma=float(sigma[k]), negative_count=int(np.count_nonzero(I < floor)),
        a=problem.a, a_max=a_max, passed=min_I >= floor,
    )
