"""Radial solutions of -Δv = g(v) in R^N by shooting on v(0).

The radial ODE v'' + (N-1)/r v' + g(v) = 0 is integrated outward from a
Taylor start near the origin.  Bisection on xi = v(0) between an undershoot
(trajectory turns back before its (k+1)-th zero) and an overshoot (k+1
zeros) converges to the k-node bound state.  Once the bracket has collapsed
to machine resolution, the two bracketing trajectories agree until the
exponentially growing mode takes over; the profile is cut shortly before
that point and continued with the decaying solution of the linearized
equation, r^(-nu) K_nu(sqrt(m) r) with nu = (N-2)/2.
"""
from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import kve

from . import kernels
from .errors import IntegrationBlowup, NoBracket, ShootingFailed
from .nonlinearity import PowerNonlinearity
from .quadrature import gradient_and_potential

R_SERIES = 1e-3
DECAY_EPS = 1e-8
N_GRID = 4096
# relative disagreement of the two bracketing shots at which the profile is cut
CUT_EPS = 1e-8
MAX_DOUBLINGS = 60

_KINDS = {
    kernels.INCONCLUSIVE: "INCONCLUSIVE",
    kernels.CROSSES: "CROSSES_ZERO",
    kernels.UNDERSHOOT: "UNDERSHOOT",
    kernels.DECAYS: "DECAYS",
}


def default_r_max(model: PowerNonlinearity) -> float:
    return 50.0 / math.sqrt(model.m)


@dataclass(frozen=True)
class Classification:
    kind: str
    r: float  # radius where integration stopped
    crossings: int
    r_cross: float = math.nan  # last zero crossing, nan if none


@dataclass(frozen=True, eq=False)
class Trajectory:
    r: np.ndarray
    v: np.ndarray
    dv: np.ndarray

    def energy(self, model) -> np.ndarray:
        """E(r) = v'^2/2 + G(v); nonincreasing along exact solutions."""
        return 0.5 * self.dv ** 2 + model.G(self.v)


def _run(model, N, xi, r_end, tol, max_crossings, grid=None, record=False):
    if grid is None:
        grid = out_v = out_dv = np.empty(0)
    else:
        out_v = np.full(grid.shape, np.nan)
        out_dv = np.full(grid.shape, np.nan)
    res = kernels.integrate_radial(
        int(N), float(model.m), float(model.p), float(xi), float(r_end),
        float(tol), float(tol * xi * 1e-6), R_SERIES, int(max_crossings),
        DECAY_EPS, 0.5 / math.sqrt(model.m), grid, out_v, out_dv, bool(record),
    )
    status, r = res[0], res[1]
    if status == kernels.BLOWUP:
        raise IntegrationBlowup(r)
    return res, out_v, out_dv


def integrate_profile(model: PowerNonlinearity, N: int, xi: float,
                      r_max: float | None = None, tol: float = 1e-10,
                      max_crossings: int = 0):
    """Integrate one shot from v(0) = xi and classify it.

    Integration stops at the first of: more than ``max_crossings`` zeros
    (CROSSES_ZERO), a turn back away from zero (UNDERSHOOT), decay of both
    |v| and |v'| below 1e-8 xi (DECAYS), or r_max (INCONCLUSIVE).
    """
    if xi <= 0 or (r_max is not None and r_max <= 0):
        raise ValueError("xi and r_max must be positive")
    r_max = default_r_max(model) if r_max is None else r_max
    res, _, _ = _run(model, N, xi, r_max, tol, max_crossings, record=True)
    status, r, _, _, crossings, r_cross, _, traj = res
    trajectory = Trajectory(traj[:, 0].copy(), traj[:, 1].copy(), traj[:, 2].copy())
    return trajectory, Classification(_KINDS[status], r, crossings, r_cross)


def count_sign_changes(values) -> int:
    v = np.asarray(values)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _linear_tail(r, r0, m, N):
    """Decaying radial solution of Δw = m w, normalised to 1 at r0, and its slope."""
    nu = (N - 2) / 2.0
    sm = math.sqrt(m)
    x, x0 = sm * r, sm * r0
    scale = (r / r0) ** (-nu) * np.exp(-(x - x0)) / kve(nu, x0)
    return scale * kve(nu, x), -sm * scale * kve(nu + 1.0, x)


def sample_bracket(model, N, bracket, grid, tol, nodes):
    """Profile values on ``grid`` from a collapsed shooting bracket.

    Returns ``(values, derivatives, r_cut)``.
    """
    lo, hi = bracket
    r_end = float(grid[-1])
    (rl, vl, dl) = _run(model, N, lo, r_end, tol, nodes, grid)
    (rh, vh, dh) = _run(model, N, hi, r_end, tol, nodes, grid)
    n = min(rl[6], rh[6])
    if n < 2:
        raise ShootingFailed("bracketing shots stopped before the first grid point")
    v = 0.5 * (vl + vh)
    dv = 0.5 * (dl + dh)
    amp = np.sqrt(v[:n] ** 2 + dv[:n] ** 2 / model.m)
    spread = np.maximum(np.abs(vl[:n] - vh[:n]), np.abs(dl[:n] - dh[:n]) / math.sqrt(model.m))
    bad = np.flatnonzero(spread > CUT_EPS * amp)
    ic = int(bad[0]) - 1 if bad.size else n - 1
    if ic < 1:
        raise ShootingFailed("bracketing shots disagree from the origin on")
    if ic < len(grid) - 1:
        T, dT = _linear_tail(grid[ic:], grid[ic], model.m, N)
        v[ic:] = v[ic] * T
        dv[ic:] = v[ic] * dT
    return v, dv, float(grid[ic])


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Sampled radial solution of -Δv = g(v).

    ``K`` is the gradient seminorm ∫|∇v|² over R^N and ``GInt`` is ∫G(v);
    both include the closed-form exponential remainder beyond the last grid
    point unless ``tail`` is False.
    """

    N: int
    model: PowerNonlinearity
    grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    xi: float
    nodes: int
    K: float
    GInt: float
    bracket: tuple[float, float] = (math.nan, math.nan)
    r_cut: float = math.nan
    tol: float = 1e-12
    tail: bool = True
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def r_max(self) -> float:
        return float(self.grid[-1])

    @property
    def pohozaev_residual(self) -> float:
        return check_pohozaev_scalar(self)

    @property
    def r_decay(self) -> float:
        """Smallest grid radius beyond which |v| and |v'| stay below 1e-8 xi."""
        big = np.flatnonzero(np.maximum(np.abs(self.values), np.abs(self.derivatives))
                             >= DECAY_EPS * self.xi)
        i = min(int(big[-1]) + 1, len(self.grid) - 1) if big.size else 0
        return float(self.grid[i])

    def sample(self, grid):
        """Re-integrate the profile onto another grid starting at r = 0."""
        grid = np.ascontiguousarray(grid, dtype=float)
        v, dv, _ = sample_bracket(self.model, self.N, self.bracket, grid, self.tol, self.nodes)
        return v, dv

    def refined(self, n_intervals: int, r_max: float | None = None) -> "RadialProfile":
        r_max = self.r_max if r_max is None else r_max
        grid = np.linspace(0.0, r_max, n_intervals + 1)
        v, dv, r_cut = sample_bracket(self.model, self.N, self.bracket, grid, self.tol, self.nodes)
        out = self.with_values(v, dv, grid=grid)
        return dataclasses.replace(out, r_cut=r_cut)

    def with_values(self, values, derivatives, grid=None) -> "RadialProfile":
        """Copy with replaced samples and recomputed integrals."""
        grid = self.grid if grid is None else np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        derivatives = np.asarray(derivatives, dtype=float)
        K, GInt = gradient_and_potential(grid, values, derivatives, self.N, self.model, self.tail)
        return dataclasses.replace(self, grid=grid, values=values, derivatives=derivatives,
                                   K=K, GInt=GInt)

    def truncated(self, r_upper: float) -> "RadialProfile":
        """Profile restricted to [0, r_upper] with no tail correction."""
        n = int(np.searchsorted(self.grid, r_upper, side="right"))
        if n % 2 == 0:
            n -= 1  # odd point count for Simpson
        out = dataclasses.replace(self, tail=False)
        return out.with_values(self.values[:n], self.derivatives[:n], grid=self.grid[:n])

    def sidecar(self) -> dict:
        return {
            "N": self.N, "m": self.model.m, "p": self.model.p, "xi": self.xi,
            "nodes": self.nodes, "K": self.K, "GInt": self.GInt,
            "pohozaev_residual": self.pohozaev_residual,
        }

    def to_csv(self, path) -> None:
        write_profile_csv(path, self.grid, self.values, self.derivatives)


def write_profile_csv(path, r, v, dv) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["r", "v", "dv"])
        for row in zip(r, v, dv):
            writer.writerow([repr(float(x) + 0.0) for x in row])


def read_profile_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1], data[:, 2]


def _bisect(model, N, target_nodes, tol, r_max, seed_lo, seed_hi):
    lo, hi = seed_lo, seed_hi
    inconclusive = 0
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        res, _, _ = _run(model, N, mid, r_max, tol, target_nodes)
        if res[0] == kernels.CROSSES:
            hi = mid
        else:
            inconclusive += res[0] == kernels.INCONCLUSIVE
            lo = mid
    return lo, hi, inconclusive


def shoot_state(model: PowerNonlinearity, N: int, target_nodes: int = 0,
                tol: float = 1e-12, r_max: float | None = None,
                n_grid: int = N_GRID) -> RadialProfile:
    """Bound state of -Δv = g(v) with ``target_nodes`` sign changes.

    ``tol`` is the integrator's local error tolerance.  Bisection always runs
    until the bracket cannot be split in double precision, which is well
    inside ``tol * xi``.
    """
    model.require_valid(N)
    if target_nodes < 0:
        raise ValueError("target_nodes must be nonnegative")
    if n_grid % 2:
        raise ValueError("n_grid must be even (Simpson)")
    r_max = default_r_max(model) if r_max is None else float(r_max)

    lo = model.zeta0
    res, _, _ = _run(model, N, lo, r_max, tol, target_nodes)
    if res[0] == kernels.CROSSES:
        raise NoBracket(f"xi = zeta0 = {lo:g} does not undershoot")
    hi = 2.0 * lo
    for _ in range(MAX_DOUBLINGS):
        res, _, _ = _run(model, N, hi, r_max, tol, target_nodes)
        if res[0] == kernels.CROSSES:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NoBracket(f"no overshoot below xi = {hi:g}")

    lo, hi, inconclusive = _bisect(model, N, target_nodes, tol, r_max, lo, hi)
    diagnostics = []
    if inconclusive:
        diagnostics.append(f"{inconclusive} shots inconclusive at r_max, treated as undershoot")

    grid = np.linspace(0.0, r_max, n_grid + 1)
    v, dv, r_cut = sample_bracket(model, N, (lo, hi), grid, tol, target_nodes)
    if abs(v[np.searchsorted(grid, r_cut)]) ** (model.p - 1.0) > 1e-2 * model.m:
        diagnostics.append(f"tail matched at r = {r_cut:.4g} where the nonlinearity is not small")
    nodes = count_sign_changes(v)
    K, GInt = gradient_and_potential(grid, v, dv, N, model)
    profile = RadialProfile(
        N=N, model=model, grid=grid, values=v, derivatives=dv, xi=0.5 * (lo + hi),
        nodes=nodes, K=K, GInt=GInt, bracket=(lo, hi), r_cut=r_cut, tol=tol,
        diagnostics=tuple(diagnostics),
    )
    if nodes != target_nodes:
        raise ShootingFailed(f"profile has {nodes} sign changes, expected {target_nodes}")
    return profile


def gradient_norm_sq(profile: RadialProfile) -> float:
    """∫|∇v|² over R^N, quadrature plus exponential remainder."""
    return profile.K


def check_pohozaev_scalar(profile: RadialProfile) -> float:
    """Relative defect of (N-2)/2 ∫|∇v|² = N ∫G(v)."""
    N = profile.N
    lhs = 0.5 * (N - 2) * profile.K
    return abs(lhs - N * profile.GInt) / lhs
