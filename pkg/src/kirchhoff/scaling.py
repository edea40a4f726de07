"""Scaling relation between scalar-field profiles and Kirchhoff solutions.

A profile v of -Δv = g(v) with K = ∫|∇v|² yields the Kirchhoff solution
u = v(t ·) exactly when

    f(t) = a t^2 + b K t^(4-N) = 1,   t > 0.

N = 3: f is increasing, one root.  N = 4: f is a t^2 + bK, one root iff
bK < 1.  N >= 5: f is convex-like with a single minimum at t_star; zero,
one (double) or two roots depending on a against a_max.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DimensionError, HypothesisError

EPS_EQ = 1e-9
ROOT_RTOL = 1e-14

UNIQUE_N3 = "UNIQUE_N3"
UNIQUE_N4 = "UNIQUE_N4"
NONE_N4 = "NONE_N4"
TWO_ROOTS = "TWO_ROOTS"
DOUBLE_ROOT = "DOUBLE_ROOT"
NO_ROOT = "NO_ROOT"


@dataclass(frozen=True)
class KirchhoffProblem:
    N: int
    a: float
    b: float

    def __post_init__(self):
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N}")
        if not (self.a > 0 and self.b >= 0):
            raise ValueError("a must be positive and b nonnegative")

    def to_dict(self) -> dict:
        return {"N": self.N, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class ScalingRoots:
    regime: str
    roots: tuple[float, ...]
    t_star: float | None = None
    f_min: float | None = None
    a_max: float | None = None

    def to_dict(self, problem: KirchhoffProblem, K: float) -> dict:
        return {
            "N": problem.N, "a": problem.a, "b": problem.b, "K": K,
            "regime": self.regime, "roots": list(self.roots),
            "t_star": self.t_star, "f_min": self.f_min, "a_max": self.a_max,
        }


def scaling_function(t: float, a: float, bK: float, N: int) -> float:
    """f(t) = a t^2 + bK t^(4-N), evaluated through logarithms for large N."""
    if N == 4:
        return a * t * t + bK
    if bK == 0.0:
        return a * t * t
    second = math.exp(math.log(bK) + (4 - N) * math.log(t)) if t > 0 else math.inf
    return a * t * t + second


def _scaled_excess(s: float, c: float, N: int) -> float:
    # f(s t_star) - 1 with f = a t_star^2 (s^2 + 2/(N-4) s^(4-N)) and c = a t_star^2
    if s <= 0.0:
        return math.inf
    try:
        tail = math.exp((4 - N) * math.log(s)) * 2.0 / (N - 4)
    except OverflowError:
        return math.inf
    return c * (s * s + tail) - 1.0


def _bisect_root(fun, lo, hi, rtol=ROOT_RTOL):
    flo = fun(lo)
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def threshold_a_max(N: int, b: float, K: float) -> float:
    """Largest a for which a t^2 + bK t^(4-N) = 1 has a root (N >= 5)."""
    if N < 5:
        raise DimensionError(f"threshold defined for N >= 5 only, got N = {N}")
    q = N - 4.0
    return ((N - 4.0) / (N - 2.0)) ** ((N - 2.0) / q) * (2.0 / (q * b * K)) ** (2.0 / q)


def t_star(N: int, a: float, bK: float) -> float:
    """Minimiser of f for N >= 5."""
    return ((N - 4.0) * bK / (2.0 * a)) ** (1.0 / (N - 2.0))


def solve_scaling(problem: KirchhoffProblem, K: float, eps_eq: float = EPS_EQ) -> ScalingRoots:
    """All t > 0 with a t^2 + bK t^(4-N) = 1."""
    if not K > 0:
        raise ValueError("K must be positive")
    N, a, bK = problem.N, problem.a, problem.b * K
    if N == 3:
        # a t^2 + bK t - 1 = 0, cancellation-free form of the positive root
        t = 2.0 / (bK + math.sqrt(bK * bK + 4.0 * a))
        return ScalingRoots(UNIQUE_N3, (t,))
    if N == 4:
        if bK < 1.0:
            return ScalingRoots(UNIQUE_N4, (math.sqrt((1.0 - bK) / a),))
        return ScalingRoots(NONE_N4, ())
    if bK == 0.0:
        raise ValueError("b must be positive for N >= 5")

    ts = t_star(N, a, bK)
    c = a * ts * ts
    f_min = c * (N - 2.0) / (N - 4.0)
    a_max = threshold_a_max(N, problem.b, K)
    ratio = a / a_max
    if ratio > 1.0 + eps_eq:
        return ScalingRoots(NO_ROOT, (), ts, f_min, a_max)
    if abs(ratio - 1.0) <= eps_eq:
        return ScalingRoots(DOUBLE_ROOT, (ts,), ts, f_min, a_max)

    def excess(s):
        return _scaled_excess(s, c, N)

    lo = 0.5
    while excess(lo) <= 0.0:
        lo *= 0.5
    hi = 2.0
    while excess(hi) <= 0.0:
        hi *= 2.0
    s1 = _bisect_root(excess, lo, 1.0)
    s2 = _bisect_root(excess, 1.0, hi)
    return ScalingRoots(TWO_ROOTS, (s1 * ts, s2 * ts), ts, f_min, a_max)


@dataclass(frozen=True)
class ExistenceReport:
    N: int
    a: float
    b: float
    K: float
    exists: bool
    regime: str
    roots: tuple[float, ...]
    multiplicity: str
    a_max: float | None = None
    margin: float | None = None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "N": self.N, "a": self.a, "b": self.b, "K": self.K, "exists": self.exists,
            "regime": self.regime, "roots": list(self.roots),
            "multiplicity": self.multiplicity, "a_max": self.a_max,
            "margin": self.margin, "notes": list(self.notes),
        }


def existence_report(problem: KirchhoffProblem, K_ground: float,
                     eps_eq: float = EPS_EQ) -> ExistenceReport:
    """Existence verdict from the ground-state seminorm."""
    sr = solve_scaling(problem, K_ground, eps_eq)
    N, a, b = problem.N, problem.a, problem.b
    notes = []
    a_max = margin = None
    if N == 3:
        exists = True
        multiplicity = "unique scaling of the ground state"
        notes.append("exists for all a, b > 0")
    elif N == 4:
        exists = b * K_ground < 1.0
        multiplicity = "unique scaling of the ground state" if exists else "none"
        notes.append(f"bK = {b * K_ground:.17g} against threshold 1")
    else:
        a_max = sr.a_max
        margin = a_max - a
        exists = sr.regime in (TWO_ROOTS, DOUBLE_ROOT)
        multiplicity = {
            TWO_ROOTS: "two distinct scalings t1 < t2 of the ground state",
            DOUBLE_ROOT: "one scaling t = t_star (equality case)",
            NO_ROOT: "none",
        }[sr.regime]
    return ExistenceReport(N, a, b, K_ground, exists, sr.regime, sr.roots,
                           multiplicity, a_max, margin, tuple(notes))


def action_from_scaling(profile_K: float, t: float, problem: KirchhoffProblem) -> float:
    """I(v(t ·)) = (a/4) K / t^(N-2) + (4-N)/(4N) K / t^N.

    The b-dependent reduced form (a/N) K_u + b (4-N)/(4N) K_u^2 with
    K_u = t^(2-N) K is evaluated alongside and must agree.
    """
    I_func, I_red = _action_pair(profile_K, t, problem)
    if abs(I_func - I_red) > 1e-12 * max(abs(I_func), abs(I_red), 1e-300):
        raise AssertionError(f"action forms disagree: {I_func!r} vs {I_red!r}")
    return I_func


def _action_pair(K: float, t: float, problem: KirchhoffProblem):
    N, a, b = problem.N, problem.a, problem.b
    I_func = 0.25 * a * K / t ** (N - 2) + (4.0 - N) / (4.0 * N) * K / t ** N
    K_u = t ** (2 - N) * K
    I_red = a / N * K_u + b * (4.0 - N) / (4.0 * N) * K_u * K_u
    return I_func, I_red


def reduced_action(K: float, t: float, problem: KirchhoffProblem) -> float:
    """(a/N) K_u + b (4-N)/(4N) K_u^2 with K_u = t^(2-N) K."""
    return _action_pair(K, t, problem)[1]


@dataclass(frozen=True)
class ComparisonReport:
    t1: float
    t2: float
    I1: float
    I2: float

    @property
    def t_ordered(self) -> bool:
        return self.t2 < self.t1

    @property
    def action_ordered(self) -> bool:
        return self.I1 < self.I2

    def to_dict(self) -> dict:
        return {"t1": self.t1, "t2": self.t2, "I1": self.I1, "I2": self.I2,
                "t2_lt_t1": self.t_ordered, "I1_lt_I2": self.action_ordered}


def compare_solutions(problem: KirchhoffProblem, K1: float, K2: float) -> ComparisonReport:
    """Kirchhoff scalings of two profiles with K1 < K2 (N = 3 or 4)."""
    if problem.N not in (3, 4):
        raise HypothesisError(f"comparison holds for N = 3, 4 only, got N = {problem.N}")
    if not K1 < K2:
        raise HypothesisError(f"requires K1 < K2, got K1 = {K1}, K2 = {K2}")
    if problem.N == 4 and problem.b * K2 >= 1.0:
        raise HypothesisError(f"requires b K2 < 1 for N = 4, got b K2 = {problem.b * K2}")
    t1 = solve_scaling(problem, K1).roots[0]
    t2 = solve_scaling(problem, K2).roots[0]
    return ComparisonReport(t1, t2, action_from_scaling(K1, t1, problem),
                            action_from_scaling(K2, t2, problem))
