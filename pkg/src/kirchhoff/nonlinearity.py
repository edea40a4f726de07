"""Power-type nonlinearities g(s) = -m s + |s|^(p-1) s.

Other families can be added by implementing the same three members:
``g``, ``G`` and ``validate(N)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ModelRejected


def critical_exponent(N: int) -> float:
    """Sobolev exponent 2* = 2N/(N-2)."""
    return 2.0 * N / (N - 2)


@dataclass(frozen=True)
class ValidationReport:
    N: int
    m: float
    p: float
    zeta0: float
    p_critical: float  # 2* - 1
    g1: bool
    g2: bool
    g3: bool
    g4: bool
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def accepted(self) -> bool:
        return self.g1 and self.g2 and self.g3 and self.g4

    def to_dict(self) -> dict:
        return {
            "N": self.N, "m": self.m, "p": self.p, "zeta0": self.zeta0,
            "p_critical": self.p_critical, "g1": self.g1, "g2": self.g2,
            "g3": self.g3, "g4": self.g4, "accepted": self.accepted,
            "diagnostics": list(self.diagnostics),
        }


@dataclass(frozen=True)
class PowerNonlinearity:
    """g(s) = -m s + |s|^(p-1) s with antiderivative G(s)."""

    m: float
    p: float

    def g(self, s):
        s = np.asarray(s, dtype=float)
        out = -self.m * s + np.abs(s) ** (self.p - 1.0) * s
        return float(out) if out.ndim == 0 else out

    def G(self, s):
        s = np.asarray(s, dtype=float)
        out = -0.5 * self.m * s * s + np.abs(s) ** (self.p + 1.0) / (self.p + 1.0)
        return float(out) if out.ndim == 0 else out

    @property
    def zeta0(self) -> float:
        """First positive zero of G."""
        if self.m <= 0 or self.p <= 1:
            return float("nan")
        return ((self.p + 1.0) * self.m / 2.0) ** (1.0 / (self.p - 1.0))

    def validate(self, N: int) -> ValidationReport:
        if N < 3:
            raise ValueError(f"dimension N must be >= 3, got {N}")
        diagnostics = []
        p_crit = critical_exponent(N) - 1.0
        finite = bool(np.isfinite(self.m) and np.isfinite(self.p))
        g2 = finite and self.m > 0
        if not g2:
            diagnostics.append(f"m = {self.m} must be positive (decay rate at 0)")
        super_linear = finite and self.p > 1
        if not super_linear:
            diagnostics.append(f"p = {self.p} must exceed 1 (superlinear power)")
        g3 = finite and self.p < p_crit
        if finite and self.p >= p_crit:
            what = "critical exponent" if self.p == p_crit else "supercritical exponent"
            diagnostics.append(f"{what}: p = {self.p} >= 2*-1 = {p_crit:g} for N = {N}")
        # g(0) = 0 and continuity need p > 1; G(zeta) > 0 for zeta > zeta0
        g1 = super_linear
        g4 = super_linear and g2
        return ValidationReport(
            N=N, m=self.m, p=self.p, zeta0=self.zeta0, p_critical=p_crit,
            g1=g1, g2=g2 and super_linear, g3=g3, g4=g4,
            diagnostics=tuple(diagnostics),
        )

    def require_valid(self, N: int) -> ValidationReport:
        report = self.validate(N)
        if not report.accepted:
            raise ModelRejected(report)
        return report

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p}


# functional aliases
def eval_g(model: PowerNonlinearity, s):
    return model.g(s)


def eval_G(model: PowerNonlinearity, s):
    return model.G(s)


def validate_hypotheses(model: PowerNonlinearity, N: int) -> ValidationReport:
    return model.validate(N)
