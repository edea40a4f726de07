"""Radial integrals over R^N on uniform grids."""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import simpson


def sphere_area(N: int) -> float:
    """Surface area of the unit sphere in R^N."""
    return 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0)


def radial_integral(grid, f, N: int) -> float:
    """Integral of a radial function f over the ball of radius grid[-1]."""
    grid = np.asarray(grid, dtype=float)
    return sphere_area(N) * float(simpson(np.asarray(f) * grid ** (N - 1), x=grid))


def exponential_tail(r_end: float, v_end: float, N: int, m: float, rate: float | None = None):
    """Remainders of K and of the integral of G beyond r_end.

    Uses v ~ c r^((1-N)/2) exp(-sqrt(m) r), for which v'^2 r^(N-1) and
    v^2 r^(N-1) are pure exponentials with closed-form integrals.
    """
    sm = math.sqrt(m) if rate is None else rate
    weight = sphere_area(N) * v_end * v_end * r_end ** (N - 1) / (2.0 * sm)
    return sm * sm * weight, -0.5 * m * weight


def gradient_and_potential(grid, v, dv, N: int, model, include_tail: bool = True,
                           rate: float | None = None):
    """Return (K, GInt) for a radial profile sampled on ``grid``.

    ``rate`` overrides the exponential decay rate sqrt(m) of the remainder,
    e.g. t sqrt(m) for the rescaled profile v(t r).
    """
    K = radial_integral(grid, np.square(dv), N)
    GInt = radial_integral(grid, model.G(np.asarray(v)), N)
    if include_tail:
        dK, dG = exponential_tail(float(grid[-1]), float(v[-1]), N, model.m, rate)
        K += dK
        GInt += dG
    return K, GInt
