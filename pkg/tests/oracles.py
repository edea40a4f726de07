"""Independent reference computations used to freeze expected values.

Nothing here imports the package's integrator or closed forms.
"""
import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _rhs(r, v, w, N, m, p):
    return w, -(N - 1.0) / r * w + m * v - abs(v) ** (p - 1.0) * v


@njit(cache=True)
def rk4_classify(N, m, p, xi, nodes, h, r_end):
    """Fixed-step RK4 shot.  Returns +1 when the trajectory has more than
    ``nodes`` zeros (overshoot), -1 when it turns back first, 0 otherwise."""
    g0 = -m * xi + abs(xi) ** (p - 1.0) * xi
    r = h
    v = xi - g0 * h * h / (2.0 * N)
    w = -g0 * h / N
    zeros = 0
    leaving = False  # |v| growing after a zero crossing
    while r < r_end:
        k1v, k1w = _rhs(r, v, w, N, m, p)
        k2v, k2w = _rhs(r + 0.5 * h, v + 0.5 * h * k1v, w + 0.5 * h * k1w, N, m, p)
        k3v, k3w = _rhs(r + 0.5 * h, v + 0.5 * h * k2v, w + 0.5 * h * k2w, N, m, p)
        k4v, k4w = _rhs(r + h, v + h * k3v, w + h * k3w, N, m, p)
        vn = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        wn = w + h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w)
        r += h
        if vn * v < 0:
            zeros += 1
            leaving = True
            if zeros > nodes:
                return 1
        v, w = vn, wn
        if leaving and v * w < 0:
            leaving = False
        elif not leaving and v * w > 0:
            return -1
    return 0


def rk4_shooting_xi(N, m, p, nodes=0, h=1e-4, rtol=1e-10, r_end=40.0):
    """v(0) of the ``nodes``-node bound state by bisection on RK4 shots."""
    lo = ((p + 1) * m / 2) ** (1 / (p - 1))
    hi = 2 * lo
    while rk4_classify(N, m, p, hi, nodes, h, r_end) != 1:
        lo, hi = hi, 2 * hi
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if rk4_classify(N, m, p, mid, nodes, h, r_end) == 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _golden_min(f, lo, hi, rtol=1e-13):
    invphi = (math.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > rtol * hi:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return min(fc, fd)


def grid_min_f(a, bK, N):
    """min over t > 0 of a t^2 + bK t^(4-N): log-grid scan plus golden section."""
    ts = np.geomspace(1e-6, 1e6, 4001)
    with np.errstate(over="ignore"):
        vals = a * ts ** 2 + bK * ts ** (4.0 - N)
    i = int(np.argmin(vals))
    f = lambda t: a * t * t + bK * t ** (4.0 - N)  # noqa: E731
    return _golden_min(f, ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)])


def grid_a_max(N, bK, rtol=1e-13):
    """Largest a with min f <= 1, by bisection on a (min f increases with a)."""
    lo, hi = 1e-300, 1.0
    while grid_min_f(hi, bK, N) <= 1.0:
        hi *= 2.0
    lo = hi
    while grid_min_f(lo, bK, N) > 1.0:
        lo *= 0.5
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if grid_min_f(mid, bK, N) <= 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisection_roots(a, bK, N, t_lo=1e-8, t_hi=1e8, samples=20001):
    """All sign changes of f(t) - 1 on a log grid, refined by bisection."""
    ts = np.geomspace(t_lo, t_hi, samples)
    with np.errstate(over="ignore"):
        vals = a * ts ** 2 + bK * ts ** (4.0 - N) - 1.0
    roots = []
    for i in np.flatnonzero(np.sign(vals[1:]) != np.sign(vals[:-1])):
        lo, hi = ts[i], ts[i + 1]
        flo = vals[i]
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = a * mid * mid + bK * mid ** (4.0 - N) - 1.0
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return roots


def quadrature_gaussian_action(alpha, sigma, N, m, p, a, b, n=200001):
    """Action of alpha exp(-(r/sigma)^2) by brute-force trapezoid quadrature."""
    r = np.linspace(0.0, 12.0 * sigma, n)
    phi = alpha * np.exp(-(r / sigma) ** 2)
    dphi = -2.0 * r / sigma ** 2 * phi
    om = 2 * math.pi ** (N / 2) / math.gamma(N / 2)
    K = om * np.trapezoid(dphi ** 2 * r ** (N - 1), r)
    G = om * np.trapezoid((-m * phi ** 2 / 2 + np.abs(phi) ** (p + 1) / (p + 1)) * r ** (N - 1), r)
    return 0.5 * (a + 0.5 * b * K) * K - G
