"""Pure-Python radial integrator; reference for the compiled ``_kernels``.

Integrates v'' + (N-1)/r v' + g(v) = 0 with g(v) = -m v + |v|^(p-1) v,
v(0) = xi, v'(0) = 0, using the Dormand-Prince 5(4) pair.  Both
implementations share the signature and status codes below.
"""
import math

import numpy as np

INCONCLUSIVE = 0
CROSSES = 1
UNDERSHOOT = 2
DECAYS = 3
BLOWUP = 4

# Dormand-Prince 5(4)
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                           49.0 / 176.0, -5103.0 / 18656.0)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1, E3, E4, E5, E6, E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                          -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)
C2, C3, C4, C5 = 0.2, 0.3, 0.8, 8.0 / 9.0


def integrate_radial(N, m, p, xi, r_end, rtol, atol, r_series, max_crossings,
                     decay_eps, max_step, grid, out_v, out_dv, record):
    """Integrate one shot.

    ``grid`` (possibly empty) lists output radii; steps are clipped to land
    on them exactly and the state is written to ``out_v``/``out_dv``.

    Returns ``(status, r, v, dv, crossings, r_cross, n_filled, traj)`` where
    ``traj`` is an ``(n, 3)`` array of accepted steps when ``record`` is set.
    """
    nu = N - 1.0
    pm1 = p - 1.0

    def acc(r, v, w):
        return -nu / r * w + m * v - abs(v) ** pm1 * v

    g0 = -m * xi + abs(xi) ** pm1 * xi
    ng = len(grid)
    j = 0
    while j < ng and grid[j] <= r_series:
        rr = grid[j]
        out_v[j] = xi - g0 * rr * rr / (2.0 * N)
        out_dv[j] = -g0 * rr / N
        j += 1

    r = r_series
    v = xi - g0 * r * r / (2.0 * N)
    w = -g0 * r / N
    traj = [(0.0, xi, 0.0), (r, v, w)] if record else None

    crossings = 0
    r_cross = math.nan
    descending = True
    status = INCONCLUSIVE
    h = min(max_step, r_series)
    k1v, k1w = w, acc(r, v, w)
    floor = decay_eps * xi

    while True:
        if r >= r_end:
            status = INCONCLUSIVE
            break
        h = min(h, max_step, r_end - r)
        h_prop = h
        landing = False
        if j < ng and r + h >= grid[j]:
            h = grid[j] - r
            landing = True
        if h <= 1e-15 * max(r, 1.0):
            # grid point coincides with r
            if landing:
                out_v[j] = v
                out_dv[j] = w
                j += 1
                continue
            status = BLOWUP
            break

        v2 = v + h * A21 * k1v
        w2 = w + h * A21 * k1w
        k2v, k2w = w2, acc(r + C2 * h, v2, w2)
        v3 = v + h * (A31 * k1v + A32 * k2v)
        w3 = w + h * (A31 * k1w + A32 * k2w)
        k3v, k3w = w3, acc(r + C3 * h, v3, w3)
        v4 = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
        w4 = w + h * (A41 * k1w + A42 * k2w + A43 * k3w)
        k4v, k4w = w4, acc(r + C4 * h, v4, w4)
        v5 = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
        w5 = w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w)
        k5v, k5w = w5, acc(r + C5 * h, v5, w5)
        v6 = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
        w6 = w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w)
        k6v, k6w = w6, acc(r + h, v6, w6)
        vn = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
        wn = w + h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w)
        rn = grid[j] if landing else r + h
        if not (math.isfinite(vn) and math.isfinite(wn)):
            status = BLOWUP
            break
        k7v, k7w = wn, acc(rn, vn, wn)
        ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
        ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        err = max(abs(ev) / (atol + rtol * max(abs(v), abs(vn))),
                  abs(ew) / (atol + rtol * max(abs(w), abs(wn))))
        if not math.isfinite(err):
            h *= 0.2
            if h < 1e-14:
                status = BLOWUP
                break
            continue

        if err <= 1.0:
            if landing:
                out_v[j] = vn
                out_dv[j] = wn
                j += 1
            if vn * v < 0.0:
                crossings += 1
                r_cross = r - v * (rn - r) / (vn - v)
                descending = False
            r, v, w = rn, vn, wn
            k1v, k1w = k7v, k7w
            if record:
                traj.append((r, v, w))
            if crossings > max_crossings:
                status = CROSSES
                break
            s = v * w
            if not descending and s < 0.0:
                descending = True
            elif descending and s > 0.0:
                status = UNDERSHOOT
                break
            if abs(v) < floor and abs(w) < floor and s <= 0.0:
                status = DECAYS
                break
            fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h = h_prop if landing else h * fac
        else:
            h *= max(0.2, 0.9 * err ** -0.25)
            if h < 1e-14 * max(r, 1.0):
                status = BLOWUP
                break

    out = np.array(traj, dtype=float) if record else None
    return status, r, v, w, crossings, r_cross, j, out
