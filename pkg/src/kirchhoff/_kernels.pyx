# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled radial integrator.  Mirrors ``_kernels_py.integrate_radial``."""
import numpy as np
from libc.math cimport fabs, pow, isfinite, NAN

cdef enum:
    INCONCLUSIVE = 0
    CROSSES = 1
    UNDERSHOOT = 2
    DECAYS = 3
    BLOWUP = 4

cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0
cdef double C2 = 0.2, C3 = 0.3, C4 = 0.8, C5 = 8.0 / 9.0


cdef inline double acc(double r, double v, double w, double nu, double m,
                       double pm1) nogil:
    return -nu / r * w + m * v - pow(fabs(v), pm1) * v


def integrate_radial(int N, double m, double p, double xi, double r_end,
                     double rtol, double atol, double r_series,
                     int max_crossings, double decay_eps, double max_step,
                     double[::1] grid, double[::1] out_v, double[::1] out_dv,
                     bint record):
    cdef double nu = N - 1.0
    cdef double pm1 = p - 1.0
    cdef double g0 = -m * xi + pow(fabs(xi), pm1) * xi
    cdef Py_ssize_t ng = grid.shape[0]
    cdef Py_ssize_t j = 0
    cdef double rr
    while j < ng and grid[j] <= r_series:
        rr = grid[j]
        out_v[j] = xi - g0 * rr * rr / (2.0 * N)
        out_dv[j] = -g0 * rr / N
        j += 1

    cdef double r = r_series
    cdef double v = xi - g0 * r * r / (2.0 * N)
    cdef double w = -g0 * r / N

    cdef Py_ssize_t cap = 1024, nrec = 0
    traj_arr = np.empty((cap, 3)) if record else np.empty((0, 3))
    cdef double[:, ::1] traj = traj_arr
    if record:
        traj[0, 0] = 0.0
        traj[0, 1] = xi
        traj[0, 2] = 0.0
        traj[1, 0] = r
        traj[1, 1] = v
        traj[1, 2] = w
        nrec = 2

    cdef int crossings = 0
    cdef double r_cross = NAN
    cdef bint descending = True
    cdef bint landing
    cdef int status = INCONCLUSIVE
    cdef double h = min(max_step, r_series)
    cdef double h_prop, rn, vn, wn, err, fac, s, ev, ew
    cdef double v2, w2, v3, w3, v4, w4, v5, w5, v6, w6
    cdef double k1v = w, k1w = acc(r, v, w, nu, m, pm1)
    cdef double k2v, k2w, k3v, k3w, k4v, k4w, k5v, k5w, k6v, k6w, k7v, k7w
    cdef double floor = decay_eps * xi

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
            if landing:
                out_v[j] = v
                out_dv[j] = w
                j += 1
                continue
            status = BLOWUP
            break

        v2 = v + h * A21 * k1v
        w2 = w + h * A21 * k1w
        k2v = w2
        k2w = acc(r + C2 * h, v2, w2, nu, m, pm1)
        v3 = v + h * (A31 * k1v + A32 * k2v)
        w3 = w + h * (A31 * k1w + A32 * k2w)
        k3v = w3
        k3w = acc(r + C3 * h, v3, w3, nu, m, pm1)
        v4 = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
        w4 = w + h * (A41 * k1w + A42 * k2w + A43 * k3w)
        k4v = w4
        k4w = acc(r + C4 * h, v4, w4, nu, m, pm1)
        v5 = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
        w5 = w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w)
        k5v = w5
        k5w = acc(r + C5 * h, v5, w5, nu, m, pm1)
        v6 = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
        w6 = w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w)
        k6v = w6
        k6w = acc(r + h, v6, w6, nu, m, pm1)
        vn = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
        wn = w + h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w)
        rn = grid[j] if landing else r + h
        if not (isfinite(vn) and isfinite(wn)):
            status = BLOWUP
            break
        k7v = wn
        k7w = acc(rn, vn, wn, nu, m, pm1)
        ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
        ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        err = max(fabs(ev) / (atol + rtol * max(fabs(v), fabs(vn))),
                  fabs(ew) / (atol + rtol * max(fabs(w), fabs(wn))))
        if not isfinite(err):
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
            r = rn
            v = vn
            w = wn
            k1v = k7v
            k1w = k7w
            if record:
                if nrec == cap:
                    cap *= 2
                    traj_arr = np.resize(traj_arr, (cap, 3))
                    traj = traj_arr
                traj[nrec, 0] = r
                traj[nrec, 1] = v
                traj[nrec, 2] = w
                nrec += 1
            if crossings > max_crossings:
                status = CROSSES
                break
            s = v * w
            if not descending and s < 0.0:
                descending = True
            elif descending and s > 0.0:
                status = UNDERSHOOT
                break
            if fabs(v) < floor and fabs(w) < floor and s <= 0.0:
                status = DECAYS
                break
            if err == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * pow(err, -0.2)))
            h = h_prop if landing else h * fac
        else:
            h *= max(0.2, 0.9 * pow(err, -0.25))
            if h < 1e-14 * max(r, 1.0):
                status = BLOWUP
                break

    out = np.asarray(traj_arr[:nrec]).copy() if record else None
    return status, r, v, w, crossings, r_cross, j, out
