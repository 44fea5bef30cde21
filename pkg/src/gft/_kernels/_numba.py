"""numba kernels: scalar loops per start, same arithmetic as the numpy path."""
import math

import numpy as np
from numba import njit

from ._ids import (ABS_A2, ABS_A3, ABS_A4, ABS_A5, A2A3_MINUS_A4, ABS_AN, FS_DIRECT,
                    FS_INVERSE, H3_DIRECT, HANKEL2_DIRECT, HANKEL2_INVERSE, HERGLOTZ, NC)

M = NC + 1


@njit(cache=True)
def _coeffs_from_c(c, phi, a):
    w = np.zeros(M, np.complex128)
    for i in range(1, M):
        acc = c[i - 1]
        for j in range(1, i):
            acc -= w[j] * c[i - j - 1]
        w[i] = acc / 2.0
    b = np.zeros(M, np.complex128)
    nb = np.zeros(M, np.complex128)
    b[0] = phi[M - 1]
    for deg in range(M - 2, -1, -1):
        for i in range(M):
            s = 0j
            for j in range(1, i + 1):
                s += b[i - j] * w[j]
            nb[i] = s
        nb[0] += phi[deg]
        for i in range(M):
            b[i] = nb[i]
    e = np.zeros(M, np.complex128)
    e[0] = 1.0
    for i in range(1, M):
        acc = 0j
        for j in range(1, i + 1):
            acc += j * (b[j] / j) * e[i - j]
        e[i] = acc / i
    a[0] = 0.0
    for i in range(M):
        a[i + 1] = e[i]


@njit(cache=True)
def _functional(a, fid, mu, n):
    a2 = a[2]
    a3 = a[3]
    a4 = a[4]
    a5 = a[5]
    if fid == ABS_AN:
        return abs(a[n])
    if fid == FS_DIRECT:
        return abs(a3 - mu * a2 * a2)
    if fid == HANKEL2_DIRECT:
        return abs(a2 * a4 - a3 * a3)
    if fid == A2A3_MINUS_A4:
        return abs(a2 * a3 - a4)
    if fid == H3_DIRECT:
        return abs(a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2))
    A2 = -a2
    A3 = 2 * a2 * a2 - a3
    A4 = -5 * a2**3 + 5 * a2 * a3 - a4
    A5 = 14 * a2**4 - 21 * a2 * a2 * a3 + 6 * a2 * a4 + 3 * a3 * a3 - a5
    if fid == ABS_A2:
        return abs(A2)
    if fid == ABS_A3:
        return abs(A3)
    if fid == ABS_A4:
        return abs(A4)
    if fid == ABS_A5:
        return abs(A5)
    if fid == FS_INVERSE:
        return abs(A3 - mu * A2 * A2)
    if fid == HANKEL2_INVERSE:
        return abs(A2 * A4 - A3 * A3)
    return np.nan


@njit(cache=True)
def _params_to_c(x, kind, J, c):
    if kind == HERGLOTZ:
        umax = x[0]
        for j in range(1, J):
            umax = max(umax, x[j])
        tot = 0.0
        for j in range(J):
            tot += math.exp(x[j] - umax)
        for k in range(1, NC + 1):
            s = 0j
            for j in range(J):
                s += (math.exp(x[j] - umax) / tot) * np.exp(1j * k * x[J + j])
            c[k - 1] = 2.0 * s
    else:
        c1 = min(max(x[0], 0.0), 2.0)
        rho = min(max(x[1], 0.0), 1.0)
        g = rho * np.exp(1j * x[2])
        z = np.exp(1j * x[3])
        t = 4.0 - c1 * c1
        for k in range(NC):
            c[k] = 0j
        c[0] = c1
        c[1] = (c1 * c1 + g * t) / 2
        c[2] = (c1**3 + 2 * c1 * t * g - c1 * t * g * g + 2 * t * (1 - rho * rho) * z) / 4


@njit(cache=True)
def _eval_one(x, kind, J, phi, fid, mu, n, c, a):
    _params_to_c(x, kind, J, c)
    _coeffs_from_c(c, phi, a)
    return _functional(a, fid, mu, n)


@njit(cache=True)
def evaluate(x, kind, J, phi, fid, mu, n):
    S = x.shape[0]
    out = np.empty(S)
    c = np.zeros(NC, np.complex128)
    a = np.zeros(M + 1, np.complex128)
    for s in range(S):
        out[s] = _eval_one(x[s], kind, J, phi, fid, mu, n, c, a)
    return out


@njit(cache=True)
def coeffs_from_c(cs, phi):
    S = cs.shape[0]
    out = np.zeros((S, M + 1), np.complex128)
    a = np.zeros(M + 1, np.complex128)
    for s in range(S):
        _coeffs_from_c(cs[s], phi, a)
        out[s] = a
    return out


@njit(cache=True)
def _clamp(x, kind):
    if kind != HERGLOTZ:
        x[0] = min(max(x[0], 0.0), 2.0)
        x[1] = min(max(x[1], 0.0), 1.0)


@njit(cache=True, nogil=True)
def descend(x0, kind, J, phi, fid, mu, n, iterations, step0, tol):
    S, D = x0.shape
    xs = x0.copy()
    best = np.empty(S)
    c = np.zeros(NC, np.complex128)
    a = np.zeros(M + 1, np.complex128)
    trial = np.empty(D)
    for s in range(S):
        x = xs[s]
        _clamp(x, kind)
        fx = _eval_one(x, kind, J, phi, fid, mu, n, c, a)
        step = step0
        for _ in range(iterations):
            if step < tol:
                break
            improved = False
            for d in range(D):
                for i in range(D):
                    trial[i] = x[i]
                trial[d] += step
                _clamp(trial, kind)
                v = _eval_one(trial, kind, J, phi, fid, mu, n, c, a)
                if v > fx:
                    for i in range(D):
                        x[i] = trial[i]
                    fx = v
                    improved = True
                    continue
                for i in range(D):
                    trial[i] = x[i]
                trial[d] -= step
                _clamp(trial, kind)
                v = _eval_one(trial, kind, J, phi, fid, mu, n, c, a)
                if v > fx:
                    for i in range(D):
                        x[i] = trial[i]
                    fx = v
                    improved = True
            if not improved:
                step *= 0.5
        best[s] = fx
    return xs, best


@njit(cache=True)
def _winding_one(bd, p):
    K = bd.shape[0]
    total = 0.0
    dmin = np.inf
    for i in range(K):
        u = bd[i]
        v = bd[(i + 1) % K]
        d0 = u - p
        d1 = v - p
        total += np.angle(d1 * np.conj(d0))  # no division: a point on a vertex gives 0
        seg = v - u
        L2 = seg.real * seg.real + seg.imag * seg.imag
        tpar = 0.0
        if L2 > 0:
            tpar = ((p - u) * np.conj(seg)).real / L2
            tpar = min(max(tpar, 0.0), 1.0)
        dist = abs(u + tpar * seg - p)
        if dist < dmin:
            dmin = dist
    return total / (2 * np.pi), dmin


@njit(cache=True)
def winding(boundary, points):
    P = points.shape[0]
    wind = np.empty(P)
    dist = np.empty(P)
    for i in range(P):
        wind[i], dist[i] = _winding_one(boundary, points[i])
    return wind, dist
