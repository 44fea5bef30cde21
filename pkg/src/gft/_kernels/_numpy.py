"""Vectorized numpy kernels; each call handles a batch of S independent starts."""
import numpy as np

from ._ids import (ABS_A2, ABS_A3, ABS_A4, ABS_A5, A2A3_MINUS_A4, ABS_AN, FS_DIRECT,
                    FS_INVERSE, H3_DIRECT, HANKEL2_DIRECT, HANKEL2_INVERSE, HERGLOTZ, NC)


def coeffs_from_c(c, phi):
    """a_0..a_NC+1 (shape (S, NC+2)) from c_1..c_NC (shape (S, NC)) and phi_0..phi_NC."""
    S = c.shape[0]
    m = NC + 1
    num = np.zeros((S, m), np.complex128)
    den = np.zeros((S, m), np.complex128)
    num[:, 1:] = c
    den[:, 0] = 2.0
    den[:, 1:] = c
    w = np.zeros((S, m), np.complex128)
    for i in range(1, m):
        acc = num[:, i].copy()
        for j in range(1, i):
            acc -= w[:, j] * den[:, i - j]
        w[:, i] = acc / 2.0
    b = np.zeros((S, m), np.complex128)
    b[:, 0] = phi[m - 1]
    for deg in range(m - 2, -1, -1):
        nb = np.zeros((S, m), np.complex128)
        for i in range(m):
            for j in range(1, i + 1):
                nb[:, i] += b[:, i - j] * w[:, j]
        nb[:, 0] += phi[deg]
        b = nb
    q = np.zeros((S, m), np.complex128)
    for i in range(1, m):
        q[:, i] = b[:, i] / i
    e = np.zeros((S, m), np.complex128)
    e[:, 0] = 1.0
    for i in range(1, m):
        acc = np.zeros(S, np.complex128)
        for j in range(1, i + 1):
            acc += j * q[:, j] * e[:, i - j]
        e[:, i] = acc / i
    a = np.zeros((S, m + 1), np.complex128)
    a[:, 1:] = e
    return a


def functional_from_a(a, fid, mu, n):
    a2, a3, a4, a5 = a[:, 2], a[:, 3], a[:, 4], a[:, 5]
    if fid == ABS_AN:
        return np.abs(a[:, n])
    if fid == FS_DIRECT:
        return np.abs(a3 - mu * a2 * a2)
    if fid == HANKEL2_DIRECT:
        return np.abs(a2 * a4 - a3 * a3)
    if fid == A2A3_MINUS_A4:
        return np.abs(a2 * a3 - a4)
    if fid == H3_DIRECT:
        return np.abs(a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2))
    A2 = -a2
    A3 = 2 * a2 * a2 - a3
    A4 = -5 * a2**3 + 5 * a2 * a3 - a4
    A5 = 14 * a2**4 - 21 * a2 * a2 * a3 + 6 * a2 * a4 + 3 * a3 * a3 - a5
    if fid == ABS_A2:
        return np.abs(A2)
    if fid == ABS_A3:
        return np.abs(A3)
    if fid == ABS_A4:
        return np.abs(A4)
    if fid == ABS_A5:
        return np.abs(A5)
    if fid == FS_INVERSE:
        return np.abs(A3 - mu * A2 * A2)
    if fid == HANKEL2_INVERSE:
        return np.abs(A2 * A4 - A3 * A3)
    raise ValueError(f"unknown functional id {fid}")


def herglotz_c(x, J):
    """c_1..c_NC from x = [u_1..u_J, t_1..t_J] with weights = softmax(u)."""
    u = x[:, :J]
    t = x[:, J:]
    w = np.exp(u - u.max(axis=1, keepdims=True))
    w /= w.sum(axis=1, keepdims=True)
    c = np.empty((x.shape[0], NC), np.complex128)
    for k in range(1, NC + 1):
        c[:, k - 1] = 2.0 * (w * np.exp(1j * k * t)).sum(axis=1)
    return c


def lz_c(x):
    """c_1..c_3 from x = [c, |gamma|, arg gamma, arg z]; higher c's are zero."""
    c1 = np.clip(x[:, 0], 0.0, 2.0)
    rho = np.clip(x[:, 1], 0.0, 1.0)
    g = rho * np.exp(1j * x[:, 2])
    z = np.exp(1j * x[:, 3])
    t = 4.0 - c1 * c1
    c = np.zeros((x.shape[0], NC), np.complex128)
    c[:, 0] = c1
    c[:, 1] = (c1 * c1 + g * t) / 2
    c[:, 2] = (c1**3 + 2 * c1 * t * g - c1 * t * g * g + 2 * t * (1 - rho * rho) * z) / 4
    return c


def _params_to_c(x, kind, J):
    return herglotz_c(x, J) if kind == HERGLOTZ else lz_c(x)


def evaluate(x, kind, J, phi, fid, mu, n):
    return functional_from_a(coeffs_from_c(_params_to_c(x, kind, J), phi), fid, mu, n)


def _clamp(x, kind):
    if kind != HERGLOTZ:
        x[:, 0] = np.clip(x[:, 0], 0.0, 2.0)
        x[:, 1] = np.clip(x[:, 1], 0.0, 1.0)
    return x


def descend(x0, kind, J, phi, fid, mu, n, iterations, step0, tol):
    """Compass search per start: try +/- step along each coordinate, halve on a dry sweep."""
    x = _clamp(np.array(x0, dtype=np.float64, copy=True), kind)
    S, D = x.shape
    best = evaluate(x, kind, J, phi, fid, mu, n)
    step = np.full(S, step0)
    active = np.ones(S, bool)
    for _ in range(iterations):
        if not active.any():
            break
        improved = np.zeros(S, bool)
        for d in range(D):
            plus = x.copy()
            plus[:, d] += step
            _clamp(plus, kind)
            vp = evaluate(plus, kind, J, phi, fid, mu, n)
            up = active & (vp > best)
            x[up] = plus[up]
            best[up] = vp[up]
            minus = x.copy()
            minus[:, d] -= step
            _clamp(minus, kind)
            vm = evaluate(minus, kind, J, phi, fid, mu, n)
            down = active & ~up & (vm > best)
            x[down] = minus[down]
            best[down] = vm[down]
            improved |= up | down
        shrink = active & ~improved
        step[shrink] *= 0.5
        active &= step >= tol
    return x, best


def winding(boundary, points):
    """Winding number of the closed polyline ``boundary`` around each point, and the
    distance from each point to the polyline."""
    bd = np.asarray(boundary, np.complex128)
    pts = np.asarray(points, np.complex128).reshape(-1)
    nxt = np.roll(bd, -1)
    seg = nxt - bd
    seg_len2 = np.abs(seg) ** 2
    wind = np.empty(pts.size)
    dist = np.empty(pts.size)
    chunk = max(1, 500_000 // max(bd.size, 1))
    for s in range(0, pts.size, chunk):
        p = pts[s : s + chunk, None]
        d0 = bd[None, :] - p
        d1 = nxt[None, :] - p
        wind[s : s + chunk] = np.angle(d1 * np.conj(d0)).sum(axis=1) / (2 * np.pi)
        tpar = np.clip(((p - bd[None, :]) * np.conj(seg)).real / np.where(seg_len2 > 0, seg_len2, 1.0), 0, 1)
        dist[s : s + chunk] = np.abs(bd[None, :] + tpar * seg - p).min(axis=1)
    return wind, dist
