"""Radius constants for the S*_R- and S*_e-radius theorems.

Each branch has three independent handles: the closed form, a bisection on
"disk of centre a(r) and radius rho(r) fits the target domain", and an
extremal witness whose ``zf'/f`` should touch the domain boundary exactly at
the radius (:func:`sharpness_check`).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import series as S
from .classes import K
from .regions import (DISK_LEMMAS, LemmaDomainError, Region, disk_radius_halfplane,
                      exp_region, halfplane_region, lemniscate_region, membership,
                      rational_region)
from .series import Series

E = math.e
SQRT2 = math.sqrt(2.0)


class RadiusDomainError(ValueError):
    pass


class NoRadiusError(ValueError):
    pass


@dataclass(frozen=True)
class RadiusResult:
    value: float
    defining_equation: str
    method: str
    sharp_witness: str
    theorem: str = ""
    branch: str = ""
    param: float | None = None

    def __post_init__(self):
        if not (0 < self.value <= 1):
            raise ValueError(f"radius must lie in (0, 1], got {self.value!r}")

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem, "branch": self.branch, "param": self.param,
            "value": float(self.value), "method": self.method,
            "defining_equation": self.defining_equation, "sharp_witness": self.sharp_witness,
        }


def _positive_root(a: float, b: float, c: float) -> float:
    """Larger root of ``a r^2 + b r + c`` (a > 0, c < 0), written to avoid cancellation."""
    disc = math.sqrt(b * b - 4 * a * c)
    if b >= 0:
        return -2 * c / (b + disc)
    return (-b + disc) / (2 * a)


def _smallest_quartic_root(c: float) -> float:
    """Smallest positive root of ``4 r^4 - 4 r^2 + c = 0`` via the quadratic in r^2."""
    if not (0 < c <= 1):
        raise ArithmeticError(f"4r^4 - 4r^2 + {c} has no positive root below 1")
    r2 = (1 - math.sqrt(1 - c)) / 2
    return math.sqrt(r2)


def _need(param, name):
    if param is None:
        raise RadiusDomainError(f"branch needs the parameter {name}")
    return float(param)


def radius_thmD(which: str, param: float | None = None) -> RadiusResult:
    """S*_R-radii (a)-(c), M(beta)-radius of S*_R (d), S*_L-radius of S*_R (e)."""
    which = which.lower()
    if which == "a":
        alpha = _need(param, "alpha")
        if not (0 <= alpha < 1):
            raise RadiusDomainError(f"alpha must satisfy 0 <= alpha < 1, got {alpha}")
        r = _positive_root(3 - 2 * alpha, 2 * (2 - alpha), -1.0)
        eq = ("(3-2a) r^2 + 2(2-a) r - 1 = 0, positive root; printed closed form "
              "(2-a+sqrt(7-6a+a^2))/(-3+2a) has a sign slip")
        return RadiusResult(r, eq, "closed_form", f"cs_pair({alpha:g})", "D", "a", alpha)
    if which == "b":
        r = _smallest_quartic_root(57 - 40 * SQRT2)
        return RadiusResult(r, "4r^4 - 4r^2 + (57 - 40 sqrt2) = 0, smallest positive root",
                            "closed_form", "f_q", "D", "b")
    if which == "c":
        alpha = _need(param, "alpha")
        if not (0 < alpha <= 1):
            raise RadiusDomainError(f"alpha must satisfy 0 < alpha <= 1, got {alpha}")
        r = _positive_root(alpha, 3 + 2 * SQRT2, -1.0)
        return RadiusResult(r, "a r^2 + (3 + 2 sqrt2) r - 1 = 0, positive root",
                            "closed_form", f"f_B({alpha:g})", "D", "c", alpha)
    if which == "d":
        beta = _need(param, "beta")
        if not beta > 1:
            raise RadiusDomainError(f"beta must exceed 1, got {beta}")
        r = 1.0 if beta >= 2 else _positive_root(1.0, beta * K, -(beta - 1) * K * K)
        return RadiusResult(r, "r^2 + beta k r - (beta-1) k^2 = 0 (1 if beta >= 2)",
                            "closed_form", "h", "D", "d", beta)
    if which == "e":
        r = _positive_root(1.0, K + 1, -K)
        return RadiusResult(r, "r^2 + (k+1) r - k = 0, positive root", "closed_form", "h", "D", "e")
    raise RadiusDomainError(f"unknown branch {which!r}")


def radius_thmE(which: str, param: float | None = None) -> RadiusResult:
    """S*_e-radii of S*_L (a), S*_q (b), S*_R (c), S*_C (d), BS*(alpha) (e)."""
    which = which.lower()
    if which == "a":
        return RadiusResult(1 - E**-2, "sqrt(1-r) = 1/e", "closed_form", "f_L", "E", "a")
    if which == "b":
        r = _smallest_quartic_root(((E * E - 1) / (E * E)) ** 2)
        return RadiusResult(r, "4r^4 - 4r^2 + ((e^2-1)/e^2)^2 = 0, smallest positive root",
                            "closed_form", "f_q", "E", "b")
    if which == "c":
        r = _positive_root(E, K * (2 * E - 1), -K * K * (E - 1))
        return RadiusResult(r, "e r^2 + k(2e-1) r - k^2 (e-1) = 0, positive root",
                            "closed_form", "h", "E", "c")
    if which == "d":
        # 10e^2 - 6e under the root, from 2e r^2 + 4e r - 3(e-1) = 0
        r = _positive_root(2 * E, 4 * E, -3 * (E - 1))
        return RadiusResult(r, "2e r^2 + 4e r - 3(e-1) = 0, positive root",
                            "closed_form", "f_C", "E", "d")
    if which == "e":
        alpha = _need(param, "alpha")
        if not (0 < alpha <= 1):
            raise RadiusDomainError(f"alpha must satisfy 0 < alpha <= 1, got {alpha}")
        if alpha < 1e-8:
            r = (E - 1) / E
        else:
            r = _positive_root(alpha * (E - 1), E, -(E - 1))
        return RadiusResult(r, "a(e-1) r^2 + e r - (e-1) = 0, positive root",
                            "closed_form", f"f_B({alpha:g})", "E", "e", alpha)
    raise RadiusDomainError(f"unknown branch {which!r}")


def radius(theorem: str, which: str, param: float | None = None) -> RadiusResult:
    theorem = theorem.upper()
    if theorem == "D":
        return radius_thmD(which, param)
    if theorem == "E":
        return radius_thmE(which, param)
    raise RadiusDomainError(f"theorem must be D or E, got {theorem!r}")


# --------------------------------------------------------------------------
# generic bisection


def _lemma(disk_lemma):
    if callable(disk_lemma):
        return disk_lemma
    try:
        return DISK_LEMMAS[disk_lemma]
    except KeyError:
        raise ValueError(f"unknown disk lemma {disk_lemma!r}; known: {sorted(DISK_LEMMAS)}") from None


def radius_bisect(center_fn: Callable[[float], float], radius_fn: Callable[[float], float],
                  disk_lemma="phiR", tol: float = 1e-14, label: str = "") -> RadiusResult:
    """Largest r in (0, 1) with ``radius_fn(r) <= r_a(center_fn(r))``.

    ``disk_lemma`` is 'phiR', 'exp', 'lemniscate' or any callable ``a -> r_a``
    raising ValueError outside its domain (treated as "does not fit").
    """
    r_a = _lemma(disk_lemma)

    def fits(r):
        try:
            return radius_fn(r) <= r_a(center_fn(r))
        except (LemmaDomainError, ValueError, ZeroDivisionError):
            return False

    hi = 1.0 - 1e-15
    if fits(hi):
        return RadiusResult(1.0, label, "bisection", "")
    lo = 1e-12
    if not fits(lo):
        raise NoRadiusError("disk does not fit the domain even for tiny r")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return RadiusResult(lo, label, "bisection", "")


def _rational_dev(r):
    """max over |z| = r of |phi_R(z) - 1|, attained at z = r."""
    return (r / K) * (K + r) / (K - r)


def _lune_dev(r):
    """max over |z| = r of |z + sqrt(1+z^2) - 1|, attained at z = r."""
    return r + math.sqrt(1 + r * r) - 1


def bisection_setup(theorem: str, which: str, param: float | None = None):
    """(center_fn, radius_fn, lemma) for the disk argument behind each branch."""
    key = (theorem.upper(), which.lower())
    one = lambda r: 1.0  # noqa: E731
    if key == ("D", "a"):
        a = _need(param, "alpha")
        return (lambda r: (1 + (1 - 2 * a) * r * r) / (1 - r * r),
                lambda r: 2 * (2 - a) * r / (1 - r * r), "phiR")
    if key == ("D", "b"):
        return one, _lune_dev, "phiR"
    if key == ("D", "c"):
        a = _need(param, "alpha")
        return one, lambda r: r / (1 - a * r * r), "phiR"
    if key == ("D", "d"):
        beta = _need(param, "beta")
        return one, _rational_dev, lambda c: disk_radius_halfplane(c, beta)
    if key == ("D", "e"):
        return one, _rational_dev, "lemniscate"
    if key == ("E", "a"):
        return one, lambda r: 1 - math.sqrt(1 - r), "exp"
    if key == ("E", "b"):
        return one, _lune_dev, "exp"
    if key == ("E", "c"):
        return one, _rational_dev, "exp"
    if key == ("E", "d"):
        return one, lambda r: (4 * r + 2 * r * r) / 3, "exp"
    if key == ("E", "e"):
        a = _need(param, "alpha")
        return one, lambda r: r / (1 - a * r * r), "exp"
    raise RadiusDomainError(f"no disk setup for {key}")


def radius_by_bisection(theorem: str, which: str, param: float | None = None) -> RadiusResult:
    center, rad, lemma = bisection_setup(theorem, which, param)
    res = radius_bisect(center, rad, lemma, label=f"disk argument {theorem.upper()}({which})")
    closed = radius(theorem, which, param)
    return RadiusResult(res.value, res.defining_equation, "bisection", closed.sharp_witness,
                        closed.theorem, closed.branch, closed.param)


# --------------------------------------------------------------------------
# extremal witnesses (closed-form zf'/f) and target domains


def _zfp_cs_pair(alpha):
    return lambda z: (1 + 2 * (2 - alpha) * z + (1 - 2 * alpha) * z * z) / (1 - z * z)


def _zfp_booth(alpha):
    return lambda z: 1 + z / (1 - alpha * z * z)


WITNESS_ZFP = {
    "h": lambda p: (lambda z: 1 + (z / K) * (K + z) / (K - z)),
    "f_q": lambda p: (lambda z: z + np.sqrt(1 + z * z)),
    "f_L": lambda p: (lambda z: np.sqrt(1 + z)),
    "f_C": lambda p: (lambda z: 1 + 4 * z / 3 + 2 * z * z / 3),
    "f_B": _zfp_booth,
    "cs_pair": _zfp_cs_pair,
}


def target_region(theorem: str, which: str, param: float | None = None) -> Region:
    theorem, which = theorem.upper(), which.lower()
    if theorem == "E":
        return exp_region()
    if which == "d":
        return halfplane_region(_need(param, "beta"))
    if which == "e":
        return lemniscate_region()
    return rational_region()


def witness(theorem: str, which: str, param: float | None = None):
    """(witness id, closed-form zf'/f, target region) for a theorem branch."""
    res = radius(theorem, which, param)
    wid = res.sharp_witness.split("(")[0]
    return wid, WITNESS_ZFP[wid](param), target_region(theorem, which, param)


# --------------------------------------------------------------------------
# sharpness


@dataclass
class SharpnessReport:
    passed: bool
    inner_inside: bool
    outer_escapes: bool
    R: float
    delta: float
    violating_sample: complex | None = None
    escaping_sample: complex | None = None

    @property
    def verdict(self) -> str:
        if not self.inner_inside:
            return "VIOLATION"
        return "SHARP-CONFIRMED" if self.outer_escapes else "SOUND"

    def to_dict(self) -> dict:
        enc = lambda v: None if v is None else [v.real, v.imag]  # noqa: E731
        return {"passed": self.passed, "verdict": self.verdict, "inner_inside": self.inner_inside,
                "outer_escapes": self.outer_escapes, "R": self.R, "delta": self.delta,
                "violating_sample": enc(self.violating_sample),
                "escaping_sample": enc(self.escaping_sample)}


def zfp_over_f_series(f: Series) -> Series:
    """Series of ``z f'(z) / f(z)`` for a normalized f (the last coefficient is lost)."""
    n = f.order
    f_over_z = Series.from_coeffs(f.coeffs[1:], n)
    zfp = Series.from_coeffs(np.arange(n + 1) * f.coeffs, n)
    zfp_over_z = Series.from_coeffs(zfp.coeffs[1:], n)
    return S.div(zfp_over_z, f_over_z)


def _series_evaluator(f: Series, rmax: float):
    g = zfp_over_f_series(f)
    tail = np.abs(g.coeffs[-3:]).max() * rmax ** (g.order - 2)
    if tail > 1e-8:
        warnings.warn(f"series truncated at order {f.order} may be inaccurate at |z| = {rmax:.4g}"
                      f" (tail ~ {tail:.2e}); prefer a closed-form zf'/f", RuntimeWarning, stacklevel=3)
    return Series(g.coeffs[:-1])


def sharpness_check(f, region: Region, R: float, delta: float = 1e-4, samples: int = 2048) -> SharpnessReport:
    """Does ``zf'/f`` stay in ``region`` on |z| = R(1-delta) and leave it on |z| = R(1+delta)?

    ``f`` is either a callable giving ``zf'/f`` directly or the Series of f.
    """
    if not (0 < R * (1 - delta) and R * (1 + delta) < 1):
        raise ValueError(f"need 0 < R(1 +/- delta) < 1, got R={R}, delta={delta}")
    zfp = _series_evaluator(f, R * (1 + delta)) if isinstance(f, Series) else f
    t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    # include the real-axis points exactly; extremal touches usually happen there
    t = np.concatenate([t, [np.pi]])
    inner = zfp(R * (1 - delta) * np.exp(1j * t))
    outer = zfp(R * (1 + delta) * np.exp(1j * t))
    m_in = membership(region, inner)
    m_out = membership(region, outer)
    bad_in = ~m_in.inside
    esc = ~m_out.inside
    inner_ok = not bad_in.any()
    escapes = bool(esc.any())
    return SharpnessReport(
        inner_ok and escapes, inner_ok, escapes, R, delta,
        complex(inner[bad_in][0]) if bad_in.any() else None,
        complex(outer[esc][0]) if escapes else None,
    )


def check_branch(theorem: str, which: str, param: float | None = None, delta: float = 1e-4) -> SharpnessReport:
    res = radius(theorem, which, param)
    _, zfp, region = witness(theorem, which, param)
    return sharpness_check(zfp, region, res.value, delta)


def true_radius(zfp: Callable, region: Region, samples: int = 1024, tol: float = 1e-10) -> float:
    """Largest r with zf'/f(|z| < r) inside ``region``, by bisection on the image circle.

    Independent of any disk lemma; used to diagnose non-sharp or over-claimed radii.
    """
    t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    t = np.concatenate([t, [np.pi]])

    def ok(r):
        return bool(membership(region, zfp(r * np.exp(1j * t))).inside.all())

    lo, hi = 0.0, 1.0 - 1e-12
    if ok(hi):
        return 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo
