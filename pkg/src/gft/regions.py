"""Image domains phi(D): membership by winding number, plus disk-in-domain lemmas."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .classes import K, MindaClass

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 4096
AMBIGUOUS_DIST = 1e-9
MAX_SAMPLES = 1 << 18
SQRT2 = math.sqrt(2.0)
E = math.e


class BoundaryAmbiguousError(ValueError):
    """The query point is within AMBIGUOUS_DIST of the sampled boundary."""


class LemmaDomainError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Region:
    name: str
    boundary: Callable | None = field(default=None, repr=False)
    fast_membership: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.boundary is None and self.fast_membership is None:
            raise ValueError("a region needs a boundary sampler or a closed-form predicate")
        if self.boundary is not None:
            ends = self.boundary(np.array([0.0, 2 * np.pi]))
            if abs(ends[0] - ends[1]) > 1e-9:
                raise ValueError(f"boundary of {self.name} does not close: {ends}")

    def sample(self, samples: int = DEFAULT_SAMPLES) -> np.ndarray:
        t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
        return self.boundary(t)


@dataclass
class Membership:
    inside: np.ndarray
    ambiguous: np.ndarray
    winding: np.ndarray | None
    disagreements: int = 0


def _winding_refined(region: Region, pts: np.ndarray, samples: int):
    """Winding numbers, doubling the sampling until two successive estimates agree."""
    n = samples
    w_lo, dist = _kernels.winding(region.sample(n), pts)
    w_lo = np.rint(w_lo)
    todo = np.arange(pts.size)
    wind = w_lo.copy()
    while todo.size and n < MAX_SAMPLES:
        n *= 2
        w_hi, d_hi = _kernels.winding(region.sample(n), pts[todo])
        w_hi = np.rint(w_hi)
        dist[todo] = np.minimum(dist[todo], d_hi)
        settled = w_hi == wind[todo]
        wind[todo] = w_hi
        todo = todo[~settled]
    if todo.size:
        log.warning("%s: winding did not stabilise for %d points at %d samples", region.name, todo.size, n)
    return wind, dist


def membership(region: Region, w, samples: int = DEFAULT_SAMPLES) -> Membership:
    pts = np.atleast_1d(np.asarray(w, dtype=np.complex128)).ravel()
    fast = None if region.fast_membership is None else np.asarray(region.fast_membership(pts), bool)
    if region.boundary is None:
        return Membership(fast, np.zeros(pts.size, bool), None)
    wind, dist = _winding_refined(region, pts, samples)
    inside = wind == 1
    ambiguous = dist < AMBIGUOUS_DIST
    disagree = 0
    if fast is not None:
        bad = (fast != inside) & ~ambiguous
        disagree = int(bad.sum())
        if disagree:
            log.warning("%s: winding and closed-form membership disagree at %d points, e.g. %s",
                        region.name, disagree, pts[bad][:3])
    return Membership(inside, ambiguous, wind, disagree)


def contains(region: Region, w: complex, samples: int = DEFAULT_SAMPLES) -> bool:
    m = membership(region, w, samples)
    if m.ambiguous[0]:
        raise BoundaryAmbiguousError(f"{w!r} lies within {AMBIGUOUS_DIST:g} of the boundary of {region.name}")
    return bool(m.inside[0])


def winding_number(region: Region, w: complex, samples: int = DEFAULT_SAMPLES) -> int:
    wind, _ = _winding_refined(region, np.atleast_1d(np.complex128(w)), samples)
    return int(wind[0])


# --------------------------------------------------------------------------
# closed-form predicates


def _in_exp(w):
    w = np.asarray(w, np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (w != 0) & (np.abs(np.log(w)) < 1)


def _in_rational(w):
    """Branch-free: w is inside iff one preimage of phi_R lies in the unit disk."""
    w = np.asarray(w, np.complex128)
    s = np.sqrt(w * w + 4 * w - 4)
    return np.minimum(np.abs(w + s), np.abs(w - s)) < 2 / K


def lemma_rr_principal(w):
    """``|w + sqrt(w^2 + 4w - 4)| < 2/k`` with numpy's principal square root."""
    w = np.asarray(w, np.complex128)
    return np.abs(w + np.sqrt(w * w + 4 * w - 4)) < 2 / K


def _in_lemniscate(w):
    w = np.asarray(w, np.complex128)
    return (np.abs(w * w - 1) < 1) & (w.real > 0)


def _in_lune(w):
    w = np.asarray(w, np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (w * w - 1) / (2 * w)
        return (w != 0) & (np.abs(z) < 1) & ((w - z).real > 0)


def _in_cardioid(w):
    w = np.asarray(w, np.complex128).ravel()
    # 2z^2/3 + 4z/3 + 1 - w = 0
    disc = np.sqrt(16 / 9 - 8 / 3 * (1 - w))
    z1 = (-4 / 3 + disc) / (4 / 3)
    z2 = (-4 / 3 - disc) / (4 / 3)
    return (np.abs(z1) < 1) | (np.abs(z2) < 1)


def _janowski_pred(A, B):
    def pred(w):
        w = np.asarray(w, np.complex128)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.abs((w - 1) / (A - B * w)) < 1

    return pred


def _booth_pred(alpha):
    def pred(w):
        # G(z) = w  <=>  alpha (w-1) z^2 + z - (w-1) = 0
        w = np.asarray(w, np.complex128).ravel()
        u = w - 1
        a = alpha * u
        disc = np.sqrt(1 + 4 * a * u)
        with np.errstate(divide="ignore", invalid="ignore"):
            z1 = np.where(a != 0, (-1 + disc) / (2 * a), u)
            z2 = np.where(a != 0, (-1 - disc) / (2 * a), np.inf)
        return (np.abs(z1) < 1) | (np.abs(z2) < 1)

    return pred


def exp_region() -> Region:
    return Region("exp", lambda t: np.exp(np.exp(1j * t)), _in_exp)


def rational_region() -> Region:
    return Region("phi_R", lambda t: 1 + (np.exp(1j * t) / K) * (K + np.exp(1j * t)) / (K - np.exp(1j * t)),
                  _in_rational)


def lemniscate_region() -> Region:
    return Region("lemniscate", lambda t: np.sqrt(1 + np.exp(1j * t)), _in_lemniscate)


def halfplane_region(beta: float) -> Region:
    return Region(f"Re w < {beta:g}", None, lambda w: np.asarray(w, np.complex128).real < beta)


_PREDICATES = {
    "se": lambda cls: _in_exp,
    "sr": lambda cls: _in_rational,
    "sl": lambda cls: _in_lemniscate,
    "sq": lambda cls: _in_lune,
    "sc": lambda cls: _in_cardioid,
    "s": lambda cls: _janowski_pred(1.0, -1.0),
    "s_alpha": lambda cls: _janowski_pred(1 - 2 * cls.params["alpha"], -1.0),
    "janowski": lambda cls: _janowski_pred(cls.params["A"], cls.params["B"]),
    "bs": lambda cls: _booth_pred(cls.params["alpha"]),
}


def unbounded_image(cls: MindaClass) -> bool:
    if cls.builtin in ("s", "s_alpha"):
        return True
    if cls.builtin == "janowski":
        return cls.params["B"] == -1
    return cls.builtin == "bs" and cls.params["alpha"] == 1


def class_region(cls: MindaClass) -> Region:
    """phi(D); classes whose phi has a pole on the unit circle get the predicate only."""
    pred = _PREDICATES.get(cls.builtin)
    pred = pred(cls) if pred else None
    if unbounded_image(cls):
        if pred is None:
            raise ValueError(f"{cls.name}: unbounded image and no closed-form membership")
        return Region(cls.name, None, pred)
    return Region(cls.name, cls.boundary, pred)


# --------------------------------------------------------------------------
# disks centred on the real axis that fit inside the domain


def disk_radius_phiR(a: float) -> float:
    lo = 2 * (SQRT2 - 1)
    if not (lo < a < 2):
        raise LemmaDomainError(f"centre {a!r} outside (2(sqrt2-1), 2)")
    return a - lo if a <= SQRT2 else 2 - a


def disk_radius_exp(a: float) -> float:
    if not (1 / E < a < E):
        raise LemmaDomainError(f"centre {a!r} outside (1/e, e)")
    return a - 1 / E if a <= (E + 1 / E) / 2 else E - a


def disk_radius_lemniscate(a: float) -> float:
    """Right branch only: centres in [1, sqrt 2)."""
    if not (1 <= a < SQRT2):
        raise LemmaDomainError(f"centre {a!r} outside [1, sqrt2)")
    return SQRT2 - a


def disk_radius_halfplane(a: float, beta: float) -> float:
    if not a < beta:
        raise LemmaDomainError(f"centre {a!r} not left of Re w = {beta!r}")
    return beta - a


DISK_LEMMAS = {
    "phiR": disk_radius_phiR,
    "exp": disk_radius_exp,
    "lemniscate": disk_radius_lemniscate,
}
