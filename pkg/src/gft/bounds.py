"""Closed-form coefficient bounds with branch provenance."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.optimize import minimize_scalar

from .classes import K, exponential_class, rational_class

SQRT2 = math.sqrt(2.0)


class BoundDomainError(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    quantity: str
    value: float
    case_id: str
    inputs: Mapping = field(default_factory=dict)
    sharp: bool = False
    status: str = "theorem"

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"bound value must be non-negative, got {self.value!r}")

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": float(self.value),
            "case_id": self.case_id,
            "inputs": {k: _jsonable(v) for k, v in self.inputs.items()},
            "sharp": self.sharp,
            "status": self.status,
        }


def _jsonable(v):
    if isinstance(v, complex):
        return v.real if v.imag == 0 else [v.real, v.imag]
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def caratheodory_fs(nu: complex) -> float:
    """Sharp bound of ``|c2 - nu c1^2 / 2|`` over the Caratheodory class."""
    return 2.0 * max(1.0, abs(complex(nu) - 1.0))


def fs_inverse_bound(B1: float, B2: float, mu: complex = 0.0) -> BoundReport:
    """Bound on ``|A3 - mu A2^2|`` for f in S*(phi)."""
    if not B1 > 0:
        raise BoundDomainError(f"B1 must be positive, got {B1!r}")
    nu = ((3 - 2 * complex(mu)) * B1**2 + B1 - B2) / B1
    spread = abs(nu - 1)
    case = "plateau" if spread <= 1 else "slope"
    return BoundReport(
        "|A3 - mu A2^2|", B1 / 2 * max(1.0, spread), case,
        {"B1": B1, "B2": B2, "mu": complex(mu), "nu": nu}, sharp=True,
    )


def a2_inverse_bound(B1: float) -> BoundReport:
    if not B1 > 0:
        raise BoundDomainError(f"B1 must be positive, got {B1!r}")
    return BoundReport("|A2|", B1, "direct", {"B1": B1}, sharp=True)


def a3_inverse_bound(B1: float, B2: float) -> BoundReport:
    r = fs_inverse_bound(B1, B2, 0.0)
    return BoundReport("|A3|", r.value, r.case_id, r.inputs, sharp=True)


def quad_max_on_interval(P: float, Q: float, R: float):
    """Maximum of ``P t^2 + Q t + R`` over ``0 <= t <= 4`` and which branch gave it."""
    if Q <= 0 and P <= -Q / 4:
        return R, "case1"
    if (Q >= 0 and P >= -Q / 8) or (Q <= 0 and P >= -Q / 4):
        return 16 * P + 4 * Q + R, "case2"
    # remaining region: Q > 0 and P < -Q/8 < 0, vertex inside [0, 4]
    return (4 * P * R - Q * Q) / (4 * P), "case3"


def hankel_pqr(B1: float, B2: float, B3: float):
    X = abs(5 * B1**3 - 3 * B2**2 / B1 + 4 * B3 - 6 * B1 * B2)
    Y = abs(3 * B1**2 - B2)
    return X - 2 * Y - B1, 8 * (Y - B1), 48 * B1


def _hankel_displayed(B1, B2, B3, case_id):
    """The three case formulas as stated for the theorem itself."""
    X = abs(5 * B1**4 - 6 * B1**2 * B2 - 3 * B2**2 + 4 * B1 * B3)
    Y = abs(3 * B1**2 - B2)
    if case_id == "case1":
        return B1**2 / 4
    if case_id == "case2":
        return X / 12
    return B1**2 / 12 * (3 * X - 4 * B1 * Y - Y**2 - 4 * B1**2) / (X - 2 * B1 * Y - B1**2)


def hankel2_inverse_bound(B1: float, B2: float, B3: float, crosscheck_tol: float = 1e-12) -> BoundReport:
    """Bound on ``|A2 A4 - A3^2|`` for f in S*(phi)."""
    if not B1 > 0:
        raise BoundDomainError(f"B1 must be positive, got {B1!r}")
    P, Q, R = hankel_pqr(B1, B2, B3)
    qmax, case = quad_max_on_interval(P, Q, R)
    value = B1 / 192 * qmax
    shown = _hankel_displayed(B1, B2, B3, case)
    if abs(shown - value) > crosscheck_tol * max(1.0, abs(value)):
        raise ArithmeticError(f"{case}: quadratic max {value!r} != case formula {shown!r}")
    return BoundReport(
        "|A2 A4 - A3^2|", value, case, {"B1": B1, "B2": B2, "B3": B3, "P": P, "Q": Q, "R": R}
    )


_EXP = (1.0, 5 / 4, 31 / 18, 361 / 144)
_RAT = (SQRT2 - 1, (SQRT2 - 1) / 2, (SQRT2 - 1) / 3, 69 / SQRT2 - 387 / 8)


def class_inverse_bounds(class_id: str) -> list[BoundReport]:
    """``|A2|..|A5|`` bounds for S*_e ('se') and S*_R ('sr')."""
    if class_id in ("se", "S*_e"):
        B = exponential_class().B
        return [
            BoundReport(f"|A{n}|", v, "thm-exp", {"class": "se", "B": B}, sharp=True)
            for n, v in zip(range(2, 6), _EXP)
        ]
    if class_id in ("sr", "S*_R"):
        B = rational_class().B
        return [
            BoundReport(f"|A{n}|", v, "thm-rational", {"class": "sr", "B": B}, sharp=n < 5)
            for n, v in zip(range(2, 6), _RAT)
        ]
    raise NotImplementedError(f"inverse coefficient bounds are available for 'se' and 'sr', not {class_id!r}")


# --------------------------------------------------------------------------
# S*_R direct-coefficient results


def sr_fekete_szego(mu: complex) -> BoundReport:
    spread = abs(2 * complex(mu) - 3) / K
    return BoundReport(
        "|a3 - mu a2^2|", max(1.0, spread) / (2 * K),
        "plateau" if spread <= 1 else "slope", {"class": "sr", "mu": complex(mu)},
    )


def th2_G(c, k: float = K):
    c = np.asarray(c, dtype=float)
    t = 4 - c * c
    return (c**3 + 4 * k * t * c + k * k * t * c + 2 * k * k * t) / (24 * k**3)


def th2_closed_form() -> float:
    num = 5220 + 3683 * SQRT2 + 359 * math.sqrt(359 + 246 * SQRT2) + 246 * math.sqrt(718 + 492 * SQRT2)
    return num / (1458 * (1 + SQRT2) ** 5)


def _zeta_eta(k: float = K):
    zeta = math.sqrt(-12 * k + 45 * k**2 + 24 * k**3 + 4 * k**4)
    eta = -1 + 4 * k + k**2
    return zeta, eta


def th2_critical_form() -> float:
    """G at its critical point, in the (zeta, eta) form."""
    k = K
    zeta, eta = _zeta_eta(k)
    num = (144 * k**4 + 16 * k**5 - 24 * zeta + 12 * k**2 * (-15 + 4 * zeta)
           + k**3 * (243 + 8 * zeta) + 9 * k * (3 + 10 * zeta))
    return num / (81 * k**2 * eta**2)


def th2_argmax() -> float:
    zeta, eta = _zeta_eta()
    return 2 * (-K**2 + zeta) / (3 * eta)


def th2_numeric_max(grid: int = 20001):
    """Maximize G on [0, 2]: dense grid, then bounded Brent around the best node."""
    cs = np.linspace(0.0, 2.0, grid)
    i = int(np.argmax(th2_G(cs)))
    lo, hi = cs[max(i - 1, 0)], cs[min(i + 1, grid - 1)]
    res = minimize_scalar(lambda c: -float(th2_G(c)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    return float(-res.fun), float(res.x)


def sr_direct_bounds(mu: complex = 0.0) -> list[BoundReport]:
    numeric, _ = th2_numeric_max()
    closed = th2_closed_form()
    if abs(numeric - closed) > 1e-6:
        raise ArithmeticError(f"|a2a3 - a4| closed form {closed!r} vs numeric {numeric!r}")
    return [
        sr_fekete_szego(mu),
        BoundReport("|a2|", 1 / K, "fs-special", {"class": "sr"}),
        BoundReport("|a3|", 3 / (2 * K**2), "fs-special", {"class": "sr"}),
        BoundReport("|a2 a4 - a3^2|", 1 / (4 * K**2), "hankel2-direct", {"class": "sr"}, sharp=True),
        BoundReport("|a2 a3 - a4|", closed, "G-max", {"class": "sr", "numeric": numeric}),
    ]


def conj_an_bound(n: int) -> float:
    s = sum((-1) ** p * (n - p) / math.factorial(p) for p in range(n))
    return s / K ** (n - 1)


def h3_conjecture_value() -> float:
    k = K
    zeta, eta = _zeta_eta(k)
    inner = (144 * k**4 + 16 * k**5 - 24 * zeta + 12 * k**2 * (-15 + 4 * zeta)
             + k**3 * (243 + 8 * zeta) + 9 * k * (3 + 10 * zeta))
    return (4293 + 1458 * k + 88 * inner / eta**2) / (3888 * k**5)


def h3_triangle_value() -> float:
    """The same bound assembled term by term from its ingredients.

    ``|H3| <= |a3||a2a4 - a3^2| + |a4||a2a3 - a4| + |a5||a3 - a2^2|``.
    """
    k = K
    a3, a4, a5 = 3 / (2 * k**2), conj_an_bound(4), conj_an_bound(5)
    fs1 = sr_fekete_szego(1.0).value
    return a3 / (4 * k**2) + a4 * th2_critical_form() + a5 * fs1


def sr_conjectures(nmax: int = 8):
    an = [
        BoundReport(f"|a{n}|", conj_an_bound(n), "conjecture", {"class": "sr", "n": n},
                    status="conjecture")
        for n in range(2, nmax + 1)
    ]
    h3 = BoundReport("|H3(1)|", h3_conjecture_value(), "conjecture", {"class": "sr"},
                     status="conjecture")
    return an, h3
