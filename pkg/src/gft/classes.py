"""Ma-Minda class catalog and the coefficient maps.

A class ``S*(phi)`` is identified by the superordinate function ``phi``.  The
maps here take Taylor data of ``phi`` (``B1..B4``) and Caratheodory
coefficients ``c1..c4`` of ``p = (1 + w)/(1 - w)`` to the direct coefficients
``a2..a5`` of ``f`` and the coefficients ``A2..A5`` of ``f^{-1}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from . import series as S
from .series import Series

K = math.sqrt(2.0) + 1.0  # phi_R parameter; note 1/K = sqrt(2) - 1


class ClassParameterError(ValueError):
    pass


class CaratheodoryDomainError(ValueError):
    pass


# --------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    c1: complex
    c2: complex
    c3: complex
    c4: complex = 0j

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4], dtype=np.complex128)

    def check(self, tol: float = 1e-12) -> None:
        if np.any(np.abs(self.as_array()) > 2 + tol):
            raise CaratheodoryDomainError(f"|c_n| > 2 in {self}")


@dataclass(frozen=True)
class SchwarzSpec:
    """``w(z) = epsilon * z**power``."""

    epsilon: complex = 1.0
    power: int = 1

    def __post_init__(self):
        if abs(abs(self.epsilon) - 1.0) > 1e-12:
            raise ValueError(f"|epsilon| must be 1, got {abs(self.epsilon)!r}")
        if int(self.power) != self.power or self.power < 1:
            raise ValueError(f"Schwarz power must be an integer >= 1, got {self.power!r}")


@dataclass(frozen=True)
class HerglotzAtoms:
    """Point masses of the Herglotz measure: ``p = sum w_j (1+e^{it_j}z)/(1-e^{it_j}z)``."""

    weights: tuple
    angles: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != np.asarray(self.angles, dtype=float).shape or w.ndim != 1 or w.size == 0:
            raise CaratheodoryDomainError("weights and angles must be equal-length 1-d sequences")
        if np.any(w < 0):
            raise CaratheodoryDomainError("negative Herglotz weight")
        if abs(w.sum() - 1.0) > 1e-12:
            raise CaratheodoryDomainError(f"weights sum to {w.sum()!r}, not 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple]) -> "HerglotzAtoms":
        return cls(tuple(float(w) for w, _ in pairs), tuple(float(t) for _, t in pairs))

    def moments(self, count: int) -> np.ndarray:
        """``c_n = 2 sum_j w_j e^{i n t_j}`` for ``n = 1..count``."""
        w = np.asarray(self.weights)
        t = np.asarray(self.angles)
        n = np.arange(1, count + 1)[:, None]
        return 2.0 * (w[None, :] * np.exp(1j * n * t[None, :])).sum(axis=1)


@dataclass(frozen=True, eq=False)
class MindaClass:
    name: str
    B: tuple
    phi_factory: Callable[[int], Series] = field(repr=False)
    phi_func: Callable | None = field(default=None, repr=False)
    params: Mapping[str, float] = field(default_factory=dict)
    builtin: str | None = None

    def __post_init__(self):
        if len(self.B) != 4:
            raise ClassParameterError("exactly four Taylor coefficients B1..B4 are required")
        if not self.B[0] > 0:
            raise ClassParameterError(f"B1 must be positive, got {self.B[0]!r}")
        s = self.phi_series(6)
        if abs(s[0] - 1) > 1e-12 or np.max(np.abs(s.coeffs[1:5] - np.asarray(self.B))) > 1e-12:
            raise ClassParameterError(f"phi series of {self.name} disagrees with B={self.B}")

    def phi_series(self, order: int = S.DEFAULT_ORDER) -> Series:
        return self.phi_factory(order)

    def phi(self, z):
        """Evaluate phi at ``z`` (closed form when known, else the truncated series)."""
        if self.phi_func is not None:
            return self.phi_func(np.asarray(z, dtype=np.complex128))
        return self.phi_series(32)(z)

    def boundary(self, t):
        """``phi(e^{it})``."""
        return self.phi(np.exp(1j * np.asarray(t, dtype=float)))

    def descriptor(self) -> dict:
        d = {"name": self.name, "B": [float(b) for b in self.B], "params": dict(self.params)}
        if self.builtin:
            d["builtin"] = self.builtin
        return d


# --------------------------------------------------------------------------
# coefficient maps


def _b4(B):
    B = tuple(B) + (0.0,) * (4 - len(B))
    return tuple(float(b) for b in B[:4])


def _c4(c):
    if isinstance(c, CaratheodoryCoeffs):
        return c.c1, c.c2, c.c3, c.c4
    c = tuple(c) + (0,) * (4 - len(c))
    return tuple(complex(x) for x in c[:4])


def direct_coeffs(B, c):
    """``(a2, a3, a4, a5)`` of f in S*(phi) in terms of phi's B's and p's c's."""
    B1, B2, B3, B4 = _b4(B)
    if not B1 > 0:
        raise ClassParameterError("B1 must be positive")
    c1, c2, c3, c4 = _c4(c)
    a2 = 0.5 * B1 * c1
    a3 = ((B1**2 - B1 + B2) * c1**2 + 2 * B1 * c2) / 8
    a4 = (
        (B1**3 - 3 * B1**2 + 3 * B1 * B2 + 2 * B1 - 4 * B2 + 2 * B3) * c1**3
        + 2 * (3 * B1**2 - 4 * B1 + 4 * B2) * c1 * c2
        + 8 * B1 * c3
    ) / 48
    a5 = (
        (
            B1**4 - 6 * B1**3 + 6 * B1**2 * B2 + 11 * B1**2 - 22 * B1 * B2
            + 3 * B2**2 + 8 * B1 * B3 - 6 * B1 + 18 * B2 - 18 * B3 + 6 * B4
        ) * c1**4
        + 4 * (3 * B1**3 - 11 * B1**2 + 11 * B1 * B2 + 9 * B1 - 18 * B2 + 9 * B3) * c1**2 * c2
        + 12 * (B1**2 - 2 * B1 + 2 * B2) * c2**2
        + 16 * (2 * B1**2 - 3 * B1 + 3 * B2) * c1 * c3
        + 48 * B1 * c4
    ) / 384
    return a2, a3, a4, a5


def inverse_from_direct(a2, a3, a4, a5):
    """Coefficients of ``f^{-1}`` from those of ``f``."""
    A2 = -a2
    A3 = 2 * a2**2 - a3
    A4 = -5 * a2**3 + 5 * a2 * a3 - a4
    A5 = 14 * a2**4 - 21 * a2**2 * a3 + 6 * a2 * a4 + 3 * a3**2 - a5
    return A2, A3, A4, A5


def inverse_coeffs(B, c):
    """``(A2, A3, A4, A5)`` directly from ``B`` and ``c``."""
    B1, B2, B3, B4 = _b4(B)
    if not B1 > 0:
        raise ClassParameterError("B1 must be positive")
    c1, c2, c3, c4 = _c4(c)
    A2 = -0.5 * B1 * c1
    A3 = ((3 * B1**2 + B1 - B2) * c1**2 - 2 * B1 * c2) / 8
    A4 = (
        (-8 * B1**3 - 6 * B1**2 - B1 + 2 * B2 + 6 * B1 * B2 - B3) * c1**3
        + 4 * (3 * B1**2 + B1 - B2) * c1 * c2
        - 4 * B1 * c3
    ) / 24
    A5 = (
        (
            125 * B1**4 + 150 * B1**3 + 55 * B1**2 + 6 * B1 + 15 * B2**2 - 18 * B2
            - 150 * B1**2 * B2 - 110 * B1 * B2 + 18 * B3 + 40 * B1 * B3 - 6 * B4
        ) * c1**4
        + 4 * (-75 * B1**3 - 55 * B1**2 - 9 * B1 + 18 * B2 + 55 * B1 * B2 - 9 * B3) * c1**2 * c2
        + 12 * (5 * B1**2 + 2 * B1 - 2 * B2) * c2**2
        + 16 * (10 * B1**2 + 3 * B1 - 3 * B2) * c1 * c3
        - 48 * B1 * c4
    ) / 384
    return A2, A3, A4, A5


def lz_lift(c1: float, gamma: complex, z: complex) -> CaratheodoryCoeffs:
    """Libera-Zlotkiewicz form of ``(c1, c2, c3)`` for real ``c1`` in [0, 2]."""
    c1 = float(np.real(c1))
    gamma = complex(gamma)
    z = complex(z)
    if not (0.0 <= c1 <= 2.0):
        raise CaratheodoryDomainError(f"c1 = {c1!r} outside [0, 2]")
    if abs(gamma) > 1 + 1e-12 or abs(z) > 1 + 1e-12:
        raise CaratheodoryDomainError("|gamma| and |z| must not exceed 1")
    t = 4.0 - c1 * c1
    c2 = (c1 * c1 + gamma * t) / 2
    c3 = (c1**3 + 2 * c1 * t * gamma - c1 * t * gamma**2 + 2 * t * (1 - abs(gamma) ** 2) * z) / 4
    return CaratheodoryCoeffs(c1, c2, c3, 0j)


def herglotz_coeffs(atoms: HerglotzAtoms) -> CaratheodoryCoeffs:
    return CaratheodoryCoeffs(*atoms.moments(4))


def caratheodory_series(c, order: int) -> Series:
    """``p(z) = 1 + sum c_n z^n`` from any number of coefficients."""
    return Series.from_coeffs([1.0, *np.asarray(c, dtype=np.complex128)], order)


def coeffs_from_caratheodory(phi_series: Series, c) -> Series:
    """Series of f for ``zf'/f = phi((p-1)/(p+1))``, any truncation order.

    The general-order route; :func:`direct_coeffs` is the closed form for
    ``a2..a5`` and must agree with this one.
    """
    n = phi_series.order
    p = caratheodory_series(c, n)
    w = (p - 1.0) / (p + 1.0)
    zfp_over_f = S.compose(phi_series, w)
    return S.shift(S.exp(S.integrate_pminus1_over_t(zfp_over_f)))


def generate_function(phi: MindaClass, w: SchwarzSpec = SchwarzSpec(), order: int = S.DEFAULT_ORDER) -> Series:
    """Series of ``f(z) = z exp(int_0^z (phi(eps t^m) - 1)/t dt)``.

    This f satisfies ``zf'/f = phi(eps z^m)``.  The exponential is taken at
    order N and shifted, so the result is exact through ``z^N``.
    """
    inner = S.Series.monomial(w.power, w.epsilon, order)
    composed = S.compose(phi.phi_series(order), inner)
    return S.shift(S.exp(S.integrate_pminus1_over_t(composed)))


def extremal_caratheodory(w: SchwarzSpec) -> CaratheodoryCoeffs:
    """c's of ``p = (1 + eps z^m)/(1 - eps z^m)``, the p paired with ``phi(eps z^m)``."""
    c = np.zeros(4, dtype=np.complex128)
    for j in range(1, 5):
        if j % w.power == 0:
            c[j - 1] = 2 * w.epsilon ** (j // w.power)
    return CaratheodoryCoeffs(*c)


def series_coeffs(f: Series, upto: int = 5):
    """``(a2, .., a_upto)`` of a normalized series."""
    return tuple(complex(f[n]) for n in range(2, upto + 1))


# --------------------------------------------------------------------------
# built-in catalog


def _phi_rational(order):
    z = Series.identity(order)
    return 1.0 + (z / K) * (K + z) / (K - z)


def _phi_exp(order):
    return S.exp(Series.identity(order))


def _phi_sqrt(order):
    return S.power(1.0 + Series.identity(order), 0.5)


def _phi_lune(order):
    z = Series.identity(order)
    return z + S.power(1.0 + z * z, 0.5)


def _phi_cardioid(order):
    return Series.from_coeffs([1, 4 / 3, 2 / 3], order)


def _janowski_factory(A, B):
    def make(order):
        z = Series.identity(order)
        return (1.0 + A * z) / (1.0 + B * z)

    return make


def _g_alpha_factory(alpha):
    def make(order):
        z = Series.identity(order)
        return 1.0 + z / (1.0 - alpha * z * z)

    return make


def _janowski_B(A, B):
    return tuple((A - B) * (-B) ** (n - 1) for n in range(1, 5))


def rational_class() -> MindaClass:
    return MindaClass(
        "S*_R", (1 / K, 2 / K**2, 2 / K**3, 2 / K**4), _phi_rational,
        lambda z: 1 + (z / K) * (K + z) / (K - z), builtin="sr",
    )


def exponential_class() -> MindaClass:
    return MindaClass("S*_e", (1.0, 0.5, 1 / 6, 1 / 24), _phi_exp, np.exp, builtin="se")


def lemniscate_class() -> MindaClass:
    return MindaClass(
        "S*_L", (0.5, -1 / 8, 1 / 16, -5 / 128), _phi_sqrt, lambda z: np.sqrt(1 + z), builtin="sl"
    )


def lune_class() -> MindaClass:
    return MindaClass(
        "S*_q", (1.0, 0.5, 0.0, -1 / 8), _phi_lune, lambda z: z + np.sqrt(1 + z * z), builtin="sq"
    )


def cardioid_class() -> MindaClass:
    return MindaClass(
        "S*_C", (4 / 3, 2 / 3, 0.0, 0.0), _phi_cardioid,
        lambda z: 1 + 4 * z / 3 + 2 * z * z / 3, builtin="sc",
    )


def janowski_class(A: float, B: float) -> MindaClass:
    if not (-1 <= B < A <= 1):
        raise ClassParameterError(f"Janowski parameters need -1 <= B < A <= 1, got A={A}, B={B}")
    return MindaClass(
        f"S*[{A:g},{B:g}]", _janowski_B(A, B), _janowski_factory(A, B),
        lambda z: (1 + A * z) / (1 + B * z), {"A": A, "B": B}, builtin="janowski",
    )


def starlike_order_class(alpha: float = 0.0) -> MindaClass:
    if not (0 <= alpha < 1):
        raise ClassParameterError(f"order alpha must satisfy 0 <= alpha < 1, got {alpha}")
    cls = janowski_class(1 - 2 * alpha, -1.0)
    name = "S*" if alpha == 0 else f"S*({alpha:g})"
    return MindaClass(name, cls.B, cls.phi_factory, cls.phi_func, {"alpha": alpha},
                      builtin="s" if alpha == 0 else "s_alpha")


def booth_class(alpha: float) -> MindaClass:
    """``BS*(alpha)`` with ``G_alpha(z) = 1 + z/(1 - alpha z^2)``."""
    if not (0 < alpha <= 1):
        raise ClassParameterError(f"alpha must satisfy 0 < alpha <= 1, got {alpha}")
    return MindaClass(
        f"BS*({alpha:g})", (1.0, 0.0, alpha, 0.0), _g_alpha_factory(alpha),
        lambda z: 1 + z / (1 - alpha * z * z), {"alpha": alpha}, builtin="bs",
    )


def polynomial_class(name: str, B: Sequence[float], params=None) -> MindaClass:
    """Custom class known only through ``B1..B4``; phi is the quartic polynomial."""
    B = tuple(float(b) for b in B)
    coeffs = (1.0, *B)
    return MindaClass(
        name, B, lambda order: Series.from_coeffs(coeffs, order), None, dict(params or {})
    )


BUILTINS = {
    "s": lambda p: starlike_order_class(0.0),
    "s_alpha": lambda p: starlike_order_class(p.get("alpha", 0.0)),
    "janowski": lambda p: janowski_class(p["A"], p["B"]),
    "sl": lambda p: lemniscate_class(),
    "se": lambda p: exponential_class(),
    "sr": lambda p: rational_class(),
    "sq": lambda p: lune_class(),
    "sc": lambda p: cardioid_class(),
    "bs": lambda p: booth_class(p.get("alpha", 0.5)),
}


def get_class(class_id: str, **params) -> MindaClass:
    try:
        factory = BUILTINS[class_id]
    except KeyError:
        raise KeyError(f"unknown class {class_id!r}; built-ins: {sorted(BUILTINS)}") from None
    return factory(params)


def from_descriptor(desc: Mapping) -> MindaClass:
    """Build a class from ``{"name", "B", "builtin"?, "params"?}``."""
    params = dict(desc.get("params") or {})
    if desc.get("builtin"):
        cls = get_class(desc["builtin"], **params)
        if "B" in desc and not np.allclose(cls.B, desc["B"], atol=1e-12):
            raise ClassParameterError(f"descriptor B={desc['B']} disagrees with built-in {cls.B}")
        return cls
    if "B" not in desc:
        raise ClassParameterError("descriptor needs 'B' or 'builtin'")
    return polynomial_class(desc.get("name", "custom"), desc["B"], params)


def load_descriptor(path) -> MindaClass:
    return from_descriptor(json.loads(Path(path).read_text()))
