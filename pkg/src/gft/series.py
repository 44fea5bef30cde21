"""Truncated power series with complex coefficients.

A :class:`Series` holds ``c_0 .. c_N`` of an analytic germ at the origin.
Every operation returns a series of the same truncation order; nothing is
ever extrapolated past ``N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER = 8


class SeriesError(ValueError):
    """Base class for series-domain failures."""


class SingularSeriesError(SeriesError):
    pass


class CompositionDomainError(SeriesError):
    pass


class NonInvertibleError(SeriesError):
    pass


@dataclass(frozen=True, eq=False)
class Series:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size < 2:
            raise ValueError("truncation order must be at least 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], order: int = DEFAULT_ORDER) -> "Series":
        """Pad or cut ``coeffs`` to exactly ``order + 1`` entries."""
        c = np.zeros(order + 1, dtype=np.complex128)
        vals = np.asarray(list(coeffs), dtype=np.complex128)[: order + 1]
        c[: vals.size] = vals
        return cls(c)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "Series":
        return cls.from_coeffs([value], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def monomial(cls, power: int, scale: complex = 1.0, order: int = DEFAULT_ORDER) -> "Series":
        c = np.zeros(order + 1, dtype=np.complex128)
        if power <= order:
            c[power] = scale
        return cls(c)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        terms = ", ".join(f"{complex(v):.6g}" for v in self.coeffs)
        return f"Series([{terms}], order={self.order})"

    def truncate(self, order: int) -> "Series":
        return Series.from_coeffs(self.coeffs, order)

    def allclose(self, other: "Series", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        return self.order == other.order and np.allclose(
            self.coeffs, other.coeffs, atol=atol, rtol=rtol
        )

    def __call__(self, z):
        """Evaluate the truncated polynomial (Horner)."""
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out

    def derivative(self) -> "Series":
        n = np.arange(1, self.order + 1)
        return Series.from_coeffs(self.coeffs[1:] * n, self.order)

    # operators delegate to the module functions so the checks live in one place
    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self.order))

    def __rsub__(self, other):
        return sub(_coerce(other, self.order), self)

    def __mul__(self, other):
        if np.isscalar(other):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return scale(self, 1.0 / other)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_coerce(other, self.order), self)

    def __neg__(self):
        return scale(self, -1.0)


def _coerce(x, order: int) -> Series:
    if isinstance(x, Series):
        return x
    return Series.constant(x, order)


def _check_orders(a: Series, b: Series) -> None:
    if a.order != b.order:
        raise ValueError(f"truncation orders differ: {a.order} vs {b.order}")


def add(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    return Series(a.coeffs + b.coeffs)


def sub(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    return Series(a.coeffs - b.coeffs)


def scale(a: Series, factor: complex) -> Series:
    return Series(a.coeffs * factor)


def mul(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    return Series(np.convolve(a.coeffs, b.coeffs)[: a.order + 1])


def div(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise SingularSeriesError("division by a series with zero constant term")
    n = a.order
    q = np.zeros(n + 1, dtype=np.complex128)
    for i in range(n + 1):
        q[i] = (a.coeffs[i] - np.dot(q[:i], b.coeffs[i:0:-1])) / b0
    return Series(q)


def arithmetic(a: Series, b, kind: str) -> Series:
    """Dispatch ``kind`` in {add, sub, mul, div, scale}; ``b`` is a scalar for scale."""
    if kind == "scale":
        return scale(a, b)
    ops = {"add": add, "sub": sub, "mul": mul, "div": div}
    try:
        op = ops[kind]
    except KeyError:
        raise ValueError(f"unknown arithmetic kind {kind!r}") from None
    return op(a, b)


def compose(outer: Series, inner: Series) -> Series:
    """Coefficients of ``outer(inner(z))``; ``inner`` must vanish at 0."""
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise CompositionDomainError("inner series must have zero constant term")
    n = outer.order
    acc = np.zeros(n + 1, dtype=np.complex128)
    for c in outer.coeffs[::-1]:
        acc = np.convolve(acc, inner.coeffs)[: n + 1]
        acc[0] += c
    return Series(acc)


def exp(a: Series) -> Series:
    if a.coeffs[0] != 0:
        raise SeriesError("exp needs a series with zero constant term")
    n = a.order
    k = np.arange(n + 1)
    ka = k * a.coeffs
    g = np.zeros(n + 1, dtype=np.complex128)
    g[0] = 1.0
    # n g_n = sum_{j=1}^n j a_j g_{n-j}
    for m in range(1, n + 1):
        g[m] = np.dot(ka[1 : m + 1], g[m - 1 :: -1][:m]) / m
    return Series(g)


def log(a: Series) -> Series:
    if a.coeffs[0] != 1:
        raise SeriesError("log needs a series with constant term 1")
    n = a.order
    c = a.coeffs
    ell = np.zeros(n + 1, dtype=np.complex128)
    kl = np.zeros(n + 1, dtype=np.complex128)
    for m in range(1, n + 1):
        s = np.dot(kl[1:m], c[m - 1 : 0 : -1])
        kl[m] = m * c[m] - s
        ell[m] = kl[m] / m
    return Series(ell)


def exp_log(a: Series, kind: str) -> Series:
    if kind == "exp":
        return exp(a)
    if kind == "log":
        return log(a)
    raise ValueError(f"kind must be 'exp' or 'log', got {kind!r}")


def power(a: Series, exponent: float) -> Series:
    """``a**exponent`` for a series with constant term 1 (principal branch)."""
    return exp(scale(log(a), exponent))


def integrate_pminus1_over_t(p: Series) -> Series:
    """Series of ``int_0^z (p(t) - 1)/t dt``."""
    if p.coeffs[0] != 1:
        raise SeriesError("integrand series must have constant term 1")
    out = np.zeros_like(p.coeffs)
    n = np.arange(1, p.order + 1)
    out[1:] = p.coeffs[1:] / n
    return Series(out)


def shift(a: Series, k: int = 1) -> Series:
    """Multiply by ``z**k`` (top ``k`` coefficients fall off)."""
    out = np.zeros_like(a.coeffs)
    out[k:] = a.coeffs[: a.order + 1 - k]
    return Series(out)


def revert(f: Series) -> Series:
    """Compositional inverse ``g`` with ``f(g(w)) = w`` through order N.

    Triangular back-substitution: the coefficient of ``w**n`` in ``f(g)`` is
    ``f_1 g_n`` plus terms in ``g_1 .. g_{n-1}`` only.
    """
    if f.coeffs[0] != 0:
        raise NonInvertibleError("series must vanish at the origin")
    f1 = f.coeffs[1]
    if f1 == 0:
        raise NonInvertibleError("zero linear coefficient")
    n = f.order
    g = np.zeros(n + 1, dtype=np.complex128)
    g[1] = 1.0 / f1
    for m in range(2, n + 1):
        partial = compose(f.truncate(m), Series(g[: m + 1]))
        g[m] = -partial.coeffs[m] / f1
    return Series(g)


def from_values(values: Iterable[complex], order: int = DEFAULT_ORDER) -> Series:
    return Series.from_coeffs(list(values), order)
