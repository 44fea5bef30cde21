"""Coefficient, Hankel-determinant and radius bounds for Ma-Minda starlike classes.

Submodules: ``series`` (truncated power series), ``classes`` (S*(phi) and the
coefficient maps), ``bounds``, ``regions``, ``radii``, ``oracle`` (numerical
maximization) and ``cli``.
"""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"
