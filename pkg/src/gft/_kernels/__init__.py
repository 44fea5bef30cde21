"""Hot loops of the oracle and the region tests.

Two interchangeable backends: numba-compiled scalar loops, and vectorized
numpy.  ``GFT_KERNELS=numpy`` forces the numpy path, ``GFT_KERNELS=numba``
requires numba, and the default picks numba when it imports.
"""
import importlib
import os

import numpy as np

from . import _numpy
from ._ids import *  # noqa: F401,F403

_choice = os.environ.get("GFT_KERNELS", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ImportError(f"GFT_KERNELS must be auto, numba or numpy, got {_choice!r}")

_numba = None
if _choice != "numpy":
    try:
        _numba = importlib.import_module("._numba", __name__)
    except ImportError:
        if _choice == "numba":
            raise

BACKEND = "numba" if _numba is not None else "numpy"


def get_backend(name=None):
    """The kernel module for ``name`` (default: the active backend)."""
    name = name or BACKEND
    if name == "numba":
        if _numba is None:
            raise ImportError("numba backend unavailable")
        return _numba
    if name == "numpy":
        return _numpy
    raise ValueError(f"unknown backend {name!r}")


def evaluate(x, kind, J, phi, fid, mu=0j, n=2, backend=None):
    k = get_backend(backend)
    return k.evaluate(np.ascontiguousarray(x, np.float64), int(kind), int(J),
                      np.ascontiguousarray(phi, np.complex128), int(fid), complex(mu), int(n))


def descend(x0, kind, J, phi, fid, mu=0j, n=2, iterations=2000, step0=0.5, tol=1e-10, backend=None):
    k = get_backend(backend)
    return k.descend(np.ascontiguousarray(x0, np.float64), int(kind), int(J),
                     np.ascontiguousarray(phi, np.complex128), int(fid), complex(mu), int(n),
                     int(iterations), float(step0), float(tol))


def coeffs_from_c(c, phi, backend=None):
    k = get_backend(backend)
    return k.coeffs_from_c(np.ascontiguousarray(c, np.complex128),
                           np.ascontiguousarray(phi, np.complex128))


def winding(boundary, points, backend=None):
    k = get_backend(backend)
    return k.winding(np.ascontiguousarray(boundary, np.complex128),
                     np.ascontiguousarray(np.ravel(points), np.complex128))
