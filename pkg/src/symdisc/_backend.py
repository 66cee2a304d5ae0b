"""Select the numerical core at import time.

The compiled ``_core`` extension is preferred.  Setting ``SYMDISC_PURE=1``
in the environment forces the pure-Python fallback, as does a missing
extension.
"""
import os

import numpy as np

from . import _purecore

if os.environ.get("SYMDISC_PURE", "").strip() not in ("", "0"):
    _impl = _purecore
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _purecore

BACKEND = _impl.NAME


def _vec(x):
    return np.ascontiguousarray(x, dtype=complex).reshape(-1)


def _mat(x):
    return np.ascontiguousarray(x, dtype=complex)


def esym(roots):
    return _impl.esym(_vec(roots))


def aberth(a, tol, maxiter):
    return _impl.aberth(_vec(a), float(tol), int(maxiter))


def schur_cohn(a, rho, degen_tol):
    return _impl.schur_cohn(_vec(a), float(rho), float(degen_tol))


def charpoly(w):
    return _impl.charpoly(_mat(w))


def lu_det(m):
    return _impl.lu_det(_mat(m))


def permanent(m):
    return _impl.permanent(_mat(m))
