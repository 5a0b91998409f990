"""Backend selection for the hot loops.

The compiled extension ``mcmean._ckernels`` is used when it was built;
otherwise the numpy implementation in ``mcmean._pykernels`` is used. Setting
``MCMEAN_BACKEND=python`` in the environment forces the fallback at import.
Both backends produce bit-identical results.
"""
import contextlib
import os

import numpy as np

from mcmean import _pykernels

try:
    from mcmean import _ckernels
except ImportError:  # extension not built
    _ckernels = None

INF = _pykernels.INF
# Finite entries stay at or below this, so the sum of two never wraps int64
# and the compiled loop can stand in 2**61 for infinity.
MAX_FINITE = (1 << 60) - 1

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels


def available_backends():
    return sorted(_BACKENDS)


def _initial_backend():
    wanted = os.environ.get("MCMEAN_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in _BACKENDS:
            raise ImportError(f"MCMEAN_BACKEND={wanted!r} is not available "
                              f"(have: {', '.join(available_backends())})")
        return wanted
    return "compiled" if "compiled" in _BACKENDS else "python"


_active = _initial_backend()


def active_backend():
    return _active


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _active = name


@contextlib.contextmanager
def using_backend(name):
    """Temporarily switch backend (used by tests and the kernel benchmark)."""
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def check_entries(A, what="matrix"):
    """Raise unless every entry is the infinity sentinel or in [0, MAX_FINITE]."""
    finite = A != INF
    if np.any(A[finite] < 0):
        raise ValueError(f"{what} has negative entries")
    if np.any(A[finite] > MAX_FINITE):
        raise OverflowError(f"{what} has finite entries above {MAX_FINITE}")


def _check_result(C):
    finite = C != INF
    if np.any(C[finite] > MAX_FINITE):
        raise OverflowError(f"min-plus sum exceeded the finite range {MAX_FINITE}")
    return C


def minplus(A, B):
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    check_entries(A, "left operand")
    check_entries(B, "right operand")
    return _check_result(_BACKENDS[_active].minplus_product(A, B))


def relax(src, dst, weight, values, size):
    """One round of edge relaxation: ``out[u] = min over edges (u, v) of w + values[v]``."""
    values = np.ascontiguousarray(values, dtype=np.int64)
    check_entries(values, "relaxation values")
    out = _BACKENDS[_active].relax(src, dst, weight, values, size)
    return _check_result(out)
