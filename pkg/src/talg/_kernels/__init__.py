"""Hot integer kernels with a compiled backend and a pure-Python fallback.

The compiled extension (``_ckernels``, Cython) is used when it imports;
otherwise the pure-Python backend is selected.  Set ``TALG_KERNELS=python``
to force the fallback.  Both backends are exact: the compiled one works in
overflow-checked int64 and hands the call to the Python backend whenever a
value does not fit.
"""

import os
from contextlib import contextmanager

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

AVAILABLE = ("cython", "python") if _ckernels is not None else ("python",)

_active = "cython" if _ckernels is not None else "python"
if os.environ.get("TALG_KERNELS", "").lower() == "python":
    _active = "python"


def backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in AVAILABLE:
        raise ValueError(f"kernel backend {name!r} unavailable (have {AVAILABLE})")
    _active = name


@contextmanager
def using(name: str):
    prev = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _to_i64(arr):
    try:
        return np.ascontiguousarray(arr, dtype=np.int64)
    except OverflowError:
        return None


def matmul(a, b):
    """Exact product of two 2-D integer (object dtype) arrays; returns object dtype."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    if _active == "cython":
        a64 = _to_i64(a)
        b64 = _to_i64(b) if a64 is not None else None
        if b64 is not None:
            try:
                return _ckernels.matmul_i64(a64, b64).astype(object)
            except OverflowError:
                pass
    return _pykernels.matmul(a, b)


def first_nonzero(flat):
    """Index of the first nonzero entry of a 1-D integer array, or -1."""
    if _active == "cython":
        f64 = _to_i64(flat)
        if f64 is not None:
            return int(_ckernels.first_nonzero(f64))
    return _pykernels.first_nonzero(flat)
