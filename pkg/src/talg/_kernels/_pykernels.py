"""Pure-Python exact kernels over arbitrary-precision integers."""

import numpy as np


def matmul(a, b):
    """Exact ``a @ b`` for object arrays of Python ints.

    Accumulates one row of ``b`` per nonzero entry of ``a``; the structure
    tensors handled here are sparse, which makes this several times faster
    than a dense object-dtype matmul.
    """
    out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
    rows, cols = np.nonzero(a)
    for i, k in zip(rows.tolist(), cols.tolist()):
        out[i] += a[i, k] * b[k]
    return out


def first_nonzero(flat):
    nz = np.flatnonzero(flat)
    return int(nz[0]) if nz.size else -1
