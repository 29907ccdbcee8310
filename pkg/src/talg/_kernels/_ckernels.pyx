# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Overflow-checked int64 kernels.

Every product and accumulation goes through the compiler's checked
builtins; any overflow raises OverflowError so the caller can redo the
computation with Python integers.
"""

import numpy as np

cdef extern from *:
    """
    static inline int talg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int talg_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int talg_mul_ovf(long long a, long long b, long long *r) nogil
    int talg_add_ovf(long long a, long long b, long long *r) nogil


def matmul_i64(const long long[:, ::1] a, const long long[:, ::1] b):
    """Exact ``a @ b`` over int64; zero entries of ``a`` are skipped."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t inner = a.shape[1]
    cdef Py_ssize_t n = b.shape[1]
    if b.shape[0] != inner:
        raise ValueError("inner dimensions differ")
    out = np.zeros((m, n), dtype=np.int64)
    cdef long long[:, ::1] c = out
    cdef Py_ssize_t i, k, j
    cdef long long aik, bkj, t
    cdef int bad = 0
    with nogil:
        for i in range(m):
            for k in range(inner):
                aik = a[i, k]
                if aik == 0:
                    continue
                for j in range(n):
                    bkj = b[k, j]
                    if bkj == 0:
                        continue
                    if talg_mul_ovf(aik, bkj, &t) or talg_add_ovf(c[i, j], t, &c[i, j]):
                        bad = 1
                        break
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in matmul_i64")
    return out


def first_nonzero(const long long[::1] flat):
    """Index of the first nonzero entry, or -1."""
    cdef Py_ssize_t i
    cdef Py_ssize_t n = flat.shape[0]
    for i in range(n):
        if flat[i] != 0:
            return i
    return -1
