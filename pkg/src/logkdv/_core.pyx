# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: banded matvec, pivoted banded LU, pointwise nonlinearity.

Same API as logkdv._core_py; logkdv.backend picks whichever imports.
Factor objects are opaque to callers and must not be mixed between the
two backends (this one stores 0-based pivot indices).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, log

cnp.import_array()

KIND = "compiled"


def banded_matvec(offsets, bands, x, cyclic):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] offs = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] bnd = np.ascontiguousarray(bands, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.zeros_like(xv)
    cdef Py_ssize_t n = xv.shape[0], m = offs.shape[0]
    cdef Py_ssize_t i, q, j
    cdef long off
    cdef bint cyc = bool(cyclic)
    for q in range(m):
        off = offs[q]
        if cyc:
            for i in range(n):
                j = i + off
                if j >= n:
                    j -= n
                elif j < 0:
                    j += n
                y[i] += bnd[q, i] * xv[j]
        else:
            for i in range(n):
                j = i + off
                if 0 <= j < n:
                    y[i] += bnd[q, i] * xv[j]
    return y


def banded_lu_factor(ab, kl, ku):
    """Row-pivoted LU of a banded matrix in LAPACK band storage.

    ab has shape (2*kl + ku + 1, n) with kl fill rows on top;
    ab[kl + ku + i - j, j] = A[i, j].  Overwrites a copy; returns
    (lu, ipiv) with 0-based pivot rows.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.array(ab, dtype=np.float64, order="C")
    cdef Py_ssize_t n = a.shape[1]
    cdef long kl_ = kl, ku_ = ku
    cdef long kv = kl_ + ku_
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ipiv = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t j, c
    cdef long km, jp, p, ju = 0
    cdef double amax, tmp, pivval, ujc
    cdef long info = 0

    if a.shape[0] != 2 * kl_ + ku_ + 1:
        raise ValueError("band storage must have 2*kl + ku + 1 rows")

    for j in range(n):
        km = kl_ if kl_ < (n - 1 - j) else (n - 1 - j)
        jp = 0
        amax = fabs(a[kv, j])
        for p in range(1, km + 1):
            if fabs(a[kv + p, j]) > amax:
                amax = fabs(a[kv + p, j])
                jp = p
        ipiv[j] = j + jp
        if a[kv + jp, j] != 0.0:
            if j + ku_ + jp > ju:
                ju = j + ku_ + jp
            if ju > n - 1:
                ju = n - 1
            if jp != 0:
                for c in range(j, ju + 1):
                    tmp = a[kv + j - c, c]
                    a[kv + j - c, c] = a[kv + j + jp - c, c]
                    a[kv + j + jp - c, c] = tmp
            if km > 0:
                pivval = a[kv, j]
                for p in range(1, km + 1):
                    a[kv + p, j] /= pivval
                for c in range(j + 1, ju + 1):
                    ujc = a[kv + j - c, c]
                    if ujc != 0.0:
                        for p in range(1, km + 1):
                            a[kv + j - c + p, c] -= a[kv + p, j] * ujc
        elif info == 0:
            info = j + 1

    if info != 0:
        from .errors import SolverError
        raise SolverError(f"banded LU factorization hit a zero pivot (column {info})")
    return a, ipiv


def banded_lu_solve(lu, ipiv, kl, ku, b):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = lu
    cdef cnp.ndarray[cnp.int64_t, ndim=1] piv = ipiv
    cdef cnp.ndarray[cnp.float64_t, ndim=2] rhs
    cdef bint one_d = (np.ndim(b) == 1)
    if one_d:
        rhs = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 1)
    else:
        rhs = np.array(b, dtype=np.float64, order="C")
    cdef Py_ssize_t n = a.shape[1], nrhs = rhs.shape[1]
    cdef long kl_ = kl, ku_ = ku
    cdef long kv = kl_ + ku_
    cdef Py_ssize_t j, r
    cdef long km, i, p, lmin
    cdef double t

    for r in range(nrhs):
        for j in range(n - 1):
            km = kl_ if kl_ < (n - 1 - j) else (n - 1 - j)
            p = piv[j]
            if p != j:
                t = rhs[p, r]
                rhs[p, r] = rhs[j, r]
                rhs[j, r] = t
            for i in range(1, km + 1):
                rhs[j + i, r] -= a[kv + i, j] * rhs[j, r]
        for j in range(n - 1, -1, -1):
            rhs[j, r] /= a[kv, j]
            lmin = j - kv
            if lmin < 0:
                lmin = 0
            for i in range(lmin, j):
                rhs[i, r] -= a[kv + i - j, j] * rhs[j, r]

    out = np.asarray(rhs)
    return out[:, 0] if one_d else out


def f_eps_array(v, eps, m):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(vv)
    cdef Py_ssize_t n = vv.shape[0], i
    cdef double e = eps, av, x
    cdef double loge = log(e)
    cdef double e2 = e * e
    cdef long mm = m
    for i in range(n):
        x = vv[i]
        av = fabs(x)
        if av >= e:
            out[i] = x * log(av)
        elif mm == 1:
            out[i] = (loge - 0.5) * x + x * x * x / (2.0 * e2)
        else:
            out[i] = (loge - 0.75) * x + x * x * x / e2 - x * x * x * x * x / (4.0 * e2 * e2)
    return out


def df_eps_array(v, eps, m):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(vv)
    cdef Py_ssize_t n = vv.shape[0], i
    cdef double e = eps, av, x
    cdef double loge = log(e)
    cdef double e2 = e * e
    cdef long mm = m
    for i in range(n):
        x = vv[i]
        av = fabs(x)
        if av >= e:
            out[i] = log(av) + 1.0
        elif mm == 1:
            out[i] = (loge - 0.5) + 3.0 * x * x / (2.0 * e2)
        else:
            out[i] = (loge - 0.75) + 3.0 * x * x / e2 - 5.0 * x * x * x * x / (4.0 * e2 * e2)
    return out
