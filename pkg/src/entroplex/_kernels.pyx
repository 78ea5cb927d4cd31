# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic Jacobi diagonalisation of small complex Hermitian
matrices and the golden-section maximisation of ``lambda_min(p A + (1-p) B)``.

The pure-Python twin lives in ``_kernels_py``; both expose the same four
functions and are selected by ``entroplex._backend``.
"""

import numpy as np

from libc.math cimport NAN, sqrt, hypot
from libc.stdlib cimport malloc, free

cdef int MAX_SWEEPS = 100
cdef double GOLDEN = 0.6180339887498949


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef int jacobi(double complex* a, double complex* v, Py_ssize_t n) noexcept nogil:
    """Diagonalise the row-major Hermitian matrix ``a`` in place.

    On return the diagonal of ``a`` holds the eigenvalues; if ``v`` is not
    NULL it is overwritten with the accumulated unitary whose columns are
    the eigenvectors.  Returns the number of sweeps used, or -1 if the
    iteration did not converge.
    """
    cdef Py_ssize_t i, k, p, q
    cdef int sweep
    cdef Py_ssize_t rotated
    cdef double tol, scale, mag, app, aqq, tau, t, c, s
    cdef double complex e, ec, akp, akq, apk, aqk

    if v != NULL:
        for i in range(n * n):
            v[i] = 0
        for i in range(n):
            v[i * n + i] = 1

    scale = 0.0
    for i in range(n * n):
        scale += cabs2(a[i])
    if scale == 0.0:
        return 0
    for i in range(n):
        a[i * n + i] = a[i * n + i].real

    tol = 1e-15 * sqrt(scale)
    for sweep in range(MAX_SWEEPS):
        rotated = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = sqrt(cabs2(a[p * n + q]))
                if mag <= tol:
                    a[p * n + q] = 0
                    a[q * n + p] = 0
                    continue
                rotated += 1
                e = a[p * n + q] / mag
                ec = e.conjugate()
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + hypot(1.0, tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A <- A G with G = [[c, s], [-s conj(e), c conj(e)]]
                for k in range(n):
                    akp = a[k * n + p]
                    akq = a[k * n + q]
                    a[k * n + p] = c * akp - s * ec * akq
                    a[k * n + q] = s * akp + c * ec * akq
                # A <- G^H A
                for k in range(n):
                    apk = a[p * n + k]
                    aqk = a[q * n + k]
                    a[p * n + k] = c * apk - s * e * aqk
                    a[q * n + k] = s * apk + c * e * aqk
                a[p * n + q] = 0
                a[q * n + p] = 0
                a[p * n + p] = a[p * n + p].real
                a[q * n + q] = a[q * n + q].real
                if v != NULL:
                    for k in range(n):
                        akp = v[k * n + p]
                        akq = v[k * n + q]
                        v[k * n + p] = c * akp - s * ec * akq
                        v[k * n + q] = s * akp + c * ec * akq
        if rotated == 0:
            return sweep
    return -1


cdef double min_diag(double complex* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = a[0].real
    for i in range(1, n):
        if a[i * n + i].real < m:
            m = a[i * n + i].real
    return m


cdef double affine_lambda_min(
    const double complex* A, const double complex* B, double complex* work,
    Py_ssize_t n, double p,
) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n * n):
        work[i] = p * A[i] + (1.0 - p) * B[i]
    if jacobi(work, NULL, n) < 0:
        return NAN
    return min_diag(work, n)


def eigh(M):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix."""
    cdef double complex[:, ::1] a = np.array(M, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    vecs = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] v = vecs
    cdef int rc
    with nogil:
        rc = jacobi(&a[0, 0], &v[0, 0], n)
    if rc < 0:
        raise ArithmeticError("Jacobi iteration did not converge")
    w = np.real(np.diagonal(np.asarray(a))).copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]


def eigvalsh(M):
    cdef double complex[:, ::1] a = np.array(M, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    cdef int rc
    with nogil:
        rc = jacobi(&a[0, 0], NULL, n)
    if rc < 0:
        raise ArithmeticError("Jacobi iteration did not converge")
    return np.sort(np.real(np.diagonal(np.asarray(a))))


def lambda_min_affine(A, B, double p):
    """Smallest eigenvalue of ``p A + (1 - p) B``."""
    cdef const double complex[:, ::1] a = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[:, ::1] b = np.ascontiguousarray(B, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex* work = <double complex*> malloc(n * n * sizeof(double complex))
    cdef double out
    if work == NULL:
        raise MemoryError()
    try:
        with nogil:
            out = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, p)
    finally:
        free(work)
    return out


def maximize_lambda_min(A, B, int n_grid=101, double width=1e-8):
    """Maximise the concave map ``p -> lambda_min(p A + (1 - p) B)`` on [0, 1].

    A uniform grid of ``n_grid`` points seeds a golden-section search on the
    bracket around the best grid point.  Returns ``(p_star, value)`` where
    ``value`` is an evaluated objective, never an extrapolation.
    """
    cdef const double complex[:, ::1] a = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[:, ::1] b = np.ascontiguousarray(B, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex* work
    cdef int i, best_i
    cdef double p, f, best_p, best_f, lo, hi, x1, x2, f1, f2
    if n_grid < 2:
        raise ValueError("n_grid must be at least 2")
    work = <double complex*> malloc(n * n * sizeof(double complex))
    if work == NULL:
        raise MemoryError()
    try:
        with nogil:
            best_i = 0
            best_f = -1e300
            best_p = 0.0
            for i in range(n_grid):
                p = i / <double>(n_grid - 1)
                f = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, p)
                if f > best_f:
                    best_f = f
                    best_p = p
                    best_i = i
            lo = (best_i - 1) / <double>(n_grid - 1)
            hi = (best_i + 1) / <double>(n_grid - 1)
            if lo < 0.0:
                lo = 0.0
            if hi > 1.0:
                hi = 1.0
            x1 = hi - GOLDEN * (hi - lo)
            x2 = lo + GOLDEN * (hi - lo)
            f1 = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, x1)
            f2 = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, x2)
            while hi - lo > width:
                if f1 < f2:
                    lo = x1
                    x1 = x2
                    f1 = f2
                    x2 = lo + GOLDEN * (hi - lo)
                    f2 = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, x2)
                else:
                    hi = x2
                    x2 = x1
                    f2 = f1
                    x1 = hi - GOLDEN * (hi - lo)
                    f1 = affine_lambda_min(&a[0, 0], &b[0, 0], work, n, x1)
                if f1 > best_f:
                    best_f = f1
                    best_p = x1
                if f2 > best_f:
                    best_f = f2
                    best_p = x2
    finally:
        free(work)
    return best_p, best_f
