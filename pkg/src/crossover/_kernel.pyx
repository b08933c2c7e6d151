# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Doppler-sum kernel.

For every frequency point the velocity nodes are visited in order, so the
reduction order, and therefore every output bit, is independent of the
number of OpenMP threads.
"""
import numpy as np

from cython.parallel cimport prange
from libc.math cimport fabs

ctypedef double complex cplx

DEF NMAX = 16


cdef inline double _mag(cplx z) noexcept nogil:
    return fabs(z.real) + fabs(z.imag)


cdef int _omega_point(const cplx* K, const cplx* rhs, const cplx* proj,
                      const double* mask, double d0, double slope,
                      const double* u, const double* w,
                      Py_ssize_t n_u, Py_ssize_t n_sets, Py_ssize_t n,
                      cplx* out, Py_ssize_t stride) noexcept nogil:
    cdef cplx a[NMAX * (NMAX + 1)]
    cdef cplx x[NMAX]
    cdef cplx f, t, piv
    cdef double delta, best, m
    cdef Py_ssize_t j, r, c, k, p, s, m1 = n + 1
    cdef const cplx* Kj
    cdef int status = 0

    for j in range(n_u):
        delta = d0 - slope * u[j]
        Kj = K + j * n * n
        for r in range(n):
            for c in range(n):
                a[r * m1 + c] = Kj[r * n + c]
            a[r * m1 + r] = a[r * m1 + r] - 1j * (delta * mask[r])
            a[r * m1 + n] = rhs[j * n + r]

        # Gaussian elimination with partial pivoting on the augmented matrix.
        for k in range(n):
            p = k
            best = _mag(a[k * m1 + k])
            for r in range(k + 1, n):
                m = _mag(a[r * m1 + k])
                if m > best:
                    best = m
                    p = r
            if best == 0.0:
                status = 1
                break
            if p != k:
                for c in range(k, m1):
                    t = a[k * m1 + c]
                    a[k * m1 + c] = a[p * m1 + c]
                    a[p * m1 + c] = t
            piv = 1.0 / a[k * m1 + k]
            for r in range(k + 1, n):
                t = a[r * m1 + k] * piv
                if t != 0:
                    for c in range(k + 1, m1):
                        a[r * m1 + c] = a[r * m1 + c] - t * a[k * m1 + c]
        if status:
            break

        for r in range(n - 1, -1, -1):
            t = a[r * m1 + n]
            for c in range(r + 1, n):
                t = t - a[r * m1 + c] * x[c]
            x[r] = t / a[r * m1 + r]

        f = 0
        for r in range(n):
            f = f + proj[r] * x[r]
        for s in range(n_sets):
            out[s * stride] = out[s * stride] + w[s * n_u + j] * f
    return status


def doppler_sums(const cplx[:, :, ::1] K, const cplx[:, ::1] rhs,
                 const cplx[::1] proj, const double[::1] mask,
                 const double[::1] delta0, double slope,
                 const double[::1] u, const double[:, ::1] weights,
                 int num_threads=1):
    cdef Py_ssize_t n_u = K.shape[0], n = K.shape[1]
    cdef Py_ssize_t n_w = delta0.shape[0], n_sets = weights.shape[0]
    cdef Py_ssize_t i
    if n > NMAX:
        raise ValueError(f"system size {n} exceeds compiled limit {NMAX}")
    if K.shape[2] != n or rhs.shape[0] != n_u or rhs.shape[1] != n:
        raise ValueError("K/rhs shape mismatch")
    if proj.shape[0] != n or mask.shape[0] != n:
        raise ValueError("proj/mask shape mismatch")
    if u.shape[0] != n_u or weights.shape[1] != n_u:
        raise ValueError("velocity node count mismatch")

    out_arr = np.zeros((n_sets, n_w), dtype=np.complex128)
    status_arr = np.zeros(n_w, dtype=np.intc)
    cdef cplx[:, ::1] out = out_arr
    cdef int[::1] status = status_arr
    if n_u == 0 or n_w == 0:
        return out_arr, status_arr
    if num_threads < 1:
        num_threads = 1

    for i in prange(n_w, nogil=True, num_threads=num_threads, schedule="static"):
        status[i] = _omega_point(&K[0, 0, 0], &rhs[0, 0], &proj[0], &mask[0],
                                 delta0[i], slope, &u[0], &weights[0, 0],
                                 n_u, n_sets, n, &out[0, i], n_w)
    return out_arr, status_arr
