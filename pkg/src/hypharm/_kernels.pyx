# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Cython implementations of the transform hot kernels.

Same contracts as _kernels_np; see that module for the semantics.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND_NAME = "cython"


def kernel_pair_chunk(double[:, ::1] amp, complex[:, ::1] P,
                      complex[:, ::1] E, int nc):
    cdef Py_ssize_t nr = amp.shape[0]
    cdef Py_ssize_t nt = amp.shape[1]
    K_arr = np.empty((nc, nr, nt), dtype=np.complex128)
    Kc_arr = np.empty((nc, nr, nt), dtype=np.complex128)
    cdef complex[:, :, ::1] K = K_arr
    cdef complex[:, :, ::1] Kc = Kc_arr
    cdef Py_ssize_t i, m, j
    cdef complex p, e, val
    cdef double a
    for i in range(nr):
        for m in range(nt):
            p = P[i, m]
            e = E[i, m]
            a = amp[i, m]
            for j in range(nc):
                p = p * e
                val = a * p
                K[j, i, m] = val
                Kc[j, i, m] = val.conjugate()
            P[i, m] = p
    return K_arr, Kc_arr


cdef inline void _psi01_scalar(double u, complex* psi0, complex* psi1) noexcept:
    cdef complex iu = 1j * u
    cdef complex term = 1.0 + 0j
    cdef complex p0 = 0, p1 = 0, eiu
    cdef double fact = 1.0
    cdef int k
    if -0.35 < u < 0.35:
        for k in range(12):
            if k > 0:
                term = term * iu
                fact = fact * k
            p0 = p0 + term / (fact * (k + 1))
            p1 = p1 + term / (fact * (k + 2))
        psi0[0] = p0
        psi1[0] = p1
    else:
        eiu = cos(u) + 1j * sin(u)
        psi0[0] = (eiu - 1.0) / iu
        psi1[0] = (eiu - psi0[0]) / iu


def filon_weights_uniform(double[::1] h_values, double lam0, double dlam,
                          int nlam):
    cdef Py_ssize_t nH = h_values.shape[0]
    W_arr = np.zeros((nH, nlam), dtype=np.complex128)
    cdef complex[:, ::1] W = W_arr
    cdef Py_ssize_t i, j
    cdef double H, u
    cdef complex psi0, psi1, pa, phase, step
    for i in range(nH):
        H = h_values[i]
        u = dlam * H
        _psi01_scalar(u, &psi0, &psi1)
        pa = psi0 - psi1
        step = cos(u) + 1j * sin(u)
        phase = cos(lam0 * H) + 1j * sin(lam0 * H)
        for j in range(nlam - 1):
            W[i, j] = W[i, j] + dlam * phase * pa
            W[i, j + 1] = W[i, j + 1] + dlam * phase * psi1
            phase = phase * step
        _psi01_scalar(lam0 * H, &psi0, &psi1)
        W[i, 0] = W[i, 0] + lam0 * psi1
    return W_arr
