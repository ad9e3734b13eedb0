"""Pure-numpy implementations of the transform hot kernels.

Semantics reference for the optional Cython extension: both backends must
agree to ~1e-13 relative (the extension uses the same phase-ladder recurrence,
so differences are pure roundoff).
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def kernel_pair_chunk(amp: np.ndarray, P: np.ndarray, E: np.ndarray, nc: int):
    """Advance the phase ladder by nc steps and emit kernel pairs.

    P is updated in place: on entry it holds exp(i lam_prev L); each step
    multiplies by E = exp(i dlam L).  Returns (K, Kc) of shape (nc, nr, nt)
    with K = amp * P and Kc = conj(K) = amp * conj(P), amp = exp(-rho L) real.
    """
    nr, nt = amp.shape
    K = np.empty((nc, nr, nt), dtype=complex)
    Kc = np.empty((nc, nr, nt), dtype=complex)
    for j in range(nc):
        np.multiply(P, E, out=P)
        np.multiply(amp, P, out=K[j])
        np.conjugate(K[j], out=Kc[j])
    return K, Kc


def _psi01(u: np.ndarray):
    """Filon moments psi0 = int_0^1 e^{iut} dt, psi1 = int_0^1 t e^{iut} dt."""
    u = np.asarray(u, dtype=float)
    psi0 = np.empty(u.shape, dtype=complex)
    psi1 = np.empty(u.shape, dtype=complex)
    small = np.abs(u) < 0.35
    us = 1j * u[small]
    p0 = np.zeros_like(us)
    p1 = np.zeros_like(us)
    term = np.ones_like(us)
    fact = 1.0
    for k in range(0, 12):
        if k > 0:
            term = term * us
            fact *= k
        p0 += term / (fact * (k + 1))
        p1 += term / (fact * (k + 2))
    psi0[small] = p0
    psi1[small] = p1
    ub = u[~small]
    eiu = np.exp(1j * ub)
    psi0[~small] = (eiu - 1.0) / (1j * ub)
    psi1[~small] = (eiu - psi0[~small]) / (1j * ub)
    return psi0, psi1


def filon_weights_uniform(h_values: np.ndarray, lam0: float, dlam: float,
                          nlam: int) -> np.ndarray:
    """Weights W with (W @ g)(H) = int_0^{lam_max} e^{i lam H} g(lam) dlam.

    g is interpolated piecewise-linearly through its samples at the uniform
    nodes lam_j = lam0 + j dlam, extended linearly to (0, 0) on the left stub
    (the integrand e^{i lam H} is integrated exactly, so accuracy does not
    degrade with |H|).
    """
    H = np.asarray(h_values, dtype=float)
    lam = lam0 + dlam * np.arange(nlam)
    u = dlam * H
    psi0, psi1 = _psi01(u)
    pa = psi0 - psi1
    phase = np.exp(1j * np.outer(H, lam))  # (nH, nlam)
    W = np.zeros((len(H), nlam), dtype=complex)
    W[:, :-1] += dlam * phase[:, :-1] * pa[:, None]
    W[:, 1:] += dlam * phase[:, :-1] * psi1[:, None]
    # left stub [0, lam0], linear from 0
    _, psi1_stub = _psi01(lam0 * H)
    W[:, 0] += lam0 * psi1_stub
    return W
