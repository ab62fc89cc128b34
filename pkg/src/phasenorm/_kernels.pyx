# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: weighted Laguerre-series evaluation.

Twin of ``phasenorm._kernels_py``; both must implement the identical
contract documented there.
"""

import numpy as np


def wigner_series(const double[::1] weights, double tau, const double[::1] u,
                  const double[::1] pref):
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t nw = weights.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j, n
    cdef double h_prev, h_cur, h_next, acc, uj, tau2

    if pref.shape[0] != m:
        raise ValueError("pref and u must have the same length")

    tau2 = tau * tau
    for j in range(m):
        uj = u[j]
        h_prev = 0.0
        h_cur = pref[j]
        acc = weights[0] * h_cur
        for n in range(nw - 1):
            h_next = (((2 * n + 1) * tau - uj) * h_cur
                      - (n * tau2) * h_prev) / (n + 1)
            h_prev = h_cur
            h_cur = h_next
            acc += weights[n + 1] * h_cur
        out[j] = acc
    return out_arr
