# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.  Mirrors ``saruma._pykernels`` one to one."""

import numpy as np

from libc.math cimport fabs, isfinite

STATUS_OK = 0
STATUS_UNIT = 1
STATUS_NONFINITE = 2


def levinson_forward(beta_in):
    cdef const double[::1] beta = np.ascontiguousarray(beta_in, dtype=np.float64)
    cdef Py_ssize_t n = beta.shape[0]
    phi_arr = np.zeros(n, dtype=np.float64)
    prev_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] phi = phi_arr
    cdef double[::1] prev = prev_arr
    cdef Py_ssize_t m, k
    cdef double b
    for m in range(n):
        b = beta[m]
        for k in range(m):
            prev[k] = phi[k]
        for k in range(m):
            phi[k] = prev[k] - b * prev[m - 1 - k]
        phi[m] = b
    return phi_arr


def levinson_inverse(phi_in, double unit_eps):
    cur_arr = np.array(phi_in, dtype=np.float64, copy=True)
    nxt_arr = np.empty_like(cur_arr)
    cdef double[::1] cur = cur_arr
    cdef double[::1] nxt = nxt_arr
    cdef Py_ssize_t n = cur.shape[0]
    beta_arr = np.full(n, np.nan)
    cdef double[::1] beta = beta_arr
    cdef Py_ssize_t m, k
    cdef double b, denom
    for m in range(n, 0, -1):
        for k in range(m):
            if not isfinite(cur[k]):
                return beta_arr, STATUS_NONFINITE, m, np.array(cur_arr[:m])
        b = cur[m - 1]
        beta[m - 1] = b
        if fabs(fabs(b) - 1.0) <= unit_eps:
            return beta_arr, STATUS_UNIT, m, np.array(cur_arr[:m])
        denom = 1.0 - b * b
        for k in range(m - 1):
            nxt[k] = (cur[k] + b * cur[m - 2 - k]) / denom
        for k in range(m - 1):
            cur[k] = nxt[k]
    return beta_arr, STATUS_OK, 0, np.empty(0)


def css_residuals(ar_in, ma_in, y_in):
    cdef const double[::1] ar = np.ascontiguousarray(ar_in, dtype=np.float64)
    cdef const double[::1] ma = np.ascontiguousarray(ma_in, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef Py_ssize_t p = ar.shape[0] - 1
    cdef Py_ssize_t q = ma.shape[0] - 1
    cdef Py_ssize_t n = y.shape[0] - p
    if n < 0:
        n = 0
    e_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] e = e_arr
    cdef Py_ssize_t t, j, jmax
    cdef double acc
    for t in range(n):
        acc = 0.0
        for j in range(p + 1):
            acc += ar[j] * y[t + p - j]
        jmax = q if q < t else t
        for j in range(1, jmax + 1):
            acc -= ma[j] * e[t - j]
        e[t] = acc
    return e_arr


def arma_simulate(ar_in, ma_in, eps_in):
    cdef const double[::1] ar = np.ascontiguousarray(ar_in, dtype=np.float64)
    cdef const double[::1] ma = np.ascontiguousarray(ma_in, dtype=np.float64)
    cdef const double[::1] eps = np.ascontiguousarray(eps_in, dtype=np.float64)
    cdef Py_ssize_t p = ar.shape[0] - 1
    cdef Py_ssize_t q = ma.shape[0] - 1
    cdef Py_ssize_t n = eps.shape[0]
    y_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef Py_ssize_t t, j, jmax
    cdef double acc
    for t in range(n):
        acc = 0.0
        jmax = q if q < t else t
        for j in range(jmax + 1):
            acc += ma[j] * eps[t - j]
        jmax = p if p < t else t
        for j in range(1, jmax + 1):
            acc -= ar[j] * y[t - j]
        y[t] = acc / ar[0]
    return y_arr
