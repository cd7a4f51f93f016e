"""Pure-Python reference versions of the numerical kernels.

Signatures and results match the compiled ``_ckernels`` module exactly
(up to floating point reassociation); this module is used whenever the
extension is not built.
"""

import math

import numpy as np

STATUS_OK = 0
STATUS_UNIT = 1
STATUS_NONFINITE = 2


def levinson_forward(beta):
    """Partial autocorrelations -> prediction coefficients phi_1..phi_n."""
    beta = np.asarray(beta, dtype=float)
    n = beta.shape[0]
    phi = [0.0] * n
    for m in range(n):
        b = float(beta[m])
        prev = phi[:m]
        for k in range(m):
            phi[k] = prev[k] - b * prev[m - 1 - k]
        phi[m] = b
    return np.array(phi, dtype=float)


def levinson_inverse(phi, unit_eps):
    """Prediction coefficients -> partial autocorrelations.

    Returns ``(beta, status, index, remaining)``.  On ``STATUS_UNIT`` or
    ``STATUS_NONFINITE`` the recursion stopped at order ``index`` (1-based);
    ``beta[index-1:]`` is filled and ``remaining`` holds phi^(index).
    """
    cur = [float(v) for v in phi]
    n = len(cur)
    beta = np.full(n, np.nan)
    for m in range(n, 0, -1):
        if not all(math.isfinite(v) for v in cur):
            return beta, STATUS_NONFINITE, m, np.array(cur)
        b = cur[m - 1]
        beta[m - 1] = b
        if abs(abs(b) - 1.0) <= unit_eps:
            return beta, STATUS_UNIT, m, np.array(cur)
        denom = 1.0 - b * b
        cur = [(cur[k] + b * cur[m - 2 - k]) / denom for k in range(m - 1)]
    return beta, STATUS_OK, 0, np.empty(0)


def css_residuals(ar, ma, y):
    """Conditional residuals of ``ar(B) y_t = ma(B) e_t`` with zero presample.

    ``ar`` and ``ma`` include the unit constant term.  Output has length
    ``len(y) - (len(ar) - 1)``.
    """
    ar = np.asarray(ar, dtype=float)
    ma = np.asarray(ma, dtype=float)
    y = np.asarray(y, dtype=float)
    p = ar.shape[0] - 1
    n = y.shape[0] - p
    if n <= 0:
        return np.empty(0)
    # w_t = sum_k ar_k y_{t-k}, accumulated in increasing lag order
    w = np.zeros(n)
    for k in range(p + 1):
        w += ar[k] * y[p - k : p - k + n]
    q = ma.shape[0] - 1
    if q == 0:
        return w
    m = [float(v) for v in ma]
    e = [0.0] * w.shape[0]
    for t, wt in enumerate(w.tolist()):
        acc = wt
        for j in range(1, min(q, t) + 1):
            acc -= m[j] * e[t - j]
        e[t] = acc
    return np.array(e)


def arma_simulate(ar, ma, eps):
    """Run ``ar(B) y_t = ma(B) eps_t`` forward from zero presample values."""
    a = [float(v) for v in ar]
    m = [float(v) for v in ma]
    e = [float(v) for v in eps]
    p = len(a) - 1
    q = len(m) - 1
    y = [0.0] * len(e)
    for t in range(len(e)):
        acc = 0.0
        for j in range(min(q, t) + 1):
            acc += m[j] * e[t - j]
        for k in range(1, min(p, t) + 1):
            acc -= a[k] * y[t - k]
        y[t] = acc / a[0]
    return np.array(y)
