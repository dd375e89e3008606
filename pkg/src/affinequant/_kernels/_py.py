"""Numpy implementations of the hot kernels.

This module mirrors the API of the compiled extension ``_native`` exactly;
the package selects one of the two at import time.  Everything here is
vectorized where the operation allows it, but the three-term recurrences
are inherently sequential in the degree.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

__all__ = [
    "laguerre_table",
    "jacobi_seq",
    "u_matrix",
    "u_diag",
    "cos_transform",
    "phase_transform",
]


def laguerre_table(alpha, nmax, x):
    """Table of generalized Laguerre values L_n^(alpha)(x).

    Returns an array of shape ``(nmax + 1, len(x))`` with row ``n`` holding
    L_n^(alpha) evaluated on ``x``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty((nmax + 1, x.size), dtype=np.float64)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + alpha - x
    for n in range(2, nmax + 1):
        out[n] = ((2 * n - 1 + alpha - x) * out[n - 1]
                  - (n - 1 + alpha) * out[n - 2]) / n
    return out


def jacobi_seq(a, b, y, nmax):
    """Jacobi values P_n^(a,b)(y) for n = 0..nmax at a single point y."""
    out = np.empty(nmax + 1, dtype=np.float64)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * y
    pm2 = out[0]
    pm1 = out[1] if nmax >= 1 else out[0]
    for n in range(2, nmax + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        c2 = (s - 1) * (a * a - b * b)
        c3 = (s - 1) * s * (s - 2)
        c4 = 2 * (n + a - 1) * (n + b - 1) * s
        cur = ((c2 + c3 * y) * pm1 - c4 * pm2) / c1
        out[n] = cur
        pm2 = pm1
        pm1 = cur
    return out


def _u_geometry(alpha, q, p):
    """Shared geometric quantities for the matrix-element closed form."""
    re_p = q + 1.0
    re_m = q - 1.0
    im = 2.0 * q * p
    rp = np.hypot(re_p, im)
    rm = np.hypot(re_m, im)
    tp = np.arctan2(im, re_p)
    tm = np.arctan2(im, re_m)
    ratio = rm / rp
    y = 1.0 - 2.0 * ratio * ratio
    base = (alpha + 1.0) * (np.log(2.0) + 0.5 * np.log(q) - np.log(rp))
    return rp, rm, tp, tm, y, base


def u_matrix(alpha, nmax, q, p):
    """Dense matrix of U_mn(q, p) for m, n = 0..nmax in the Laguerre basis.

    Assembled diagonal by diagonal: along the d-th superdiagonal the entries
    share one Jacobi parameter pair (d, alpha) and one argument, so a single
    degree recurrence covers the whole diagonal.
    """
    n1 = nmax + 1
    out = np.zeros((n1, n1), dtype=np.complex128)
    rp, rm, tp, tm, y, base = _u_geometry(alpha, q, p)
    if rm == 0.0:
        out[np.diag_indices(n1)] = 1.0
        return out
    lrm = np.log(rm)
    lg = gammaln(np.arange(n1) + 1.0)
    lga = gammaln(np.arange(n1) + alpha + 1.0)
    m_all = np.arange(n1)
    for d in range(0, n1):
        mm = m_all[: n1 - d]
        nn = mm + d
        jac = jacobi_seq(float(d), alpha, y, n1 - 1 - d)
        logmag = (base + 0.5 * (lga[nn] - lga[mm] + lg[mm] - lg[nn])
                  + d * (lrm - np.log(rp)))
        phase = -d * tm + (mm + nn + alpha + 1.0) * tp
        mag = np.exp(logmag) * jac
        out[mm, nn] = mag * (np.cos(phase) + 1j * np.sin(phase))
        if d > 0:
            # m > n closed form: same magnitude, sign (-1)^d, reflected
            # angle contribution from the lower half-plane factor.
            phase_l = d * tm + (mm + nn + alpha + 1.0) * tp + np.pi * d
            out[nn, mm] = mag * (np.cos(phase_l) + 1j * np.sin(phase_l))
    return out


def u_diag(alpha, nmax, q, p):
    """Diagonal entries U_mm(q, p) for m = 0..nmax."""
    rp, rm, tp, tm, y, base = _u_geometry(alpha, q, p)
    m = np.arange(nmax + 1)
    if rm == 0.0:
        return np.ones(nmax + 1, dtype=np.complex128)
    amp = np.exp(base)
    phase = (2.0 * m + alpha + 1.0) * tp
    return amp * jacobi_seq(0.0, alpha, y, nmax) * (
        np.cos(phase) + 1j * np.sin(phase))


def cos_transform(coeff, s, omega):
    """out[k] = sum_j coeff[j] * cos(omega[k] * s[j]), chunked over k."""
    coeff = np.ascontiguousarray(coeff, dtype=np.float64)
    s = np.ascontiguousarray(s, dtype=np.float64)
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    out = np.empty(omega.size, dtype=np.float64)
    step = max(1, int(4.0e6 / max(s.size, 1)))
    for k0 in range(0, omega.size, step):
        blk = omega[k0:k0 + step]
        out[k0:k0 + step] = np.cos(np.outer(blk, s)) @ coeff
    return out


def phase_transform(env, x, p):
    """out[k] = sum_j env[j] * exp(-1i * p[k] * x[j]), chunked over k."""
    env = np.ascontiguousarray(env, dtype=np.complex128)
    x = np.ascontiguousarray(x, dtype=np.float64)
    p = np.ascontiguousarray(p, dtype=np.float64)
    out = np.empty(p.size, dtype=np.complex128)
    step = max(1, int(2.0e6 / max(x.size, 1)))
    for k0 in range(0, p.size, step):
        arg = np.outer(p[k0:k0 + step], x)
        out[k0:k0 + step] = (np.cos(arg) - 1j * np.sin(arg)) @ env
    return out
