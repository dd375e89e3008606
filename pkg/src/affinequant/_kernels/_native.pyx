# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _py for the API)."""

import numpy as np

from libc.math cimport atan2, cos, exp, hypot, lgamma, log, pi, sin


def laguerre_table(double alpha, int nmax, const double[::1] x):
    cdef Py_ssize_t nx = x.shape[0]
    out_arr = np.empty((nmax + 1, nx), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t j, n
    cdef double xa
    for j in range(nx):
        xa = x[j]
        out[0, j] = 1.0
        if nmax >= 1:
            out[1, j] = 1.0 + alpha - xa
        for n in range(2, nmax + 1):
            out[n, j] = ((2 * n - 1 + alpha - xa) * out[n - 1, j]
                         - (n - 1 + alpha) * out[n - 2, j]) / n
    return out_arr


def jacobi_seq(double a, double b, double y, int nmax):
    out_arr = np.empty(nmax + 1, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t n
    cdef double s, c1, c2, c3, c4, pm2, pm1, cur
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * y
    pm2 = 1.0
    pm1 = out[1] if nmax >= 1 else 1.0
    for n in range(2, nmax + 1):
        s = 2.0 * n + a + b
        c1 = 2.0 * n * (n + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (a * a - b * b)
        c3 = (s - 1.0) * s * (s - 2.0)
        c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s
        cur = ((c2 + c3 * y) * pm1 - c4 * pm2) / c1
        out[n] = cur
        pm2 = pm1
        pm1 = cur
    return out_arr


cdef inline void _geometry(double alpha, double q, double p,
                           double* rp, double* rm, double* tp, double* tm,
                           double* y, double* base) nogil:
    cdef double re_p = q + 1.0
    cdef double re_m = q - 1.0
    cdef double im = 2.0 * q * p
    rp[0] = hypot(re_p, im)
    rm[0] = hypot(re_m, im)
    tp[0] = atan2(im, re_p)
    tm[0] = atan2(im, re_m)
    cdef double ratio = rm[0] / rp[0]
    y[0] = 1.0 - 2.0 * ratio * ratio
    base[0] = (alpha + 1.0) * (log(2.0) + 0.5 * log(q) - log(rp[0]))


def u_matrix(double alpha, int nmax, double q, double p):
    cdef int n1 = nmax + 1
    out_arr = np.zeros((n1, n1), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double rp, rm, tp, tm, y, base
    _geometry(alpha, q, p, &rp, &rm, &tp, &tm, &y, &base)
    cdef Py_ssize_t d, m, n
    cdef double lrm, lrp, s, c1, c2, c3, c4, pm2, pm1, jac
    cdef double logmag, phase, mag, half
    if rm == 0.0:
        for m in range(n1):
            out[m, m] = 1.0
        return out_arr
    lrm = log(rm)
    lrp = log(rp)
    for d in range(0, n1):
        pm2 = 0.0
        pm1 = 0.0
        for m in range(0, n1 - d):
            n = m + d
            if m == 0:
                jac = 1.0
            elif m == 1:
                jac = 0.5 * (d - alpha) + (1.0 + 0.5 * (d + alpha)) * y
            else:
                s = 2.0 * m + d + alpha
                c1 = 2.0 * m * (m + d + alpha) * (s - 2.0)
                c2 = (s - 1.0) * (d * d - alpha * alpha)
                c3 = (s - 1.0) * s * (s - 2.0)
                c4 = 2.0 * (m + d - 1.0) * (m + alpha - 1.0) * s
                jac = ((c2 + c3 * y) * pm1 - c4 * pm2) / c1
            pm2 = pm1
            pm1 = jac
            half = 0.5 * (lgamma(n + alpha + 1.0) - lgamma(m + alpha + 1.0)
                          + lgamma(m + 1.0) - lgamma(n + 1.0))
            logmag = base + half + d * (lrm - lrp)
            mag = exp(logmag) * jac
            phase = -d * tm + (m + n + alpha + 1.0) * tp
            out[m, n] = mag * (cos(phase) + 1j * sin(phase))
            if d > 0:
                phase = d * tm + (m + n + alpha + 1.0) * tp + pi * d
                out[n, m] = mag * (cos(phase) + 1j * sin(phase))
    return out_arr


def u_diag(double alpha, int nmax, double q, double p):
    out_arr = np.empty(nmax + 1, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double rp, rm, tp, tm, y, base
    _geometry(alpha, q, p, &rp, &rm, &tp, &tm, &y, &base)
    cdef Py_ssize_t m
    cdef double s, c1, c2, c3, c4, pm2, pm1, jac, amp, phase
    if rm == 0.0:
        for m in range(nmax + 1):
            out[m] = 1.0
        return out_arr
    amp = exp(base)
    pm2 = 0.0
    pm1 = 0.0
    for m in range(0, nmax + 1):
        if m == 0:
            jac = 1.0
        elif m == 1:
            jac = -0.5 * alpha + (1.0 + 0.5 * alpha) * y
        else:
            s = 2.0 * m + alpha
            c1 = 2.0 * m * (m + alpha) * (s - 2.0)
            c2 = -(s - 1.0) * alpha * alpha
            c3 = (s - 1.0) * s * (s - 2.0)
            c4 = 2.0 * (m - 1.0) * (m + alpha - 1.0) * s
            jac = ((c2 + c3 * y) * pm1 - c4 * pm2) / c1
        pm2 = pm1
        pm1 = jac
        phase = (2.0 * m + alpha + 1.0) * tp
        out[m] = amp * jac * (cos(phase) + 1j * sin(phase))
    return out_arr


def cos_transform(const double[::1] coeff, const double[::1] s, const double[::1] omega):
    cdef Py_ssize_t nk = omega.shape[0]
    cdef Py_ssize_t nj = s.shape[0]
    out_arr = np.empty(nk, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, j
    cdef double acc, w
    for k in range(nk):
        w = omega[k]
        acc = 0.0
        for j in range(nj):
            acc += coeff[j] * cos(w * s[j])
        out[k] = acc
    return out_arr


def phase_transform(const double complex[::1] env, const double[::1] x, const double[::1] p):
    cdef Py_ssize_t nk = p.shape[0]
    cdef Py_ssize_t nj = x.shape[0]
    out_arr = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t k, j
    cdef double complex acc
    cdef double pk, arg
    for k in range(nk):
        pk = p[k]
        acc = 0.0
        for j in range(nj):
            arg = pk * x[j]
            acc += env[j] * (cos(arg) - 1j * sin(arg))
        out[k] = acc
    return out_arr
