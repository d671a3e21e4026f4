# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels; same contracts as searchlab._kernels_py."""

import numpy as np

from libc.math cimport sqrt, fabs


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


def rk4_sampled(h, psi0, double dt):
    cdef double complex[:, :, ::1] hv = np.ascontiguousarray(h, dtype=np.complex128)
    cdef Py_ssize_t m = hv.shape[0]
    if hv.shape[1] != 2 or hv.shape[2] != 2 or m < 3 or m % 2 == 0:
        raise ValueError("h must have shape (2*steps + 1, 2, 2) with steps >= 1")
    cdef Py_ssize_t steps = (m - 1) // 2
    cdef Py_ssize_t k, j
    out = np.empty((steps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex a = psi0[0]
    cdef double complex b = psi0[1]
    cdef double complex mi = -1j
    cdef double complex ka1, kb1, ka2, kb2, ka3, kb3, ka4, kb4, xa, xb
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double n0 = sqrt(_abs2(a) + _abs2(b))
    cdef double drift = 0.0, d
    o[0, 0] = a
    o[0, 1] = b
    with nogil:
        for k in range(steps):
            j = 2 * k
            ka1 = mi * (hv[j, 0, 0] * a + hv[j, 0, 1] * b)
            kb1 = mi * (hv[j, 1, 0] * a + hv[j, 1, 1] * b)
            j = j + 1
            xa = a + half * ka1
            xb = b + half * kb1
            ka2 = mi * (hv[j, 0, 0] * xa + hv[j, 0, 1] * xb)
            kb2 = mi * (hv[j, 1, 0] * xa + hv[j, 1, 1] * xb)
            xa = a + half * ka2
            xb = b + half * kb2
            ka3 = mi * (hv[j, 0, 0] * xa + hv[j, 0, 1] * xb)
            kb3 = mi * (hv[j, 1, 0] * xa + hv[j, 1, 1] * xb)
            j = j + 1
            xa = a + dt * ka3
            xb = b + dt * kb3
            ka4 = mi * (hv[j, 0, 0] * xa + hv[j, 0, 1] * xb)
            kb4 = mi * (hv[j, 1, 0] * xa + hv[j, 1, 1] * xb)
            a = a + sixth * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4)
            b = b + sixth * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4)
            d = fabs(sqrt(_abs2(a) + _abs2(b)) - n0)
            if d > drift:
                drift = d
            o[k + 1, 0] = a
            o[k + 1, 1] = b
    return out, drift


cdef void _apply(double complex[::1] c, Py_ssize_t w, double complex[::1] v,
                 double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = v.shape[0]
    cdef double complex total = 0.0
    for i in range(n):
        total = total + v[i]
    cdef double complex vw = v[w]
    cdef double complex shift = c[1] * total + c[4] * vw
    for i in range(n):
        out[i] = c[0] * v[i] + shift
    out[w] = out[w] + c[2] * vw + c[3] * total


def apply_structured(coef, Py_ssize_t w, v):
    cdef double complex[::1] c = np.ascontiguousarray(coef, dtype=np.complex128)
    cdef double complex[::1] vv = np.ascontiguousarray(v, dtype=np.complex128)
    result = np.empty(vv.shape[0], dtype=np.complex128)
    cdef double complex[::1] r = result
    _apply(c, w, vv, r)
    return result


def rk4_structured(coefs, Py_ssize_t w, psi0, double dt):
    cdef double complex[:, ::1] cv = np.ascontiguousarray(coefs, dtype=np.complex128)
    cdef Py_ssize_t m = cv.shape[0]
    if cv.shape[1] != 5 or m < 3 or m % 2 == 0:
        raise ValueError("coefs must have shape (2*steps + 1, 5) with steps >= 1")
    cdef Py_ssize_t steps = (m - 1) // 2
    psi_arr = np.array(psi0, dtype=np.complex128)
    cdef double complex[::1] psi = psi_arr
    cdef Py_ssize_t n = psi.shape[0]
    cdef double complex[::1] k1 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] x = np.empty(n, dtype=np.complex128)
    proj = np.empty((steps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] pv = proj
    cdef double inv_rest = 1.0 / sqrt(<double>(n - 1))
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double complex mi = -1j
    cdef double complex total
    cdef double n0 = 0.0, nk, d, drift = 0.0
    cdef Py_ssize_t i, k
    with nogil:
        total = 0.0
        for i in range(n):
            n0 += _abs2(psi[i])
            total = total + psi[i]
        n0 = sqrt(n0)
        pv[0, 0] = psi[w]
        pv[0, 1] = (total - psi[w]) * inv_rest
        for k in range(steps):
            _apply(cv[2 * k], w, psi, k1)
            for i in range(n):
                k1[i] = mi * k1[i]
                x[i] = psi[i] + half * k1[i]
            _apply(cv[2 * k + 1], w, x, k2)
            for i in range(n):
                k2[i] = mi * k2[i]
                x[i] = psi[i] + half * k2[i]
            _apply(cv[2 * k + 1], w, x, k3)
            for i in range(n):
                k3[i] = mi * k3[i]
                x[i] = psi[i] + dt * k3[i]
            _apply(cv[2 * k + 2], w, x, k4)
            nk = 0.0
            total = 0.0
            for i in range(n):
                psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + mi * k4[i])
                nk += _abs2(psi[i])
                total = total + psi[i]
            d = fabs(sqrt(nk) - n0)
            if d > drift:
                drift = d
            pv[k + 1, 0] = psi[w]
            pv[k + 1, 1] = (total - psi[w]) * inv_rest
    return psi_arr, proj, drift
