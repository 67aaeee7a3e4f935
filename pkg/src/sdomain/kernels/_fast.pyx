# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels: gated mode evaluation and companion-form RK4.

Mirrors ``_ref`` exactly; see that module for the contract.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, sin

cnp.import_array()

STATE_LIMIT = 1e12

cdef inline double complex _cexp(double complex z) noexcept:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * m * sin(z.imag)


def eval_modes(amp, power, lam, shift, t):
    """See ``sdomain.kernels._ref.eval_modes``."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] amp_a = np.ascontiguousarray(amp, dtype=np.complex128)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pow_a = np.ascontiguousarray(power, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] lam_a = np.ascontiguousarray(lam, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] shift_a = np.ascontiguousarray(shift, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t_a = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t m = amp_a.shape[0]
    cdef Py_ssize_t k = t_a.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(k, dtype=np.complex128)

    cdef Py_ssize_t i, j, q
    cdef double d
    cdef long n
    cdef double complex acc, mono
    for i in range(k):
        acc = 0.0
        for j in range(m):
            d = t_a[i] - shift_a[j]
            if d < 0.0:
                continue
            n = pow_a[j]
            mono = 1.0
            for q in range(n):
                mono = mono * d
            acc = acc + amp_a[j] * mono * _cexp(lam_a[j] * d)
        out[i] = acc
    return out


def rk4_companion(a, c, d, u, double dt):
    """See ``sdomain.kernels._ref.rk4_companion``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a_a = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c_a = np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] u_a = np.ascontiguousarray(u, dtype=np.complex128)
    cdef double d_f = d
    cdef Py_ssize_t n = a_a.shape[0]
    cdef Py_ssize_t steps = (u_a.shape[0] - 1) // 2

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y = np.empty(steps + 1, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] states = np.empty((steps + 1, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.zeros(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zs = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] k1 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] k2 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] k3 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] k4 = np.empty(n, dtype=np.complex128)

    cdef Py_ssize_t i, j
    cdef double complex acc, u0, um, u1
    cdef double mag, limit = STATE_LIMIT

    for j in range(n):
        states[0, j] = 0.0
    y[0] = d_f * u_a[0]

    for i in range(steps):
        u0 = u_a[2 * i]
        um = u_a[2 * i + 1]
        u1 = u_a[2 * i + 2]

        # k1 = f(z, u0)
        for j in range(n - 1):
            k1[j] = z[j + 1]
        acc = 0.0
        for j in range(n):
            acc = acc + a_a[j] * z[j]
        k1[n - 1] = u0 - acc

        # k2 = f(z + dt/2 k1, um)
        for j in range(n):
            zs[j] = z[j] + 0.5 * dt * k1[j]
        for j in range(n - 1):
            k2[j] = zs[j + 1]
        acc = 0.0
        for j in range(n):
            acc = acc + a_a[j] * zs[j]
        k2[n - 1] = um - acc

        # k3 = f(z + dt/2 k2, um)
        for j in range(n):
            zs[j] = z[j] + 0.5 * dt * k2[j]
        for j in range(n - 1):
            k3[j] = zs[j + 1]
        acc = 0.0
        for j in range(n):
            acc = acc + a_a[j] * zs[j]
        k3[n - 1] = um - acc

        # k4 = f(z + dt k3, u1)
        for j in range(n):
            zs[j] = z[j] + dt * k3[j]
        for j in range(n - 1):
            k4[j] = zs[j + 1]
        acc = 0.0
        for j in range(n):
            acc = acc + a_a[j] * zs[j]
        k4[n - 1] = u1 - acc

        mag = 0.0
        acc = 0.0
        for j in range(n):
            z[j] = z[j] + (dt / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            states[i + 1, j] = z[j]
            acc = acc + c_a[j] * z[j]
            if abs(z[j]) > mag:
                mag = abs(z[j])
        if mag > limit:
            raise ArithmeticError("divergence - reduce dt or check stability")
        y[i + 1] = acc + d_f * u1
    return y, states
