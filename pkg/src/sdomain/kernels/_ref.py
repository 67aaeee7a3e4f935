"""Pure-numpy reference implementation of the numerical kernels.

Two hot loops live here: evaluation of gated exponential-polynomial signals on
dense time grids (the workhorse of the quadrature oracle and of every grid
check), and fixed-step RK4 integration of a companion-form LTI realization.
The compiled extension in ``_fast`` provides the same two entry points with
identical semantics; this module is the always-available fallback and the
ground truth the extension is tested against.
"""

from __future__ import annotations

import numpy as np

STATE_LIMIT = 1e12


def eval_modes(amp, power, lam, shift, t):
    """Evaluate ``sum_j amp[j] * (t - shift[j])**power[j] * exp(lam[j]*(t - shift[j])))``
    with each term gated to ``t >= shift[j]``.

    Parameters
    ----------
    amp, lam : complex128 arrays, shape (m,)
    power : int64 array, shape (m,)
    shift : float64 array, shape (m,)
    t : float64 array, shape (k,)

    Returns
    -------
    complex128 array, shape (k,)
    """
    amp = np.asarray(amp, dtype=np.complex128)
    power = np.asarray(power, dtype=np.int64)
    lam = np.asarray(lam, dtype=np.complex128)
    shift = np.asarray(shift, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)

    out = np.zeros(t.shape, dtype=np.complex128)
    for j in range(len(amp)):
        dt = t - shift[j]
        live = dt >= 0.0
        d = np.where(live, dt, 0.0)
        term = amp[j] * d ** power[j] * np.exp(lam[j] * d)
        out += np.where(live, term, 0.0)
    return out


def rk4_companion(a, c, d, u, dt):
    """Integrate a companion-form SISO system with classical RK4.

    The state follows ``z' = A z + e_n u`` where ``A`` is the controllable
    companion matrix with last row ``-a``; the output is ``y = c . z + d*u``.
    The input ``u`` must be sampled on the half-step grid ``0, dt/2, dt, ...``
    (length ``2*steps + 1``), which makes the midpoint stage values exact.

    Parameters
    ----------
    a : float64 array, shape (n,)
        Monic characteristic coefficients, ascending (a[k] multiplies z_k).
    c : float64 array, shape (n,)
        Output mixing row.
    d : float
        Direct feedthrough.
    u : complex128 array, shape (2*steps + 1,)
    dt : float

    Returns
    -------
    (y, states) : complex128 arrays of shape (steps + 1,) and (steps + 1, n)

    Raises
    ------
    ArithmeticError
        If the state magnitude exceeds ``STATE_LIMIT``.
    """
    a = np.asarray(a, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    u = np.asarray(u, dtype=np.complex128)
    n = len(a)
    steps = (len(u) - 1) // 2

    z = np.zeros(n, dtype=np.complex128)
    states = np.empty((steps + 1, n), dtype=np.complex128)
    y = np.empty(steps + 1, dtype=np.complex128)
    states[0] = z
    y[0] = c @ z + d * u[0]

    def deriv(state, uval):
        dz = np.empty(n, dtype=np.complex128)
        dz[:-1] = state[1:]
        dz[-1] = uval - a @ state
        return dz

    for i in range(steps):
        u0 = u[2 * i]
        um = u[2 * i + 1]
        u1 = u[2 * i + 2]
        k1 = deriv(z, u0)
        k2 = deriv(z + (0.5 * dt) * k1, um)
        k3 = deriv(z + (0.5 * dt) * k2, um)
        k4 = deriv(z + dt * k3, u1)
        z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.max(np.abs(z)) > STATE_LIMIT:
            raise ArithmeticError("divergence - reduce dt or check stability")
        states[i + 1] = z
        y[i + 1] = c @ z + d * u1
    return y, states
