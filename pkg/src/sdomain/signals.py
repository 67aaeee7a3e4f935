"""Exponential-polynomial time signals.

A signal is a finite sum of gated modes ``amplitude * (t - shift)**power *
exp(exponent*(t - shift))`` active for ``t >= shift``.  The class is closed
under addition, scaling, differentiation (away from gate onsets), running
integration, time shifting and sinusoidal modulation, which is exactly what
makes symbolic transform round trips possible.  Real signals are represented
with conjugate mode pairs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels

GROWTH_EPS = 1e-6
GROWTH_GRID_END = 100.0
GROWTH_GRID_STEP = 0.01


@dataclass(frozen=True)
class Mode:
    """One gated term ``amplitude * (t-shift)**power * exp(exponent*(t-shift))``."""

    amplitude: complex
    power: int
    exponent: complex
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "exponent", complex(self.exponent))
        object.__setattr__(self, "shift", float(self.shift))
        if self.power < 0 or int(self.power) != self.power:
            raise ValueError("mode power must be a nonnegative integer")
        object.__setattr__(self, "power", int(self.power))
        if self.shift < 0:
            raise ValueError("causal signals only: mode shift must be >= 0")


def _canonical_modes(modes) -> tuple[Mode, ...]:
    acc: dict[tuple[float, complex, int], complex] = {}
    for m in modes:
        key = (m.shift, m.exponent, m.power)
        acc[key] = acc.get(key, 0j) + m.amplitude
    out = [
        Mode(a, power, lam, shift)
        for (shift, lam, power), a in acc.items()
        if a != 0
    ]
    out.sort(key=lambda m: (m.shift, m.exponent.real, m.exponent.imag, m.power))
    return tuple(out)


@dataclass(frozen=True)
class TimeExpr:
    """Canonical finite sum of modes (sorted, merged, zero amplitudes dropped)."""

    modes: tuple[Mode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "modes", _canonical_modes(self.modes))

    @property
    def is_zero(self) -> bool:
        return not self.modes

    def __add__(self, other: "TimeExpr") -> "TimeExpr":
        return TimeExpr(self.modes + other.modes)

    def __sub__(self, other: "TimeExpr") -> "TimeExpr":
        return self + (-1.0) * other

    def __neg__(self) -> "TimeExpr":
        return (-1.0) * self

    def __mul__(self, c) -> "TimeExpr":
        c = complex(c)
        return TimeExpr(
            tuple(Mode(m.amplitude * c, m.power, m.exponent, m.shift) for m in self.modes)
        )

    __rmul__ = __mul__

    def __call__(self, t: float) -> complex:
        return time_eval(self, t)


@dataclass(frozen=True)
class GrowthBound:
    """Certificate ``|f(t)| <= M * exp(a*t)`` for ``t >= 0``."""

    M: float
    a: float

    def __post_init__(self):
        if self.M <= 0:
            raise ValueError("growth bound requires M > 0")


SIGNAL_ZERO = TimeExpr()


def time_expr(modes) -> TimeExpr:
    return TimeExpr(tuple(modes))


def unit_step(shift: float = 0.0) -> TimeExpr:
    return TimeExpr((Mode(1.0, 0, 0.0, shift),))


def exponential(rate, amplitude=1.0, power: int = 0, shift: float = 0.0) -> TimeExpr:
    """``amplitude * (t-shift)**power * exp(rate*(t-shift))`` gated at ``shift``."""
    return TimeExpr((Mode(amplitude, power, rate, shift),))


def cosine(omega: float, rate=0.0, shift: float = 0.0) -> TimeExpr:
    """``cos(omega*(t-shift)) * exp(rate*(t-shift))`` as a conjugate pair."""
    return TimeExpr(
        (
            Mode(0.5, 0, complex(rate) + 1j * omega, shift),
            Mode(0.5, 0, complex(rate) - 1j * omega, shift),
        )
    )


def sine(omega: float, rate=0.0, shift: float = 0.0) -> TimeExpr:
    """``sin(omega*(t-shift)) * exp(rate*(t-shift))`` as a conjugate pair."""
    return TimeExpr(
        (
            Mode(-0.5j, 0, complex(rate) + 1j * omega, shift),
            Mode(0.5j, 0, complex(rate) - 1j * omega, shift),
        )
    )


def _mode_arrays(f: TimeExpr):
    amp = np.array([m.amplitude for m in f.modes], dtype=np.complex128)
    power = np.array([m.power for m in f.modes], dtype=np.int64)
    lam = np.array([m.exponent for m in f.modes], dtype=np.complex128)
    shift = np.array([m.shift for m in f.modes], dtype=np.float64)
    return amp, power, lam, shift


def time_eval(f: TimeExpr, t: float) -> complex:
    """Value of the signal at a single nonnegative time."""
    if t < 0:
        raise ValueError("causal signals only: t must be >= 0")
    acc = 0j
    for m in f.modes:
        d = t - m.shift
        if d < 0:
            continue
        acc += m.amplitude * d**m.power * cmath.exp(m.exponent * d)
    return acc


def time_eval_grid(f: TimeExpr, ts) -> np.ndarray:
    """Vectorized evaluation on an array of nonnegative times."""
    ts = np.asarray(ts, dtype=np.float64)
    if ts.size and float(ts.min()) < 0:
        raise ValueError("causal signals only: t must be >= 0")
    if not f.modes:
        return np.zeros(ts.shape, dtype=np.complex128)
    return kernels.eval_modes(*_mode_arrays(f), ts)


def time_derivative(f: TimeExpr) -> TimeExpr:
    """Termwise derivative; defined only when no mode is gated (shift 0)."""
    if any(m.shift != 0 for m in f.modes):
        raise ValueError("non-differentiable gated expression")
    out: list[Mode] = []
    for m in f.modes:
        if m.power >= 1:
            out.append(Mode(m.amplitude * m.power, m.power - 1, m.exponent))
        out.append(Mode(m.amplitude * m.exponent, m.power, m.exponent))
    return TimeExpr(tuple(out))


def time_integral(f: TimeExpr) -> TimeExpr:
    """Running integral ``t -> integral of f over [0, t]`` for ungated signals."""
    if any(m.shift != 0 for m in f.modes):
        raise ValueError("running integral implemented for ungated expressions only")
    out: list[Mode] = []
    for m in f.modes:
        lam, n, a = m.exponent, m.power, m.amplitude
        if lam == 0:
            out.append(Mode(a / (n + 1), n + 1, 0.0))
            continue
        # integral of t^k exp(lam t) by parts, iterated down to k = 0
        coeff = a
        for k in range(n, -1, -1):
            out.append(Mode(coeff / lam, k, lam))
            coeff = -coeff * k / lam
        # accumulated constant (value of the antiderivative at 0, negated)
        const = -a * math.factorial(n) * (-1.0 / lam) ** n / lam
        out.append(Mode(const, 0, 0.0))
    return TimeExpr(tuple(out))


def time_shift(f: TimeExpr, a: float) -> TimeExpr:
    """Delay the whole signal by ``a`` seconds (gates move with it)."""
    if a < 0:
        raise ValueError("causal signals only: delay must be >= 0")
    return TimeExpr(
        tuple(Mode(m.amplitude, m.power, m.exponent, m.shift + a) for m in f.modes)
    )


def time_modulate(f: TimeExpr, omega: float, kind: str) -> TimeExpr:
    """Multiply by ``cos(omega*t)`` or ``sin(omega*t)`` inside the class.

    Each mode splits into a conjugate-shifted pair; a gate at ``a`` picks up
    the phase ``exp(+-1j*omega*a)`` so the product is exact for t >= a.
    """
    if kind not in ("cosine", "sine"):
        raise ValueError("kind must be 'cosine' or 'sine'")
    if omega <= 0:
        raise ValueError("modulation frequency must be positive")
    out: list[Mode] = []
    for m in f.modes:
        phase = cmath.exp(1j * omega * m.shift)
        if kind == "cosine":
            wp, wm = 0.5, 0.5
        else:
            wp, wm = -0.5j, 0.5j
        out.append(Mode(m.amplitude * wp * phase, m.power, m.exponent + 1j * omega, m.shift))
        out.append(
            Mode(m.amplitude * wm / phase, m.power, m.exponent - 1j * omega, m.shift)
        )
    return TimeExpr(tuple(out))


def growth_bound(f: TimeExpr) -> GrowthBound:
    """Exponential-order certificate.

    The rate is the largest mode decay rate plus a small slack that absorbs
    the polynomial factors; the constant is maximized on a fixed verification
    grid.  The zero signal gets the conventional certificate (M=1, a=0).
    """
    if f.is_zero:
        return GrowthBound(1.0, 0.0)
    a = max(m.exponent.real for m in f.modes) + GROWTH_EPS
    grid = np.arange(0.0, GROWTH_GRID_END + GROWTH_GRID_STEP / 2, GROWTH_GRID_STEP)
    norms = np.abs(time_eval_grid(f, grid))
    m = float(np.max(norms * np.exp(-a * grid))) * (1.0 + 1e-9)
    if m <= 0:
        m = 1.0
    return GrowthBound(m, a)


def time_equal(f: TimeExpr, g: TimeExpr, tol: float) -> bool:
    """Mode-for-mode comparison of canonical forms.

    Modes pair up when their (power, shift, exponent) agree within ``tol``;
    paired amplitudes must agree within ``tol`` and unpaired modes must have
    amplitude within ``tol`` of zero.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    gm = list(g.modes)
    used = [False] * len(gm)
    for m in f.modes:
        best, best_d = None, None
        for j, o in enumerate(gm):
            if used[j] or o.power != m.power:
                continue
            d = max(abs(o.shift - m.shift), abs(o.exponent - m.exponent))
            if d <= tol and (best_d is None or d < best_d):
                best, best_d = j, d
        if best is None:
            if abs(m.amplitude) > tol:
                return False
        else:
            used[best] = True
            if abs(m.amplitude - gm[best].amplitude) > tol:
                return False
    return all(used[j] or abs(o.amplitude) <= tol for j, o in enumerate(gm))


def max_imag_on_grid(f: TimeExpr, ts) -> float:
    """Largest imaginary part of the signal on a grid.

    Physically real signals built from conjugate pairs should stay below
    1e-9 here; the checker exists so tests and callers can assert that.
    """
    values = time_eval_grid(f, ts)
    return float(np.max(np.abs(values.imag))) if values.size else 0.0
