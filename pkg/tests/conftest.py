"""Shared random-instance generators for the property suites.

Everything is seeded by the caller; tests stay deterministic.
"""

from __future__ import annotations

import numpy as np

from sdomain.signals import Mode, TimeExpr

SHIFT_CHOICES = (0.0, 1.0, 2.5)


def random_signal(
    rng: np.random.Generator,
    max_modes: int = 4,
    max_power: int = 3,
    re_range: tuple[float, float] = (-5.0, 1.0),
    im_range: tuple[float, float] = (-3.0, 3.0),
    shifts: tuple[float, ...] = SHIFT_CHOICES,
) -> TimeExpr:
    """Random exponential-polynomial signal with bounded mode parameters."""
    n_modes = int(rng.integers(1, max_modes + 1))
    modes = []
    for _ in range(n_modes):
        amp = complex(rng.uniform(0.3, 2.0) * rng.choice((-1.0, 1.0)))
        if rng.random() < 0.3:
            amp += 1j * rng.uniform(-1.0, 1.0)
        power = int(rng.integers(0, max_power + 1))
        lam = complex(rng.uniform(*re_range), rng.uniform(*im_range) * (rng.random() < 0.5))
        shift = float(rng.choice(shifts))
        modes.append(Mode(amp, power, lam, shift))
    return TimeExpr(tuple(modes))


def random_decaying_signal(rng: np.random.Generator, **kwargs) -> TimeExpr:
    """Random signal whose modes all decay (negative real exponents)."""
    kwargs.setdefault("re_range", (-3.0, -0.2))
    return random_signal(rng, **kwargs)


def random_ungated_signal(rng: np.random.Generator, **kwargs) -> TimeExpr:
    """Random signal with every mode gated at zero (differentiable on [0, inf))."""
    kwargs.setdefault("shifts", (0.0,))
    return random_signal(rng, **kwargs)


def random_stable_system(rng: np.random.Generator, max_order: int = 3):
    """Random (alpha, beta) lists with all characteristic roots in Re < 0."""
    from sdomain.algebra import ONE, poly, poly_mul
    from sdomain.systems import SystemSpec

    order = int(rng.integers(1, max_order + 1))
    char = ONE
    remaining = order
    while remaining > 0:
        if remaining >= 2 and rng.random() < 0.4:
            re = -rng.uniform(0.3, 3.0)
            im = rng.uniform(0.3, 3.0)
            char = poly_mul(char, poly([re * re + im * im, -2.0 * re, 1.0]))
            remaining -= 2
        else:
            p = -rng.uniform(0.3, 3.0)
            char = poly_mul(char, poly([-p, 1.0]))
            remaining -= 1
    alpha = tuple(c.real for c in char.coeffs)
    m = int(rng.integers(0, order + 1))
    beta = [float(rng.uniform(-2.0, 2.0)) for _ in range(m + 1)]
    if abs(beta[-1]) < 0.2:
        beta[-1] = 0.5 * (1.0 if beta[-1] >= 0 else -1.0)
    return SystemSpec(alpha, tuple(beta))
