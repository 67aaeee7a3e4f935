"""Independent numerical ground truth.

``numeric_laplace`` integrates the defining integral
``int_0^inf f(t) exp(-s*t) dt`` by panel-wise Gauss-Legendre quadrature with
an analytic truncation point derived from the signal's exponential-order
certificate.  ``rk4_solve`` integrates the underlying differential equation
with classical fixed-step RK4 on a companion-form state-space realization.

Neither routine touches the symbolic transform machinery: agreement between
the two paths is something the test suite asserts, never something this
module assumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .signals import TimeExpr, growth_bound, time_eval_grid

if TYPE_CHECKING:  # only the (alpha, beta) duck type is used at runtime
    from .systems import SystemSpec

CONVERGENCE_MARGIN = 0.1
MAX_TRUNCATION = 5000.0


@dataclass(frozen=True)
class QuadratureConfig:
    panel_count: int = 64
    nodes_per_panel: int = 16
    tail_tol: float = 1e-10

    def __post_init__(self):
        if self.panel_count <= 0 or self.nodes_per_panel <= 0 or self.tail_tol <= 0:
            raise ValueError("quadrature configuration fields must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class OdeGrid:
    """Uniform time grid with state and output samples."""

    t: np.ndarray
    states: np.ndarray
    output: np.ndarray
    dt: float

    @property
    def t_max(self) -> float:
        return float(self.t[-1])

    @property
    def samples(self):
        return tuple(zip(self.t.tolist(), (row for row in self.states)))


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _panel_nodes(left: float, right: float, panels: int, nodes: int):
    """All Gauss-Legendre nodes/weights for a uniform panel split of [left, right]."""
    base_x, base_w = _gauss_legendre(nodes)
    edges = np.linspace(left, right, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    w = (half[:, None] * base_w[None, :]).ravel()
    return x, w


def numeric_laplace(
    f: TimeExpr, s: complex, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> complex:
    """Quadrature of the transform integral truncated at an analytic tail bound.

    The exponential-order certificate (M, a) gives
    ``|tail| <= M * exp((a - Re s) * T) / (Re s - a)``; T is chosen so that
    bound falls below ``cfg.tail_tol``.  Panels are split at gate onsets so
    each panel integrand is smooth.
    """
    s = complex(s)
    gb = growth_bound(f)
    gap = s.real - gb.a
    if gap <= CONVERGENCE_MARGIN:
        raise ValueError("outside guaranteed convergence")
    if f.is_zero:
        return 0j

    T = math.log(max(gb.M, 1.0) / (cfg.tail_tol * gap)) / gap
    T = min(max(T, 1.0, max(m.shift for m in f.modes) + 1.0), MAX_TRUNCATION)

    breakpoints = sorted({0.0, T, *(m.shift for m in f.modes if 0.0 < m.shift < T)})
    total = 0j
    for left, right in zip(breakpoints[:-1], breakpoints[1:]):
        x, w = _panel_nodes(left, right, cfg.panel_count, cfg.nodes_per_panel)
        values = time_eval_grid(f, x) * np.exp(-s * x)
        total += complex(np.dot(w, values))
    return total


def companion_realization(alpha, beta):
    """Controllable companion form of the scalar ODE coefficient lists.

    Returns ``(a, c, d)`` where the state obeys ``z' = A z + e_n u`` with the
    companion matrix's last row ``-a``, and ``y = c . z + d * u``.
    """
    alpha = [float(v) for v in alpha]
    beta = [float(v) for v in beta]
    n = len(alpha) - 1
    lead = alpha[-1]
    a = np.array([v / lead for v in alpha[:-1]], dtype=np.float64)
    b = np.zeros(n + 1)
    for k, v in enumerate(beta):
        b[k] = v / lead
    d = b[n]
    c = b[:n] - d * a
    return a, c, float(d)


def rk4_solve(sys: "SystemSpec", x: TimeExpr, t_max: float, dt: float) -> OdeGrid:
    """Fixed-step RK4 solution of the system driven by ``x``, zero initial state.

    The input is sampled on the half-step grid so the midpoint stages are
    exact.  State blow-up beyond the kernel limit raises ``ArithmeticError``.
    """
    if t_max <= 0 or dt <= 0:
        raise ValueError("t_max and dt must be positive")
    if dt > t_max / 100.0:
        raise ValueError("dt too coarse: require dt <= t_max / 100")

    steps = int(round(t_max / dt))
    t = np.arange(steps + 1) * dt
    half_grid = np.arange(2 * steps + 1) * (dt / 2.0)
    u = time_eval_grid(x, half_grid)

    alpha, beta = sys.alpha, sys.beta
    n = len(alpha) - 1
    if n == 0:
        y = (beta[0] / alpha[0]) * u[::2]
        return OdeGrid(t, np.zeros((steps + 1, 0), dtype=np.complex128), y, dt)

    a, c, d = companion_realization(alpha, beta)
    y, states = kernels.rk4_companion(a, c, d, u, dt)
    return OdeGrid(t, states, y, dt)
