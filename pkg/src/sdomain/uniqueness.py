"""Transform-uniqueness machinery.

Two transforms are equal exactly when their normalized delay-tagged term
lists cross-multiply to the same polynomials; by Lerch's theorem that decides
equality of the underlying causal signals.  The sampling check exercises the
integer-abscissa form of the same statement: beyond a threshold derived from
the growth bounds, agreement of the transforms at the integers already forces
the signals to coincide.  Both the moment zero-test and the logarithmic
change-of-variables check are quadrature-backed, certified versions of the
lemmas that proof rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .laplace import LaplaceExpr, transform
from .oracle import DEFAULT_QUADRATURE, _gauss_legendre, numeric_laplace
from .signals import TimeExpr, growth_bound, time_eval_grid

CROSS_COEFF_RTOL = 1e-9
DELAY_MATCH_TOL = 1e-9
SAMPLE_GAP_TOL = 1e-6
MOMENT_RTOL = 1e-9
MAX_PROJECTION_DEGREE = 64

LOG_PANELS = 40
LOG_NODES = 24


@dataclass(frozen=True)
class MomentReport:
    """Outcome of the moment zero-test on one interval."""

    interval: tuple[float, float]
    max_degree: int
    moments: tuple[float, ...]
    residual_l2: float
    certified_l2_bound: float | None  # None means inconclusive


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Exact and sampled transform-equality flags for a pair of signals."""

    exact_equal: bool
    sampled_equal: bool
    sample_points: tuple[complex, ...]
    max_sample_gap: float
    threshold_N: float


@dataclass(frozen=True)
class LogSubstitutionResult:
    lhs: complex
    rhs: complex
    gap: float


def transform_equal(F: LaplaceExpr, G: LaplaceExpr) -> bool:
    """Exact equality of transforms as delay-tagged rational functions.

    Per matched delay the cross-multiplied polynomial identity
    ``num_F * den_G == num_G * den_F`` is required coefficientwise to
    relative tolerance; term lists are already canonical by construction.
    """
    if len(F.terms) != len(G.terms):
        return False
    for (df, rf), (dg, rg) in zip(F.terms, G.terms):
        if abs(df - dg) > DELAY_MATCH_TOL * (1.0 + abs(df)):
            return False
        left = rf.num * rg.den
        right = rg.num * rf.den
        width = max(len(left.coeffs), len(right.coeffs))
        lc = list(left.coeffs) + [0j] * (width - len(left.coeffs))
        rc = list(right.coeffs) + [0j] * (width - len(right.coeffs))
        scale = max(
            max((abs(c) for c in lc), default=0.0),
            max((abs(c) for c in rc), default=0.0),
            1e-300,
        )
        if any(abs(a - b) > CROSS_COEFF_RTOL * scale for a, b in zip(lc, rc)):
            return False
    return True


def lerch_sample_check(
    f: TimeExpr, g: TimeExpr, count: int, tol: float = SAMPLE_GAP_TOL
) -> EquivalenceVerdict:
    """Compare two signals through their transforms at integer points.

    The threshold ``N`` is the smallest integer strictly above ``a + 1``
    where ``a`` bounds both growth rates; the transforms are then evaluated
    at ``s = N, ..., N + count - 1`` by the quadrature oracle, never through
    the symbolic path, so the sampled flag is an independent measurement.
    """
    if count < 3:
        raise ValueError("at least 3 sample points required")
    a = max(growth_bound(f).a, growth_bound(g).a)
    threshold = math.floor(a + 1.0) + 1
    points = tuple(complex(threshold + k) for k in range(count))
    gap = 0.0
    for s in points:
        gap = max(gap, abs(numeric_laplace(f, s) - numeric_laplace(g, s)))
    return EquivalenceVerdict(
        exact_equal=transform_equal(transform(f), transform(g)),
        sampled_equal=gap <= tol,
        sample_points=points,
        max_sample_gap=gap,
        threshold_N=float(threshold),
    )


def _legendre_rows(u: np.ndarray, max_degree: int) -> np.ndarray:
    """Legendre polynomial values P_0..P_K on points in [-1, 1], shape (K+1, len(u))."""
    rows = np.empty((max_degree + 1, len(u)))
    rows[0] = 1.0
    if max_degree >= 1:
        rows[1] = u
    for k in range(1, max_degree):
        rows[k + 1] = ((2 * k + 1) * u * rows[k] - k * rows[k - 1]) / (k + 1)
    return rows


def _quad_points(a: float, b: float, panels: int = 32, nodes: int = 32):
    base_x, base_w = _gauss_legendre(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    w = (half[:, None] * base_w[None, :]).ravel()
    return x, w


def _eval_phi(phi, x: np.ndarray) -> np.ndarray:
    try:
        values = np.asarray(phi(x), dtype=np.float64)
        if values.shape == x.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([float(phi(float(v))) for v in x])


def moment_zero_test(phi, a: float, b: float, max_degree: int) -> MomentReport:
    """Moments of ``phi`` against ``x**n`` plus a certified smallness bound.

    The best L2 polynomial approximation ``p`` of degree ``max_degree`` is
    computed by Legendre projection.  When every moment up to that degree
    vanishes, ``p`` is a combination of vanishing integrals, so
    ``int phi**2 = int phi (phi - p) <= ||phi|| ||phi - p||`` certifies
    ``||phi|| <= ||phi - p||``; the report then carries the residual as a
    numeric bound, otherwise it is inconclusive.
    """
    if a >= b:
        raise ValueError("invalid interval: require a < b")
    if max_degree < 0 or max_degree > MAX_PROJECTION_DEGREE:
        raise ValueError("projection degree cap: 0 <= max_degree <= 64")

    x, w = _quad_points(a, b)
    values = _eval_phi(phi, x)
    sup = float(np.max(np.abs(values))) if values.size else 0.0

    moments = tuple(float(np.dot(w, x**n * values)) for n in range(max_degree + 1))

    u = (2.0 * x - (a + b)) / (b - a)
    rows = _legendre_rows(u, max_degree)
    # orthogonality on [a, b]: int P_m P_n = (b - a) / (2n + 1) delta_mn
    coeffs = np.array(
        [
            (2 * n + 1) / (b - a) * float(np.dot(w, rows[n] * values))
            for n in range(max_degree + 1)
        ]
    )
    projection = coeffs @ rows
    residual = float(math.sqrt(max(np.dot(w, (values - projection) ** 2), 0.0)))

    tol = MOMENT_RTOL * (b - a) * sup
    certified = residual if all(abs(m) <= tol for m in moments) else None
    return MomentReport(
        interval=(float(a), float(b)),
        max_degree=int(max_degree),
        moments=moments,
        residual_l2=residual,
        certified_l2_bound=certified,
    )


def log_substitution_check(h: TimeExpr, n: int) -> LogSubstitutionResult:
    """Check ``int_0^inf h(t) e^(-n t) dt == int_0^1 h(-log x) x^(n-1) dx``.

    The right-hand integrand is bounded under the growth precondition but the
    substitution is singular at ``x = 0``; geometric panel refinement toward
    the origin with interior Gauss-Legendre nodes (which never touch the
    endpoints) handles that.
    """
    gb = growth_bound(h)
    if n <= gb.a + 1.0:
        raise ValueError("sample index must exceed growth rate + 1")

    lhs = numeric_laplace(h, complex(n), DEFAULT_QUADRATURE)

    # geometric ladder toward the singular endpoint, split additionally at the
    # images of gate onsets where the integrand jumps
    edges = {1.0}
    right = 1.0
    for _ in range(LOG_PANELS):
        right /= 2.0
        edges.add(right)
    floor = right
    for m in h.modes:
        x0 = math.exp(-m.shift)
        if floor < x0 < 1.0:
            edges.add(x0)
    ladder = sorted(edges)

    base_x, base_w = _gauss_legendre(LOG_NODES)
    rhs = 0j
    for left, right in zip(ladder[:-1], ladder[1:]):
        half = 0.5 * (right - left)
        mid = 0.5 * (right + left)
        x = mid + half * base_x
        w = half * base_w
        values = time_eval_grid(h, -np.log(x)) * x ** (n - 1)
        rhs += complex(np.dot(w, values))
    return LogSubstitutionResult(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs))
