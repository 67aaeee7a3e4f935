"""Generic n-order LTI systems: differential-equation and transfer-function
views, conversions both ways, series composition, and forced responses.

Coefficient lists are stored lowest order first: ``alpha[k]`` multiplies the
k-th output derivative and ``beta[k]`` the k-th input derivative in

    sum_k alpha[k] y^(k)(t)  =  sum_k beta[k] x^(k)(t),      m <= n.

Under zero initial conditions the transfer function is the ratio of the two
coefficient polynomials evaluated in ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import (
    RationalFunction,
    poly,
    poly_roots,
    rational_monic,
    rational_mul,
)
from .laplace import LaplaceExpr, inverse, laplace_mul_rf, transform
from .signals import TimeExpr

REAL_COEFF_TOL = 1e-9


@dataclass(frozen=True)
class SystemSpec:
    """Input/output coefficient lists of a scalar linear ODE."""

    alpha: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(v) for v in self.alpha))
        object.__setattr__(self, "beta", tuple(float(v) for v in self.beta))
        if not self.alpha or self.alpha[-1] == 0.0:
            raise ValueError("order violation: leading output coefficient must be nonzero")
        if not self.beta:
            raise ValueError("input coefficient list must not be empty")
        if len(self.beta) > len(self.alpha):
            raise ValueError("input order must not exceed output order (m <= n)")

    @property
    def order(self) -> int:
        return len(self.alpha) - 1


@dataclass(frozen=True)
class TransferFunction:
    """Rational transfer function with its convergence abscissa.

    The denominator is always monic.  Common roots are cancelled by the
    operations that create them (series composition, transform products);
    a function built directly from ODE coefficient lists keeps its
    structural degrees even at degenerate parameter points where a zero
    happens to collide with a pole.
    """

    rf: RationalFunction
    abscissa: float = field(init=False)

    def __post_init__(self):
        rf = rational_monic(self.rf.num, self.rf.den, self.rf.den_roots)
        absc = -math.inf
        if rf.den.degree >= 1:
            roots = rf.den_roots if rf.den_roots is not None else poly_roots(rf.den)
            if rf.den_roots is None:
                # carry the factorization: products built from this function
                # must not rediscover (and possibly miscluster) its poles
                rf = RationalFunction(rf.num, rf.den, roots)
            absc = max(p.real for p in roots.values())
        object.__setattr__(self, "rf", rf)
        object.__setattr__(self, "abscissa", absc)

    def __call__(self, s: complex) -> complex:
        return self.rf(s)


def ode_to_tf(sys: SystemSpec) -> TransferFunction:
    """Transfer function of the ODE under zero initial conditions."""
    return TransferFunction(rational_monic(poly(sys.beta), poly(sys.alpha)))


def tf_to_ode(tf: TransferFunction) -> SystemSpec:
    """Recover coefficient lists from a transfer function.

    Scaled so the constant output coefficient is 1 when the denominator has a
    nonzero constant term (the form the circuit models use), otherwise the
    monic scaling of the canonical denominator is kept.
    """
    num, den = tf.rf.num, tf.rf.den

    def _reals(p):
        out = []
        for c in p.coeffs:
            if abs(c.imag) > REAL_COEFF_TOL * (1.0 + abs(c)):
                raise ValueError("physical systems require real coefficients")
            out.append(c.real)
        return out

    alpha = _reals(den)
    beta = _reals(num)
    if not beta:
        beta = [0.0]
    scale_ref = max(abs(v) for v in alpha)
    if abs(alpha[0]) > 1e-12 * scale_ref:
        scale = 1.0 / alpha[0]
        alpha = [v * scale for v in alpha]
        beta = [v * scale for v in beta]
    return SystemSpec(tuple(alpha), tuple(beta))


def cascade(h1: TransferFunction, h2: TransferFunction) -> TransferFunction:
    """Series composition; common factors cancel through normalization."""
    return TransferFunction(rational_mul(h1.rf, h2.rf))


def tf_apply(tf: TransferFunction, X: LaplaceExpr) -> LaplaceExpr:
    """Output transform ``H(s) * X(s)``."""
    return laplace_mul_rf(X, tf.rf)


def forced_response(sys: SystemSpec, x: TimeExpr) -> TimeExpr:
    """Time-domain output for input ``x`` under zero initial conditions.

    Computed as the inverse transform of ``H(s) * X(s)``; the product must be
    proper term by term, otherwise the response would contain impulsive
    components outside the signal class.
    """
    H = ode_to_tf(sys)
    Y = tf_apply(H, transform(x))
    for _, rf in Y.terms:
        if rf.num.degree >= rf.den.degree:
            raise ValueError("improper product")
    return inverse(Y)
