"""Symbolic Laplace transforms of exponential-polynomial signals.

Transforms are finite sums of delay-tagged rational functions,
``sum_i exp(-delay_i * s) * R_i(s)``, together with the abscissa of
convergence (the largest pole real part).  The class is closed under every
operation exposed here, which is what makes exact equality testing possible:
no opaque integrals are ever stored.

The base pair is ``t**n * exp(lam*t)  <->  n!/(s - lam)**(n+1)``; a gate at
``t = a`` contributes the delay factor ``exp(-a*s)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import (
    RationalFunction,
    RootSet,
    partial_fractions,
    poly,
    poly_eval,
    poly_inf_norm,
    poly_pow,
    poly_roots,
    poly_scale,
    poly_trim_trailing,
    rational_add,
    rational_mul,
    rational_normalize,
    rational_scale,
    taylor_shift,
)
from .signals import Mode, TimeExpr, time_derivative, time_eval, time_modulate

DELAY_MERGE_TOL = 1e-9
POLE_GUARD = 1e-9


class TransformTerm(NamedTuple):
    delay: float
    rf: RationalFunction


def _term_poles(rf: RationalFunction) -> tuple[complex, ...]:
    if rf.den.degree < 1:
        return ()
    if rf.den_roots is not None:
        return rf.den_roots.values()
    return poly_roots(rf.den).values()


def _merge_terms(terms) -> tuple[TransformTerm, ...]:
    cleaned = []
    for delay, rf in terms:
        rf = rational_normalize(rf)
        if not rf.is_zero:
            cleaned.append(TransformTerm(float(delay), rf))
    cleaned.sort(key=lambda t: t.delay)
    merged: list[TransformTerm] = []
    for term in cleaned:
        if merged and abs(term.delay - merged[-1].delay) <= DELAY_MERGE_TOL * (
            1.0 + merged[-1].delay
        ):
            prev = merged.pop()
            rf = rational_add(prev.rf, term.rf)
            if not rf.is_zero:
                merged.append(TransformTerm(prev.delay, rf))
        else:
            merged.append(term)
    return tuple(merged)


@dataclass(frozen=True)
class LaplaceExpr:
    """Sum of delayed rational terms; terms sorted by delay, one per delay."""

    terms: tuple[TransformTerm, ...] = ()
    abscissa: float = field(init=False)

    def __post_init__(self):
        merged = _merge_terms(self.terms)
        object.__setattr__(self, "terms", merged)
        absc = -math.inf
        for term in merged:
            for p in _term_poles(term.rf):
                absc = max(absc, p.real)
        object.__setattr__(self, "abscissa", absc)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaplaceExpr") -> "LaplaceExpr":
        return LaplaceExpr(self.terms + other.terms)

    def __sub__(self, other: "LaplaceExpr") -> "LaplaceExpr":
        return self + laplace_scale(other, -1.0)

    def __mul__(self, c) -> "LaplaceExpr":
        return laplace_scale(self, c)

    __rmul__ = __mul__

    def __call__(self, s: complex) -> complex:
        return laplace_eval(self, s)


LAPLACE_ZERO = LaplaceExpr()


def laplace_expr(terms) -> LaplaceExpr:
    return LaplaceExpr(tuple(TransformTerm(float(d), rf) for d, rf in terms))


def _mode_group_rf(lam: complex, amps_by_power: dict[int, complex]) -> RationalFunction:
    """Sum of ``amp * n!/(s-lam)**(n+1)`` over one exponent, built exactly.

    In the local variable ``u = s - lam`` the sum is ``num_u(u)/u**m`` with
    ``m = max(n) + 1``; recomposing ``num_u(s - lam)`` gives the numerator.
    """
    m = max(amps_by_power) + 1
    num_u = [0j] * m
    for n, amp in amps_by_power.items():
        num_u[m - 1 - n] += amp * math.factorial(n)
    num = taylor_shift(poly(num_u), -lam)
    den = poly_pow(poly((-lam, 1.0)), m)
    return RationalFunction(num, den, RootSet(((lam, m),)))


def transform(f: TimeExpr) -> LaplaceExpr:
    """Symbolic transform; every mode maps to a delayed rational term."""
    by_shift: dict[float, dict[complex, dict[int, complex]]] = {}
    for m in f.modes:
        by_shift.setdefault(m.shift, {}).setdefault(m.exponent, {})
        group = by_shift[m.shift][m.exponent]
        group[m.power] = group.get(m.power, 0j) + m.amplitude
    terms = []
    for shift, groups in by_shift.items():
        rf = None
        for lam, amps in groups.items():
            part = _mode_group_rf(lam, amps)
            rf = part if rf is None else rational_add(rf, part)
        if rf is not None and not rf.is_zero:
            terms.append(TransformTerm(shift, rf))
    return LaplaceExpr(tuple(terms))


def inverse(F: LaplaceExpr) -> TimeExpr:
    """Inverse transform of proper delayed rational terms.

    Polynomial parts would require impulsive components outside the signal
    class and are rejected.  Partial-fraction coefficients that vanish up to
    roundoff are dropped so round trips stay canonical.
    """
    modes: list[Mode] = []
    for delay, rf in F.terms:
        if rf.num.degree >= rf.den.degree:
            raise ValueError("impulsive component outside signal class")
        _, terms = partial_fractions(rf)
        top = max((abs(t.coefficient) for t in terms), default=0.0)
        for pole, order, coeff in terms:
            if abs(coeff) <= 1e-13 * top:
                continue
            amp = coeff / math.factorial(order - 1)
            modes.append(Mode(amp, order - 1, pole, delay))
    return TimeExpr(tuple(modes))


def laplace_scale(F: LaplaceExpr, c) -> LaplaceExpr:
    c = complex(c)
    if c == 0:
        return LAPLACE_ZERO
    return LaplaceExpr(
        tuple(TransformTerm(d, rational_scale(rf, c)) for d, rf in F.terms)
    )


def laplace_add(F: LaplaceExpr, G: LaplaceExpr) -> LaplaceExpr:
    return LaplaceExpr(F.terms + G.terms)


def laplace_delay(F: LaplaceExpr, a: float) -> LaplaceExpr:
    """Multiply by ``exp(-a*s)``: add ``a`` to every delay tag."""
    if a < 0:
        raise ValueError("delay must be nonnegative")
    return LaplaceExpr(tuple(TransformTerm(d + a, rf) for d, rf in F.terms))


def laplace_mul_rf(F: LaplaceExpr, rf: RationalFunction) -> LaplaceExpr:
    """Multiply every term by a rational factor (delays unchanged)."""
    return LaplaceExpr(
        tuple(TransformTerm(d, rational_mul(term_rf, rf)) for d, term_rf in F.terms)
    )


def _compose_shift(rf: RationalFunction, b: complex) -> RationalFunction:
    """``rf(s - b)``; poles move by ``+b`` and the denominator stays monic."""
    num = taylor_shift(rf.num, -b)
    den = taylor_shift(rf.den, -b)
    roots = None
    if rf.den_roots is not None:
        roots = RootSet(tuple((v + b, m) for v, m in rf.den_roots.roots))
    return RationalFunction(num, den, roots)


def freq_shift(F: LaplaceExpr, b: complex) -> LaplaceExpr:
    """``F(s) -> F(s - b)``, the transform-side image of ``exp(b*t) * f(t)``.

    A delayed term picks up the factor ``exp(delay*b)``; for complex ``b``
    that factor has no consistent magnitude bookkeeping against the real
    delay tag, so complex shifts are only accepted on delay-free transforms.
    """
    b = complex(b)
    if b.imag != 0 and any(d != 0 for d, _ in F.terms):
        raise ValueError("complex frequency shift requires a delay-free transform")
    terms = []
    for d, rf in F.terms:
        shifted = _compose_shift(rf, b)
        if d != 0:
            shifted = rational_scale(shifted, cmath.exp(d * b))
        terms.append(TransformTerm(d, shifted))
    return LaplaceExpr(tuple(terms))


def time_scale(F: LaplaceExpr, c: float) -> LaplaceExpr:
    """Transform of ``t -> f(c*t)``: ``(1/c) * F(s/c)``, gates move to ``a/c``."""
    if c <= 0:
        raise ValueError("time scale factor must be positive")
    terms = []
    for d, rf in F.terms:
        num = poly(tuple(x * c ** float(-k) for k, x in enumerate(rf.num.coeffs)))
        den = poly(tuple(x * c ** float(-k) for k, x in enumerate(rf.den.coeffs)))
        roots = None
        if rf.den_roots is not None:
            roots = RootSet(tuple((v * c, m) for v, m in rf.den_roots.roots))
        scaled = rational_normalize(
            RationalFunction(poly_scale(num, 1.0 / c), den, roots)
        )
        terms.append(TransformTerm(d / c, scaled))
    return LaplaceExpr(tuple(terms))


def modulate(f: TimeExpr, omega0: float, kind: str) -> LaplaceExpr:
    """Transform of ``cos(omega0*t)*f(t)`` or ``sin(omega0*t)*f(t)``.

    For ungated signals this is the half-sum of the two imaginary frequency
    shifts of ``transform(f)``; gated signals are expanded into conjugate
    mode pairs in the time domain first (the two routes agree where both
    apply).
    """
    if kind not in ("cosine", "sine"):
        raise ValueError("kind must be 'cosine' or 'sine'")
    if omega0 <= 0:
        raise ValueError("modulation frequency must be positive")
    if all(m.shift == 0 for m in f.modes):
        F = transform(f)
        plus = freq_shift(F, 1j * omega0)
        minus = freq_shift(F, -1j * omega0)
        if kind == "cosine":
            return laplace_scale(laplace_add(plus, minus), 0.5)
        return laplace_scale(plus - minus, -0.5j)
    return transform(time_modulate(f, omega0, kind))


def nth_derivative_transform(f: TimeExpr, n: int) -> LaplaceExpr:
    """Right-hand side of the derivative rule
    ``L[f^(n)](s) = s**n F(s) - sum_k s**(n-1-k) f^(k)(0)``.

    Initial values are right-hand limits at zero from iterated symbolic
    derivatives, so the operation shares its gate restriction with
    ``time_derivative``.
    """
    if n < 0 or int(n) != n:
        raise ValueError("derivative order must be a nonnegative integer")
    if any(m.shift != 0 for m in f.modes):
        raise ValueError("non-differentiable gated expression")
    F = transform(f)
    if n == 0 or F.is_zero:
        return F
    init = [0j] * n
    g = f
    for k in range(n):
        init[n - 1 - k] = time_eval(g, 0.0)
        g = time_derivative(g)
    init_poly = poly(init)

    (_, rf), = F.terms
    s_n = poly([0.0] * n + [1.0])
    lhs = s_n * rf.num
    rhs = init_poly * rf.den
    # the rule guarantees a proper result; trim the roundoff dust that keeps
    # the cancelled top coefficients from being exactly zero
    scale = max(poly_inf_norm(lhs), poly_inf_norm(rhs), 1.0)
    num = poly_trim_trailing(lhs - rhs, 1e-9 * scale)
    rf_out = rational_normalize(RationalFunction(num, rf.den, rf.den_roots))
    return LaplaceExpr((TransformTerm(0.0, rf_out),))


def laplace_eval(F: LaplaceExpr, s: complex) -> complex:
    """Evaluate inside the region of convergence, away from poles."""
    s = complex(s)
    if s.real <= F.abscissa:
        raise ValueError("outside region of convergence")
    acc = 0j
    for delay, rf in F.terms:
        for p in _term_poles(rf):
            if abs(s - p) <= POLE_GUARD:
                raise ValueError("evaluation point too close to a pole")
        acc += cmath.exp(-delay * s) * poly_eval(rf.num, s) / poly_eval(rf.den, s)
    return acc
