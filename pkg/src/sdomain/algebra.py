"""Complex polynomial and rational-function arithmetic.

Polynomials are dense ascending coefficient tuples over complex doubles; the
zero polynomial is the empty tuple and has degree -1.  Root finding uses
Aberth-Ehrlich simultaneous iteration with residual-guided cluster widening so
that repeated roots (which double precision scatters into small clouds) are
recovered with the right multiplicities.  Rational functions are kept in
canonical form: monic denominator, common roots cancelled.  Partial fractions
are computed per pole by local Taylor expansion and power-series division, and
every decomposition is validated by resampling before it is returned.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

CLUSTER_RTOL = 1e-7
ABERTH_TOL = 1e-12
ABERTH_MAX_ITER = 200
RESAMPLE_RTOL = 1e-8


def _canonical_coeffs(coeffs) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies ``s**k``, no trailing zeros."""

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, s: complex) -> complex:
        return poly_eval(self, s)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return poly_add(self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return poly_add(self, poly_scale(other, -1.0))

    def __neg__(self) -> "Polynomial":
        return poly_scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    __rmul__ = __mul__


def poly(coeffs) -> Polynomial:
    """Build a canonical polynomial from an ascending coefficient sequence."""
    return Polynomial(tuple(coeffs))


ZERO = Polynomial()
ONE = Polynomial((1.0,))


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    n = max(len(a.coeffs), len(b.coeffs))
    out = [0j] * n
    for k, c in enumerate(a.coeffs):
        out[k] += c
    for k, c in enumerate(b.coeffs):
        out[k] += c
    return Polynomial(tuple(out))


def poly_scale(p: Polynomial, c) -> Polynomial:
    c = complex(c)
    return Polynomial(tuple(c * x for x in p.coeffs))


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero or b.is_zero:
        return ZERO
    out = [0j] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            out[i + j] += ca * cb
    return Polynomial(tuple(out))


def poly_pow(p: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("nonnegative exponent required")
    out = ONE
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_eval(p: Polynomial, s: complex) -> complex:
    """Horner evaluation."""
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * s + c
    return acc


def poly_derivative(p: Polynomial) -> Polynomial:
    return Polynomial(tuple(k * c for k, c in enumerate(p.coeffs) if k > 0))


def poly_inf_norm(p: Polynomial) -> float:
    return max((abs(c) for c in p.coeffs), default=0.0)


def taylor_shift(p: Polynomial, c: complex) -> Polynomial:
    """Coefficients of ``p(x + c)`` as a polynomial in ``x``."""
    a = list(p.coeffs)
    n = len(a)
    c = complex(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return Polynomial(tuple(a))


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder of ``a / b``; ``deg(remainder) < deg(b)``."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.degree < b.degree:
        return ZERO, a
    r = list(a.coeffs)
    q = [0j] * (a.degree - b.degree + 1)
    lead = b.coeffs[-1]
    for k in range(a.degree - b.degree, -1, -1):
        f = r[b.degree + k] / lead
        q[k] = f
        for j, bc in enumerate(b.coeffs):
            r[j + k] -= f * bc
    return Polynomial(tuple(q)), Polynomial(tuple(r[: max(b.degree, 0)]))


def poly_deflate(p: Polynomial, root: complex) -> Polynomial:
    """Synthetic division by ``(s - root)``, remainder discarded."""
    n = p.degree
    if n < 1:
        raise ValueError("cannot deflate a constant polynomial")
    out = [0j] * n
    acc = p.coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = p.coeffs[k] + root * acc
    return Polynomial(tuple(out))


def poly_trim_trailing(p: Polynomial, abs_tol: float) -> Polynomial:
    """Drop trailing coefficients of magnitude <= ``abs_tol``.

    Only for results whose degree reduction is guaranteed algebraically and
    merely polluted by roundoff; never applied automatically.
    """
    cs = list(p.coeffs)
    while cs and abs(cs[-1]) <= abs_tol:
        cs.pop()
    return Polynomial(tuple(cs))


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities; pairwise separated beyond the cluster radius."""

    roots: tuple[tuple[complex, int], ...] = ()

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)

    def values(self) -> tuple[complex, ...]:
        return tuple(v for v, _ in self.roots)


def _sorted_roots(values) -> list[complex]:
    return sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))


def _cluster(values, rtol: float) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for z in _sorted_roots(values):
        placed = False
        for c in clusters:
            center = sum(c) / len(c)
            if abs(z - center) <= rtol * (1.0 + abs(center)):
                c.append(z)
                placed = True
                break
        if not placed:
            clusters.append([z])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def poly_from_roots(lead: complex, roots) -> Polynomial:
    out = Polynomial((complex(lead),))
    for value, mult in roots:
        out = poly_mul(out, poly_pow(Polynomial((-complex(value), 1.0)), mult))
    return out


def _aberth(coeffs: tuple[complex, ...]) -> list[complex]:
    """All roots of a polynomial with nonzero constant and leading terms."""
    n = len(coeffs) - 1
    c = [x / coeffs[-1] for x in coeffs]
    dc = [k * c[k] for k in range(1, n + 1)]

    radius = abs(c[0]) ** (1.0 / n) if c[0] != 0 else 1.0
    radius = min(max(radius, 1e-3), 1e6)
    z = [radius * cmath.exp(1j * (2.0 * math.pi * k / n + 0.4)) for k in range(n)]

    def horner(cs, x):
        acc = 0j
        for v in reversed(cs):
            acc = acc * x + v
        return acc

    for _ in range(ABERTH_MAX_ITER):
        done = True
        w = [0j] * n
        for i in range(n):
            p = horner(c, z[i])
            if p == 0:
                continue
            dp = horner(dc, z[i])
            if dp == 0:
                z[i] *= 1.0 + 1e-8 + 1e-8j
                done = False
                continue
            ratio = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff == 0:
                        diff = 1e-14 * (1.0 + abs(z[i]))
                    s += 1.0 / diff
            denom = 1.0 - ratio * s
            if denom == 0:
                denom = 1e-14
            w[i] = ratio / denom
            if abs(w[i]) > ABERTH_TOL * (1.0 + abs(z[i])):
                done = False
        for i in range(n):
            z[i] -= w[i]
        if done:
            break
    return z


def _refine_root(p: Polynomial, x0: complex, mult: int) -> complex:
    """Polish a root estimate of multiplicity ``mult``.

    A root of multiplicity m of p is a simple root of the (m-1)-th
    derivative, so Newton on that derivative converges quadratically even
    where direct evaluation of p has hit its cancellation noise floor.
    """
    q = p
    for _ in range(mult - 1):
        q = poly_derivative(q)
    dq = poly_derivative(q)
    x = x0
    for _ in range(40):
        qx = poly_eval(q, x)
        dqx = poly_eval(dq, x)
        if dqx == 0:
            break
        step = qx / dqx
        if not (abs(step) < math.inf):
            break
        x -= step
        if abs(step) <= 1e-15 * (1.0 + abs(x)):
            break
    # reject runaways: the estimate was already near the root
    if abs(x - x0) > 0.1 * (1.0 + abs(x0)):
        return x0
    return x


def poly_roots(p: Polynomial) -> RootSet:
    """Roots of ``p`` with multiplicities recovered by clustering.

    Clustering starts at the relative radius ``CLUSTER_RTOL`` and widens only
    while the reconstruction ``lead * prod (s - r)**m`` fails to reproduce the
    input coefficients: roots of multiplicity >= 2 scatter far beyond any
    fixed radius in double precision, so the reconstruction residual (with
    derivative-refined cluster centers) is the reliable arbiter of which
    grouping is real.
    """
    if p.degree < 1:
        raise ValueError("no roots defined for a constant or zero polynomial")

    coeffs = list(p.coeffs)
    zero_mult = 0
    while coeffs and coeffs[0] == 0:
        zero_mult += 1
        coeffs.pop(0)
    n = len(coeffs) - 1

    raw: list[complex] = [0j] * zero_mult
    if n == 1:
        raw.append(-coeffs[0] / coeffs[1])
    elif n == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = cmath.sqrt(b * b - 4.0 * a * c)
        if abs(b + disc) < abs(b - disc):
            disc = -disc
        q = -0.5 * (b + disc)
        raw.append(q / a)
        raw.append(c / q if q != 0 else 0j)
    elif n >= 3:
        raw.extend(_aberth(tuple(coeffs)))

    lead = p.coeffs[-1]
    scale = max(1.0, poly_inf_norm(p))
    best: list[tuple[complex, int]] | None = None
    best_resid = math.inf
    rtol = CLUSTER_RTOL
    while rtol <= 1e-2:
        clusters = [
            (_refine_root(p, value, mult), mult) for value, mult in _cluster(raw, rtol)
        ]
        recon = poly_from_roots(lead, clusters)
        resid = poly_inf_norm(recon - p)
        if resid < best_resid:
            best, best_resid = clusters, resid
        if resid <= 1e-9 * scale:
            break
        rtol *= 10.0
    assert best is not None
    return RootSet(tuple(sorted(best, key=lambda rm: (rm[0].real, rm[0].imag))))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Numerator/denominator pair.  ``den_roots`` caches a known factorization
    of the denominator; it is carried through the symbolic pipeline so that
    repeated poles keep their exact multiplicities instead of being
    rediscovered numerically."""

    num: Polynomial
    den: Polynomial
    den_roots: RootSet | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    def __call__(self, s: complex) -> complex:
        return poly_eval(self.num, s) / poly_eval(self.den, s)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero


RF_ZERO = RationalFunction(ZERO, ONE, RootSet())
RF_ONE = RationalFunction(ONE, ONE, RootSet())


def rational(num, den, den_roots: RootSet | None = None) -> RationalFunction:
    """Canonical rational function from raw polynomials."""
    if not isinstance(num, Polynomial):
        num = poly(num)
    if not isinstance(den, Polynomial):
        den = poly(den)
    return rational_normalize(RationalFunction(num, den, den_roots))


def rational_monic(num, den, den_roots: RootSet | None = None) -> RationalFunction:
    """Monic-denominator scaling without root cancellation.

    Structure-preserving variant for transfer functions defined by
    coefficient lists: at degenerate parameter points a numerator root may
    coincide with a pole, and cancelling it would silently change the
    system's structural degrees and exact endpoint values.
    """
    if not isinstance(num, Polynomial):
        num = poly(num)
    if not isinstance(den, Polynomial):
        den = poly(den)
    if den.is_zero:
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero:
        return RF_ZERO
    lead = den.coeffs[-1]
    if lead != 1.0:
        num = poly_scale(num, 1.0 / lead)
        den = poly_scale(den, 1.0 / lead)
    return RationalFunction(num, den, den_roots)


def _den_rootset(r: RationalFunction) -> RootSet:
    if r.den_roots is not None:
        return r.den_roots
    if r.den.degree < 1:
        return RootSet()
    return poly_roots(r.den)


def _merge_rootsets(a: RootSet, b: RootSet) -> RootSet:
    """Union of two known factorizations (multiplicities add for shared roots)."""
    merged: list[tuple[complex, int]] = list(a.roots)
    for value, mult in b.roots:
        for i, (v, m) in enumerate(merged):
            if abs(value - v) <= CLUSTER_RTOL * (1.0 + abs(v)):
                weighted = (v * m + value * mult) / (m + mult)
                merged[i] = (weighted, m + mult)
                break
        else:
            merged.append((value, mult))
    return RootSet(tuple(sorted(merged, key=lambda rm: (rm[0].real, rm[0].imag))))


def rational_normalize(r: RationalFunction) -> RationalFunction:
    """Monic denominator, common roots cancelled by multiplicity.

    Degenerate cancellation paths preserve the value of the function at every
    non-pole point; the only rewriting done is root-for-root deflation.
    """
    num, den = r.num, r.den
    if num.is_zero:
        return RF_ZERO
    if den.degree == 0:
        return RationalFunction(poly_scale(num, 1.0 / den.coeffs[0]), ONE, RootSet())

    den_roots = _den_rootset(r)
    cancelled = False
    if num.degree >= 1:
        num_roots = poly_roots(num)
        remaining_den: list[tuple[complex, int]] = []
        num_pool = list(num_roots.roots)
        for value, mult in den_roots.roots:
            hit = None
            for i, (w, k) in enumerate(num_pool):
                if abs(value - w) <= CLUSTER_RTOL * (1.0 + abs(value)):
                    hit = i
                    break
            if hit is None:
                remaining_den.append((value, mult))
                continue
            w, k = num_pool[hit]
            shared = min(mult, k)
            cancelled = True
            for _ in range(shared):
                num = poly_deflate(num, value)
                den = poly_deflate(den, value)
            if mult - shared:
                remaining_den.append((value, mult - shared))
            if k - shared:
                num_pool[hit] = (w, k - shared)
            else:
                num_pool.pop(hit)
        if cancelled:
            den_roots = RootSet(tuple(remaining_den))

    lead = den.coeffs[-1]
    if lead != 1.0:
        num = poly_scale(num, 1.0 / lead)
        den = poly_scale(den, 1.0 / lead)
    if num.is_zero:
        return RF_ZERO
    return RationalFunction(num, den, den_roots)


def _known_roots(r: RationalFunction) -> RootSet | None:
    if r.den_roots is not None:
        return r.den_roots
    if r.den.degree < 1:
        return RootSet()
    return None


def rational_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.is_zero:
        return rational_normalize(b)
    if b.is_zero:
        return rational_normalize(a)
    num = poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den))
    den = poly_mul(a.den, b.den)
    ra, rb = _known_roots(a), _known_roots(b)
    roots = _merge_rootsets(ra, rb) if ra is not None and rb is not None else None
    return rational_normalize(RationalFunction(num, den, roots))


def rational_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.is_zero or b.is_zero:
        return RF_ZERO
    num = poly_mul(a.num, b.num)
    den = poly_mul(a.den, b.den)
    ra, rb = _known_roots(a), _known_roots(b)
    roots = _merge_rootsets(ra, rb) if ra is not None and rb is not None else None
    return rational_normalize(RationalFunction(num, den, roots))


def rational_scale(r: RationalFunction, c) -> RationalFunction:
    if complex(c) == 0:
        return RF_ZERO
    return RationalFunction(poly_scale(r.num, c), r.den, r.den_roots)


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------


class PoleTerm(NamedTuple):
    pole: complex
    order: int
    coefficient: complex


def _series_div(num: list[complex], den: list[complex], m: int) -> list[complex]:
    """First ``m`` coefficients of the power series ``num/den`` (``den[0] != 0``)."""
    out = [0j] * m
    for k in range(m):
        acc = num[k] if k < len(num) else 0j
        for i in range(k):
            acc -= out[i] * (den[k - i] if k - i < len(den) else 0j)
        out[k] = acc / den[0]
    return out


def _pf_terms(remainder: Polynomial, den_roots: RootSet) -> list[PoleTerm]:
    """Partial-fraction terms of ``remainder / prod (s-p)**m`` in doubles."""
    terms: list[PoleTerm] = []
    for pole, mult in den_roots.roots:
        # Taylor coefficients around the pole of q(s) = den(s)/(s - pole)**mult,
        # built from the other factors and truncated at order mult.
        other = [1.0 + 0j]
        for q_value, q_mult in den_roots.roots:
            if q_value == pole:
                continue
            base = [pole - q_value, 1.0 + 0j]
            for _ in range(q_mult):
                conv = [0j] * min(mult, len(other) + len(base) - 1)
                for i, oc in enumerate(other):
                    for j, bc in enumerate(base):
                        if i + j < len(conv):
                            conv[i + j] += oc * bc
                other = conv
        num_taylor = list(taylor_shift(remainder, pole).coeffs[:mult])
        series = _series_div(num_taylor, other, mult)
        for j, c in enumerate(series):
            terms.append(PoleTerm(pole, mult - j, c))
    terms.sort(key=lambda t: (t.pole.real, t.pole.imag, t.order))
    return terms


def _pf_terms_highprec(remainder: Polynomial, den_roots: RootSet) -> list[PoleTerm]:
    """High-precision rerun of ``_pf_terms`` for ill-conditioned pole clusters.

    Residues at poles separated by d carry the factor 1/d**m, so nearby poles
    amplify the double-precision cancellation floor of the local Taylor
    expansions far beyond the resampling tolerance.  Redoing the expansion at
    60 digits (poles kept as exact doubles) restores full double accuracy in
    the returned coefficients.
    """
    import mpmath

    with mpmath.workdps(60):

        def mpc(z: complex):
            return mpmath.mpc(z.real, z.imag)

        terms: list[PoleTerm] = []
        for pole, mult in den_roots.roots:
            other = [mpmath.mpc(1)]
            for q_value, q_mult in den_roots.roots:
                if q_value == pole:
                    continue
                base = [mpc(pole - q_value), mpmath.mpc(1)]
                for _ in range(q_mult):
                    conv = [mpmath.mpc(0)] * min(mult, len(other) + len(base) - 1)
                    for i, oc in enumerate(other):
                        for j, bc in enumerate(base):
                            if i + j < len(conv):
                                conv[i + j] += oc * bc
                    other = conv
            shifted = [mpc(c) for c in remainder.coeffs]
            n = len(shifted)
            mp_pole = mpc(pole)
            for i in range(n):
                for j in range(n - 2, i - 1, -1):
                    shifted[j] += mp_pole * shifted[j + 1]
            num_taylor = shifted[:mult]
            series = [mpmath.mpc(0)] * mult
            for k in range(mult):
                acc = num_taylor[k] if k < len(num_taylor) else mpmath.mpc(0)
                for i in range(k):
                    acc -= series[i] * (other[k - i] if k - i < len(other) else 0)
                series[k] = acc / other[0]
            for j, c in enumerate(series):
                terms.append(PoleTerm(pole, mult - j, complex(c)))
    terms.sort(key=lambda t: (t.pole.real, t.pole.imag, t.order))
    return terms


def partial_fractions(r: RationalFunction) -> tuple[Polynomial, tuple[PoleTerm, ...]]:
    """Decompose ``r`` into a polynomial part plus ``c/(s - p)**k`` terms.

    The decomposition is validated by resampling at ``2*deg(den) + 1`` points
    on a circle enclosing every pole (with a conditioning-aware tolerance).
    If the fast double-precision expansion fails validation it is redone in
    high precision; only a failure of that pass raises ``ArithmeticError``.
    """
    r = rational_normalize(r)
    if r.is_zero:
        return ZERO, ()
    if r.den.degree == 0:
        return poly_scale(r.num, 1.0 / r.den.coeffs[0]), ()

    poly_part, remainder = poly_divmod(r.num, r.den)
    den_roots = _den_rootset(r)
    if remainder.is_zero:
        _validate_partial_fractions(r, poly_part, (), den_roots)
        return poly_part, ()

    terms = _pf_terms(remainder, den_roots)
    try:
        _validate_partial_fractions(r, poly_part, terms, den_roots)
    except ArithmeticError:
        terms = _pf_terms_highprec(remainder, den_roots)
        _validate_partial_fractions(r, poly_part, terms, den_roots)
    return poly_part, tuple(terms)


def _validate_partial_fractions(r, poly_part, terms, den_roots) -> None:
    count = 2 * r.den.degree + 1
    radius = 2.0 * (1.0 + max((abs(v) for v in den_roots.values()), default=0.0))
    for k in range(count):
        s = radius * cmath.exp(2j * math.pi * k / count)
        lhs = r(s)
        rhs = poly_eval(poly_part, s)
        # conditioning of the resummation: close poles carry huge opposing
        # residues, and their summation roundoff is eps * kappa even when the
        # decomposition is exact
        kappa = abs(rhs)
        for pole, order, coeff in terms:
            term = coeff / (s - pole) ** order
            rhs += term
            kappa += abs(term)
        if abs(lhs - rhs) > RESAMPLE_RTOL * (1.0 + abs(lhs)) + 1e-14 * kappa:
            raise ArithmeticError(
                "partial fraction decomposition failed resampling validation"
            )
