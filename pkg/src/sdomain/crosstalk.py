"""Coupled RC interconnect crosstalk model (aggressor and victim nets).

Two 2-pi RC sections model the aggressor line (driven through its driver
resistance) and the victim line (coupled through Cc and loaded by its own
driver resistance).  Each section is a scalar linear ODE whose coefficient
lists are closed-form products of the component values; both transfer
functions cascade into the end-to-end noise path from the aggressor input to
the victim output.

The coefficient expressions are literal transcriptions of the circuit
analysis.  The two long sums are split into named addends so each product can
be unit-tested in isolation against hand substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .laplace import inverse, transform
from .signals import TimeExpr
from .systems import SystemSpec, TransferFunction, cascade, ode_to_tf, tf_apply


def _require_positive(params) -> None:
    for f in fields(params):
        if getattr(params, f.name) <= 0:
            raise ValueError(f"circuit components must be strictly positive: {f.name}")


@dataclass(frozen=True)
class AggressorParams:
    """Aggressor net: driver resistance Rth, line resistances R1a/R2a (ohms),
    node capacitances C1a/C2a/C3a (farads)."""

    R1a: float
    R2a: float
    Rth: float
    C1a: float
    C2a: float
    C3a: float

    def __post_init__(self):
        _require_positive(self)


@dataclass(frozen=True)
class VictimParams:
    """Victim net: driver resistance Rd, line resistances R1v/R2v (ohms),
    coupling capacitance Cc and node capacitances C1v/C2v/C3v (farads)."""

    R1v: float
    R2v: float
    Rd: float
    Cc: float
    C1v: float
    C2v: float
    C3v: float

    def __post_init__(self):
        _require_positive(self)


def _aggressor_e_addends(p: AggressorParams) -> tuple[float, ...]:
    r1, r2, rt = p.R1a, p.R2a, p.Rth
    c1, c2, c3 = p.C1a, p.C2a, p.C3a
    return (
        2 * r1 * c2 * (2 * r2 * c3 + rt * c1 + rt * c3),
        2 * rt * c3 * (r1 * c1 + r2 * c1 + r2 * c2),
        (r1**2 + r1 * rt) * (c2**2 + c3**2),
        r2 * c3**2 * (r2 + rt),
        2 * r1 * c3 * (r1 * c2 + r2 * c3),
    )


def _aggressor_f_addends(p: AggressorParams) -> tuple[float, ...]:
    r1, r2, rt = p.R1a, p.R2a, p.Rth
    c1, c2, c3 = p.C1a, p.C2a, p.C3a
    return (
        2 * r1 * r2 * c2 * c3 * (r1 * c2 + r1 * c3 + r2 * c3 + 2 * rt * c1),
        2 * r1 * rt * c3 * (r2 * c2**2 + r2 * c2 * c3 + r1 * c1 * c2 + r2 * c1 * c3),
        r1**2 * rt * c1 * (c2**2 + c3**2),
        r2**2 * rt * c3**2 * (c1 + c2),
    )


def aggressor_lists(p: AggressorParams) -> SystemSpec:
    """ODE coefficient lists of the aggressor section (input side order 3,
    output side order 5, both with unit constant term)."""
    r1, r2, rt = p.R1a, p.R2a, p.Rth
    c1, c2, c3 = p.C1a, p.C2a, p.C3a
    a = r1 * (c2 + c3) + 2 * r2 * c3
    b = r2 * c3 * (2 * r1 * c2 + r1 * c3 + r2 * c3)
    c = r1 * r2**2 * c2 * c3**2
    d = 2 * r1 * (c2 + c3) + 2 * r2 * c3 + rt * (c1 + c2 + c3)
    e = sum(_aggressor_e_addends(p))
    f = sum(_aggressor_f_addends(p))
    g = r1 * r2**2 * c2**2 * c3**2 * (r1 + rt) + 2 * r1 * r2 * rt * c1 * c2 * c3 * (
        r1 * c2 + r1 * c3 + r2 * c3
    )
    h = r1**2 * r2**2 * rt * c1 * c2**2 * c3**2
    return SystemSpec(alpha=(1.0, d, e, f, g, h), beta=(1.0, a, b, c))


def victim_lists(p: VictimParams) -> SystemSpec:
    """ODE coefficient lists of the victim section.  The input list has a
    zero constant term: coupling is capacitive, so the numerator carries a
    factor of s and the section blocks DC."""
    r1, r2, rd = p.R1v, p.R2v, p.Rd
    cc, c1, c2, c3 = p.Cc, p.C1v, p.C2v, p.C3v
    a = (rd + r1) * cc
    b = r2 * cc * c3 * (rd + r1) + rd * r1 * cc * c1
    c = rd * r1 * r2 * cc * c1 * c3
    d = rd * (cc + c1 + c2 + c3) + r1 * (cc + c2 + c3) + 2 * r2 * c3
    e = (
        rd * r2 * c3 * (2 * cc + 2 * c1 + 2 * c2 + c3)
        + r1 * r2 * c3 * (2 * c2 + 2 * cc + c3)
        + rd * r1 * c1 * (cc + c2 + c3)
        + r2**2 * c3**2
    )
    f = rd * r1 * r2 * c1 * c3 * (2 * cc + 2 * c2 + c3) + r2**2 * c3**2 * (
        rd * (cc + c1 + c2) + r1 * (cc + c2)
    )
    g = rd * r1 * r2**2 * c1 * c3**2 * (cc + c2)
    return SystemSpec(alpha=(1.0, d, e, f, g), beta=(0.0, a, b, c))


def aggressor_tf(p: AggressorParams) -> TransferFunction:
    """Degree 3 over degree 5; unit DC gain (both constant terms are 1)."""
    return ode_to_tf(aggressor_lists(p))


def victim_tf(p: VictimParams) -> TransferFunction:
    """Degree 3 over degree 4 with a zero at the origin (high-pass coupling)."""
    return ode_to_tf(victim_lists(p))


def total_tf(pa: AggressorParams, pv: VictimParams) -> TransferFunction:
    """End-to-end noise transfer function: victim section after aggressor."""
    return cascade(victim_tf(pv), aggressor_tf(pa))


def victim_noise_response(
    pa: AggressorParams, pv: VictimParams, vin: TimeExpr
) -> TimeExpr:
    """Victim output for an aggressor input waveform, zero initial state.

    For a step input the response starts at 0 and decays back to 0: all poles
    of the passive sections are stable and the coupling zero kills DC.
    """
    Y = tf_apply(total_tf(pa, pv), transform(vin))
    for _, rf in Y.terms:
        if rf.num.degree >= rf.den.degree:
            raise ValueError("improper product")
    return inverse(Y)


__all__ = [
    "AggressorParams",
    "VictimParams",
    "aggressor_lists",
    "victim_lists",
    "aggressor_tf",
    "victim_tf",
    "total_tf",
    "victim_noise_response",
]
