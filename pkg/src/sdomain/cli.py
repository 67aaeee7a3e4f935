"""Batch front end: one JSON job description in, JSON or CSV results out.

A job is ``{"command": <name>, "payload": {...}}``.  Commands map one-to-one
onto library operations; see README.md for the payload schemas.  Exit codes:
0 success, 1 domain error (error object on the output stream), 2 malformed
input (unknown command or schema violation, reported with the field path).

Outputs are deterministic: keys are sorted, floats use shortest round-trip
formatting (<= 17 significant digits), complex values serialize as
``[re, im]`` pairs (bare numbers when exactly real), and CSV time series use
the fixed header ``t,value_re,value_im`` with LF line endings.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .crosstalk import (
    AggressorParams,
    VictimParams,
    aggressor_lists,
    aggressor_tf,
    total_tf,
    victim_lists,
    victim_tf,
)
from .laplace import LaplaceExpr, TransformTerm, inverse, transform
from .signals import Mode, TimeExpr, time_eval_grid, unit_step
from .systems import SystemSpec, TransferFunction, forced_response, ode_to_tf, tf_to_ode
from .uniqueness import lerch_sample_check, log_substitution_check, moment_zero_test, transform_equal
from .algebra import RationalFunction, poly, poly_eval

COMMANDS = (
    "transform",
    "invert",
    "ode2tf",
    "tf2ode",
    "equiv",
    "lerch-sample",
    "moments",
    "crosstalk",
    "stepresp",
    "logsubst",
)


class SchemaError(Exception):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


# ------------------------------- parsing ----------------------------------


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return obj[key]


def _number(value, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, "expected a number")
    return float(value)


def _integer(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    return value


def _complex(value, path) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise SchemaError(path, "expected a number or an [re, im] pair")


def _complex_list(value, path) -> list[complex]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array")
    return [_complex(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _number_list(value, path) -> list[float]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_time_expr(doc, path) -> TimeExpr:
    modes_doc = _get(doc, "modes", path)
    if not isinstance(modes_doc, list):
        raise SchemaError(f"{path}.modes", "expected an array")
    modes = []
    for i, m in enumerate(modes_doc):
        mp = f"{path}.modes[{i}]"
        amplitude = _complex(_get(m, "amplitude", mp), f"{mp}.amplitude")
        power = _integer(_get(m, "power", mp), f"{mp}.power")
        exponent = _complex(_get(m, "exponent", mp), f"{mp}.exponent")
        shift = _number(m.get("shift", 0.0), f"{mp}.shift")
        try:
            modes.append(Mode(amplitude, power, exponent, shift))
        except ValueError as exc:
            raise SchemaError(mp, str(exc)) from exc
    return TimeExpr(tuple(modes))


def _parse_laplace(doc, path) -> LaplaceExpr:
    terms_doc = _get(doc, "terms", path)
    if not isinstance(terms_doc, list):
        raise SchemaError(f"{path}.terms", "expected an array")
    terms = []
    for i, term in enumerate(terms_doc):
        tp = f"{path}.terms[{i}]"
        delay = _number(term.get("delay", 0.0), f"{tp}.delay")
        if delay < 0:
            raise SchemaError(f"{tp}.delay", "delay must be nonnegative")
        num = _complex_list(_get(term, "num", tp), f"{tp}.num")
        den = _complex_list(_get(term, "den", tp), f"{tp}.den")
        if not any(c != 0 for c in den):
            raise SchemaError(f"{tp}.den", "denominator must be nonzero")
        terms.append(TransformTerm(delay, RationalFunction(poly(num), poly(den))))
    return LaplaceExpr(tuple(terms))


def _parse_aggressor(doc, path, time_scale) -> AggressorParams:
    kwargs = {}
    for name in ("R1a", "R2a", "Rth", "C1a", "C2a", "C3a"):
        value = _number(_get(doc, name, path), f"{path}.{name}")
        if name.startswith("C"):
            value /= time_scale
        kwargs[name] = value
    try:
        return AggressorParams(**kwargs)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def _parse_victim(doc, path, time_scale) -> VictimParams:
    kwargs = {}
    for name in ("R1v", "R2v", "Rd", "Cc", "C1v", "C2v", "C3v"):
        value = _number(_get(doc, name, path), f"{path}.{name}")
        if name.startswith("C"):
            value /= time_scale
        kwargs[name] = value
    try:
        return VictimParams(**kwargs)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


# ----------------------------- serialization ------------------------------


def _c2j(z: complex):
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def _poly2j(p) -> list:
    return [_c2j(c) for c in p.coeffs]


def _laplace2j(F: LaplaceExpr) -> dict:
    return {
        "terms": [
            {"delay": d, "num": _poly2j(rf.num), "den": _poly2j(rf.den)}
            for d, rf in F.terms
        ],
        "abscissa": F.abscissa if F.abscissa != -float("inf") else None,
    }


def _time2j(f: TimeExpr) -> dict:
    return {
        "modes": [
            {
                "amplitude": _c2j(m.amplitude),
                "power": m.power,
                "exponent": _c2j(m.exponent),
                "shift": m.shift,
            }
            for m in f.modes
        ]
    }


def _tf2j(tf: TransferFunction) -> dict:
    return {
        "num": _poly2j(tf.rf.num),
        "den": _poly2j(tf.rf.den),
        "abscissa": tf.abscissa if tf.abscissa != -float("inf") else None,
    }


# ------------------------------- commands ---------------------------------


def _run_transform(payload, args) -> str:
    f = _parse_time_expr(payload, "payload")
    return _dump(_laplace2j(transform(f)))


def _run_invert(payload, args) -> str:
    F = _parse_laplace(payload, "payload")
    return _dump(_time2j(inverse(F)))


def _run_ode2tf(payload, args) -> str:
    alpha = _number_list(_get(payload, "alpha", "payload"), "payload.alpha")
    beta = _number_list(_get(payload, "beta", "payload"), "payload.beta")
    try:
        sys_spec = SystemSpec(tuple(alpha), tuple(beta))
    except ValueError as exc:
        raise SchemaError("payload", str(exc)) from exc
    return _dump(_tf2j(ode_to_tf(sys_spec)))


def _run_tf2ode(payload, args) -> str:
    num = _complex_list(_get(payload, "num", "payload"), "payload.num")
    den = _complex_list(_get(payload, "den", "payload"), "payload.den")
    if not any(c != 0 for c in den):
        raise SchemaError("payload.den", "denominator must be nonzero")
    tf = TransferFunction(RationalFunction(poly(num), poly(den)))
    sys_spec = tf_to_ode(tf)
    return _dump({"alpha": list(sys_spec.alpha), "beta": list(sys_spec.beta)})


def _run_equiv(payload, args) -> str:
    F = _parse_laplace(_get(payload, "F", "payload"), "payload.F")
    G = _parse_laplace(_get(payload, "G", "payload"), "payload.G")
    return _dump({"equal": transform_equal(F, G)})


def _run_lerch_sample(payload, args) -> str:
    f = _parse_time_expr(_get(payload, "f", "payload"), "payload.f")
    g = _parse_time_expr(_get(payload, "g", "payload"), "payload.g")
    count = _integer(_get(payload, "count", "payload"), "payload.count")
    verdict = lerch_sample_check(f, g, count, tol=args.tol)
    return _dump(
        {
            "exact_equal": verdict.exact_equal,
            "sampled_equal": verdict.sampled_equal,
            "sample_points": [_c2j(s) for s in verdict.sample_points],
            "max_sample_gap": verdict.max_sample_gap,
            "threshold_N": verdict.threshold_N,
        }
    )


def _run_moments(payload, args) -> str:
    phi_doc = _get(payload, "phi", "payload")
    coeffs = _number_list(_get(phi_doc, "coeffs", "payload.phi"), "payload.phi.coeffs")
    interval = _number_list(_get(payload, "interval", "payload"), "payload.interval")
    if len(interval) != 2:
        raise SchemaError("payload.interval", "expected [a, b]")
    max_degree = _integer(_get(payload, "max_degree", "payload"), "payload.max_degree")
    p = poly(coeffs)

    def phi(x):
        return np.real([poly_eval(p, complex(v)) for v in np.atleast_1d(x)])

    report = moment_zero_test(phi, interval[0], interval[1], max_degree)
    return _dump(
        {
            "interval": list(report.interval),
            "max_degree": report.max_degree,
            "moments": list(report.moments),
            "residual_l2": report.residual_l2,
            "certified_l2_bound": (
                "inconclusive"
                if report.certified_l2_bound is None
                else report.certified_l2_bound
            ),
        }
    )


def _run_crosstalk(payload, args) -> str:
    pa = _parse_aggressor(_get(payload, "aggressor", "payload"), "payload.aggressor", args.time_scale)
    pv = _parse_victim(_get(payload, "victim", "payload"), "payload.victim", args.time_scale)
    agg = aggressor_lists(pa)
    vic = victim_lists(pv)
    return _dump(
        {
            "aggressor": {
                "beta": list(agg.beta),
                "alpha": list(agg.alpha),
                "tf": _tf2j(aggressor_tf(pa)),
            },
            "victim": {
                "beta": list(vic.beta),
                "alpha": list(vic.alpha),
                "tf": _tf2j(victim_tf(pv)),
            },
            "total": _tf2j(total_tf(pa, pv)),
        }
    )


def _run_stepresp(payload, args) -> str:
    alpha = _number_list(_get(payload, "alpha", "payload"), "payload.alpha")
    beta = _number_list(_get(payload, "beta", "payload"), "payload.beta")
    t_max = _number(_get(payload, "t_max", "payload"), "payload.t_max")
    dt = _number(_get(payload, "dt", "payload"), "payload.dt")
    if t_max <= 0 or dt <= 0:
        raise SchemaError("payload", "t_max and dt must be positive")
    try:
        sys_spec = SystemSpec(tuple(alpha), tuple(beta))
    except ValueError as exc:
        raise SchemaError("payload", str(exc)) from exc
    y = forced_response(sys_spec, unit_step())
    steps = int(round(t_max / dt))
    t = np.arange(steps + 1) * dt
    values = time_eval_grid(y, t)
    lines = ["t,value_re,value_im"]
    for ti, vi in zip(t, values):
        lines.append(f"{ti:.17g},{vi.real:.17g},{vi.imag:.17g}")
    return "\n".join(lines) + "\n"


def _run_logsubst(payload, args) -> str:
    h = _parse_time_expr(_get(payload, "h", "payload"), "payload.h")
    n = _integer(_get(payload, "n", "payload"), "payload.n")
    result = log_substitution_check(h, n)
    return _dump({"lhs": _c2j(result.lhs), "rhs": _c2j(result.rhs), "gap": result.gap})


_HANDLERS = {
    "transform": _run_transform,
    "invert": _run_invert,
    "ode2tf": _run_ode2tf,
    "tf2ode": _run_tf2ode,
    "equiv": _run_equiv,
    "lerch-sample": _run_lerch_sample,
    "moments": _run_moments,
    "crosstalk": _run_crosstalk,
    "stepresp": _run_stepresp,
    "logsubst": _run_logsubst,
}


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sdomain", description="Run one JSON-described analysis job."
    )
    parser.add_argument("--input", help="job file (default: stdin)")
    parser.add_argument("--output", help="result file (default: stdout)")
    parser.add_argument("--tol", type=float, default=1e-6, help="sampling tolerance")
    parser.add_argument(
        "--time-scale",
        type=float,
        default=1.0,
        help="time unit in seconds for crosstalk component values "
        "(capacitances are divided by it to keep poles near unit scale)",
    )
    args = parser.parse_args(argv)

    try:
        if args.input:
            with open(args.input) as fh:
                raw = fh.read()
        else:
            raw = sys.stdin.read()
        job = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        _write(args, _dump({"error": {"kind": "malformed-input", "message": str(exc)}}))
        return 2

    try:
        command = _get(job, "command", "job")
        if command not in COMMANDS:
            raise SchemaError("job.command", f"unknown command: {command!r}")
        payload = _get(job, "payload", "job")
        text = _HANDLERS[command](payload, args)
    except SchemaError as exc:
        _write(
            args,
            _dump(
                {
                    "error": {
                        "kind": "schema-violation",
                        "path": exc.path,
                        "message": exc.message,
                    }
                }
            ),
        )
        return 2
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        _write(
            args,
            _dump({"error": {"kind": "domain-error", "message": str(exc)}}),
        )
        return 1

    _write(args, text)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
