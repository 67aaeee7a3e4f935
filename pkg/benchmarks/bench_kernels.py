"""Benchmark the compiled kernels against the pure-numpy fallback.

Run from the repository root after building the extension:

    python benchmarks/bench_kernels.py

Times the two hot loops (gated mode evaluation on dense grids, companion-form
RK4 stepping) at a few problem sizes and reports the speedup of the compiled
path.  When the extension is not built only the fallback rows are printed.
"""

from __future__ import annotations

import time

import numpy as np

from sdomain.kernels import _ref

try:
    from sdomain.kernels import _fast
except ImportError:
    _fast = None


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_eval_modes():
    rng = np.random.default_rng(1)
    print("eval_modes: m modes on k grid points")
    for m, k in [(4, 4096), (8, 20001), (16, 100001)]:
        amp = rng.normal(size=m) + 1j * rng.normal(size=m)
        power = rng.integers(0, 4, size=m)
        lam = -rng.uniform(0.2, 4.0, size=m) + 1j * rng.normal(size=m)
        shift = rng.choice([0.0, 1.0, 2.5], size=m)
        t = np.linspace(0.0, 20.0, k)
        t_ref = _time(_ref.eval_modes, amp, power, lam, shift, t)
        line = f"  m={m:3d} k={k:7d}  python {t_ref * 1e3:8.3f} ms"
        if _fast is not None:
            t_fast = _time(_fast.eval_modes, amp, power, lam, shift, t)
            np.testing.assert_allclose(
                _fast.eval_modes(amp, power, lam, shift, t),
                _ref.eval_modes(amp, power, lam, shift, t),
                rtol=1e-12,
                atol=1e-12,
            )
            line += f"  compiled {t_fast * 1e3:8.3f} ms  speedup {t_ref / t_fast:6.1f}x"
        print(line)


def bench_rk4():
    rng = np.random.default_rng(2)
    print("rk4_companion: order n, fixed-step count")
    for n, steps in [(3, 10_000), (6, 20_000), (9, 20_000)]:
        a = np.sort(rng.uniform(0.5, 3.0, size=n))  # stable-ish char coeffs
        c = rng.normal(size=n)
        d = 0.0
        u = np.ones(2 * steps + 1, dtype=np.complex128)
        dt = 10.0 / steps
        t_ref = _time(_ref.rk4_companion, a, c, d, u, dt, repeat=3)
        line = f"  n={n}  steps={steps:6d}  python {t_ref * 1e3:8.1f} ms"
        if _fast is not None:
            t_fast = _time(_fast.rk4_companion, a, c, d, u, dt, repeat=3)
            y_ref, _ = _ref.rk4_companion(a, c, d, u, dt)
            y_fast, _ = _fast.rk4_companion(a, c, d, u, dt)
            np.testing.assert_allclose(y_fast, y_ref, rtol=1e-12, atol=1e-12)
            line += f"  compiled {t_fast * 1e3:8.1f} ms  speedup {t_ref / t_fast:6.1f}x"
        print(line)


if __name__ == "__main__":
    print(f"compiled extension available: {_fast is not None}")
    bench_eval_modes()
    bench_rk4()
