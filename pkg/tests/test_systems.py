import math

import numpy as np
import pytest

from conftest import random_stable_system, random_ungated_signal
from sdomain.algebra import RationalFunction, poly
from sdomain.laplace import LaplaceExpr, TransformTerm, laplace_eval, transform
from sdomain.oracle import rk4_solve
from sdomain.signals import (
    exponential,
    time_derivative,
    time_equal,
    time_eval,
    time_eval_grid,
    unit_step,
)
from sdomain.systems import (
    SystemSpec,
    TransferFunction,
    cascade,
    forced_response,
    ode_to_tf,
    tf_to_ode,
)
from sdomain.uniqueness import transform_equal


def tf_of(num, den):
    return TransferFunction(RationalFunction(poly(num), poly(den)))


def tf_equal(a: TransferFunction, b: TransferFunction) -> bool:
    return transform_equal(
        LaplaceExpr((TransformTerm(0.0, a.rf),)),
        LaplaceExpr((TransformTerm(0.0, b.rf),)),
    )


class TestOdeToTf:
    def test_second_order_lag(self):
        tf = ode_to_tf(SystemSpec((2.0, 3.0, 1.0), (1.0,)))
        assert tf.rf.num.coeffs == (1.0 + 0j,)
        assert tf.rf.den.coeffs == (2.0 + 0j, 3.0 + 0j, 1.0 + 0j)
        assert tf.abscissa == -1.0

    def test_identity_system(self):
        tf = ode_to_tf(SystemSpec((1.0,), (1.0,)))
        assert tf.rf.num.coeffs == (1.0 + 0j,)
        assert tf.rf.den.coeffs == (1.0 + 0j,)

    def test_differentiator_into_lag(self):
        tf = ode_to_tf(SystemSpec((1.0, 1.0), (0.0, 1.0)))
        assert tf.rf.num.coeffs == (0j, 1.0 + 0j)
        assert tf.rf.den.coeffs == (1.0 + 0j, 1.0 + 0j)

    def test_order_violation(self):
        with pytest.raises(ValueError, match="order violation"):
            SystemSpec((2.0, 3.0, 0.0), (1.0,))

    def test_input_order_cap(self):
        with pytest.raises(ValueError, match="m <= n"):
            SystemSpec((1.0, 1.0), (1.0, 1.0, 1.0))


class TestTfToOde:
    def test_constant_term_normalization(self):
        sys_spec = tf_to_ode(tf_of([1.0], [2.0, 3.0, 1.0]))
        np.testing.assert_allclose(sys_spec.alpha, (1.0, 1.5, 0.5))
        np.testing.assert_allclose(sys_spec.beta, (0.5,))

    def test_identity(self):
        sys_spec = tf_to_ode(tf_of([1.0], [1.0]))
        assert sys_spec.alpha == (1.0,) and sys_spec.beta == (1.0,)

    def test_differentiator_into_lag(self):
        sys_spec = tf_to_ode(tf_of([0.0, 1.0], [1.0, 1.0]))
        np.testing.assert_allclose(sys_spec.alpha, (1.0, 1.0))
        np.testing.assert_allclose(sys_spec.beta, (0.0, 1.0))

    def test_complex_coefficients_rejected(self):
        with pytest.raises(ValueError, match="real"):
            tf_to_ode(tf_of([1.0], [1j, 1.0]))

    def test_monic_fallback_when_constant_term_vanishes(self):
        sys_spec = tf_to_ode(tf_of([1.0], [0.0, 2.0, 2.0]))
        np.testing.assert_allclose(sys_spec.alpha, (0.0, 1.0, 1.0))

    def test_roundtrip_reproduces_tf(self):
        rng = np.random.default_rng(71)
        for _ in range(25):
            sys_spec = random_stable_system(rng)
            tf = ode_to_tf(sys_spec)
            back = ode_to_tf(tf_to_ode(tf))
            assert tf_equal(tf, back)


class TestCascade:
    def test_product_of_lags(self):
        h = cascade(tf_of([1.0], [1.0, 1.0]), tf_of([1.0], [2.0, 1.0]))
        assert tf_equal(h, tf_of([1.0], [2.0, 3.0, 1.0]))

    def test_identity_factor(self):
        h = tf_of([1.0, 0.5], [2.0, 2.0, 1.0])
        assert tf_equal(cascade(h, tf_of([1.0], [1.0])), h)

    def test_inverse_pair_cancels(self):
        h = cascade(tf_of([1.0, 1.0], [2.0, 1.0]), tf_of([2.0, 1.0], [1.0, 1.0]))
        assert tf_equal(h, tf_of([1.0], [1.0]))

    def test_associative_and_commutative(self):
        rng = np.random.default_rng(72)
        for _ in range(15):
            tfs = [ode_to_tf(random_stable_system(rng)) for _ in range(3)]
            left = cascade(cascade(tfs[0], tfs[1]), tfs[2])
            right = cascade(tfs[0], cascade(tfs[1], tfs[2]))
            assert tf_equal(left, right)
            assert tf_equal(cascade(tfs[0], tfs[1]), cascade(tfs[1], tfs[0]))


class TestForcedResponse:
    def test_first_order_step(self):
        y = forced_response(SystemSpec((1.0, 1.0), (1.0,)), unit_step())
        assert time_equal(y, unit_step() - exponential(-1.0), 1e-10)

    def test_zero_input(self):
        y = forced_response(SystemSpec((1.0, 1.0), (1.0,)), 0.0 * unit_step())
        assert y.is_zero

    def test_second_order_step_with_rk4_crosscheck(self):
        sys_spec = SystemSpec((2.0, 3.0, 1.0), (1.0,))
        y = forced_response(sys_spec, unit_step())
        expected = (
            0.5 * unit_step() - exponential(-1.0) + 0.5 * exponential(-2.0)
        )
        assert time_equal(y, expected, 1e-10)
        grid = rk4_solve(sys_spec, unit_step(), 4.0, 1e-3)
        for t_probe in (0.5, 1.0, 2.0):
            idx = int(round(t_probe / 1e-3))
            assert abs(grid.output[idx] - time_eval(y, t_probe)) < 1e-6

    def test_direct_feedthrough_response(self):
        # y' + y = x' + x has H(s) = 1 after cancellation: output equals input
        y = forced_response(SystemSpec((1.0, 1.0), (1.0, 1.0)), unit_step())
        assert time_equal(y, unit_step(), 1e-10)

    def test_residual_of_defining_equation(self):
        rng = np.random.default_rng(73)
        checked = 0
        for _ in range(50):
            sys_spec = random_stable_system(rng)
            x = random_ungated_signal(rng, max_power=2, re_range=(-2.5, -0.1))
            y = forced_response(sys_spec, x)
            ys = [y]
            xs = [x]
            for _ in range(sys_spec.order):
                ys.append(time_derivative(ys[-1]))
            for _ in range(len(sys_spec.beta) - 1):
                xs.append(time_derivative(xs[-1]))
            ts = np.linspace(0.0, 8.0, 50)
            lhs = sum(a * time_eval_grid(ys[k], ts) for k, a in enumerate(sys_spec.alpha))
            rhs = sum(b * time_eval_grid(xs[k], ts) for k, b in enumerate(sys_spec.beta))
            scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 0.0)
            assert np.max(np.abs(lhs - rhs)) <= 1e-6 * (1.0 + scale)
            checked += 1
        assert checked == 50

    def test_frequency_response_consistency(self):
        rng = np.random.default_rng(74)
        for _ in range(20):
            sys_spec = random_stable_system(rng)
            x = random_ungated_signal(rng, max_power=2, re_range=(-2.5, -0.1))
            y = forced_response(sys_spec, x)
            H = ode_to_tf(sys_spec)
            Y = transform(y)
            X = transform(x)
            base = max(Y.abscissa, X.abscissa, H.abscissa)
            for _ in range(5):
                s = complex(base + rng.uniform(0.5, 3.0), rng.uniform(-2.0, 2.0))
                lhs = laplace_eval(Y, s)
                rhs = H(s) * laplace_eval(X, s)
                assert abs(lhs - rhs) <= 1e-8 * (1.0 + abs(rhs))

    def test_rk4_equivalence_random_systems(self):
        rng = np.random.default_rng(75)
        dt = 2.5e-3
        ts = np.arange(0, 10.0 + dt / 2, dt)
        for _ in range(20):
            sys_spec = random_stable_system(rng, max_order=3)
            x = random_ungated_signal(rng, max_power=1, re_range=(-2.0, -0.2))
            y = forced_response(sys_spec, x)
            grid = rk4_solve(sys_spec, x, 10.0, dt)
            sym = time_eval_grid(y, ts)
            assert np.max(np.abs(sym - grid.output)) <= 1e-5
