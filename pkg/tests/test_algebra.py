import cmath

import numpy as np
import pytest

from sdomain.algebra import (
    Polynomial,
    RationalFunction,
    RootSet,
    partial_fractions,
    poly,
    poly_add,
    poly_eval,
    poly_from_roots,
    poly_mul,
    poly_roots,
    rational,
    rational_normalize,
)


class TestPolyAdd:
    def test_pointwise_sum(self):
        assert poly_add(poly([1, 2]), poly([3])).coeffs == (4 + 0j, 2 + 0j)

    def test_zero_identity(self):
        p = poly([1.5, -2.0, 3.0])
        assert poly_add(p, Polynomial()) == p

    def test_cancellation_recanonicalizes(self):
        out = poly_add(poly([1, 1]), poly([-1, -1]))
        assert out.is_zero
        assert out.coeffs == ()
        assert out.degree == -1


class TestPolyMul:
    def test_difference_of_squares(self):
        assert poly_mul(poly([1, 1]), poly([1, -1])).coeffs == (1 + 0j, 0j, -1 + 0j)

    def test_one_identity(self):
        p = poly([2, 0, 5])
        assert poly_mul(p, poly([1])) == p

    def test_expansion(self):
        assert poly_mul(poly([2, 1]), poly([3, 1])).coeffs == (6 + 0j, 5 + 0j, 1 + 0j)


class TestPolyEval:
    def test_root_of_product(self):
        assert poly_eval(poly([6, 5, 1]), -2.0) == 0

    def test_zero_polynomial(self):
        assert poly_eval(Polynomial(), 3.7 + 2j) == 0

    def test_direct_substitution(self):
        assert poly_eval(poly([1, 1]), 1j) == 1 + 1j


class TestPolyRoots:
    def test_imaginary_pair(self):
        rs = poly_roots(poly([1, 0, 1]))
        assert rs.roots == ((-1j, 1), (1j, 1))

    def test_double_root(self):
        rs = poly_roots(poly([1, 2, 1]))
        assert len(rs.roots) == 1
        value, mult = rs.roots[0]
        assert mult == 2
        assert abs(value + 1) < 1e-7

    def test_cubic_via_horner_residual(self):
        # independent oracle: evaluate the polynomial at each returned root
        p = poly([-6, 11, -6, 1])
        rs = poly_roots(p)
        assert rs.total_multiplicity == 3
        for value, mult in rs.roots:
            assert mult == 1
            acc = 0j
            for c in reversed(p.coeffs):
                acc = acc * value + c
            assert abs(acc) < 1e-9
        np.testing.assert_allclose(
            sorted(v.real for v in rs.values()), [1.0, 2.0, 3.0], atol=1e-9
        )

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(ValueError, match="no roots"):
            poly_roots(poly([4.0]))
        with pytest.raises(ValueError, match="no roots"):
            poly_roots(Polynomial())

    def test_quadruple_root_recovered(self):
        p = poly_from_roots(1.0, [(-1.0, 4)])
        rs = poly_roots(p)
        assert [m for _, m in rs.roots] == [4]
        assert abs(rs.roots[0][0] + 1.0) < 1e-9


class TestRationalNormalize:
    def test_common_factor_cancellation(self):
        r = rational(poly([2, 1]), poly_mul(poly([1, 1]), poly([2, 1])))
        np.testing.assert_allclose(np.array(r.num.coeffs), [1.0], atol=1e-12)
        np.testing.assert_allclose(np.array(r.den.coeffs), [1.0, 1.0], atol=1e-12)

    def test_monic_scaling(self):
        r = rational(poly([0, 2]), poly([2, 2]))
        np.testing.assert_allclose(np.array(r.num.coeffs), [0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(np.array(r.den.coeffs), [1.0, 1.0], atol=1e-15)

    def test_zero_numerator_collapses(self):
        r = rational(Polynomial(), poly([5, 1]))
        assert r.num.is_zero
        assert r.den.coeffs == (1 + 0j,)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(poly([1]), Polynomial())

    def test_idempotent_and_value_preserving(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            num = poly(rng.normal(size=3) + 1j * rng.normal(size=3))
            den = poly_from_roots(
                1.0, [(complex(rng.uniform(-3, -0.5), rng.normal()), 1) for _ in range(3)]
            )
            r1 = rational_normalize(RationalFunction(num, den))
            r2 = rational_normalize(r1)
            assert r1.num == r2.num and r1.den == r2.den
            for _ in range(20):
                s = complex(rng.normal(scale=3), rng.normal(scale=3))
                if abs(poly_eval(den, s)) < 1e-3:
                    continue
                lhs = poly_eval(num, s) / poly_eval(den, s)
                rhs = r1(s)
                assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs))


class TestPartialFractions:
    def test_textbook_two_pole_split(self):
        part, terms = partial_fractions(rational(poly([1]), poly([0, 1, 1])))
        assert part.is_zero
        assert len(terms) == 2
        by_pole = {round(t.pole.real, 6): t for t in terms}
        assert abs(by_pole[-1.0].coefficient + 1.0) < 1e-10
        assert abs(by_pole[0.0].coefficient - 1.0) < 1e-10
        assert all(t.order == 1 for t in terms)

    def test_already_a_partial_fraction(self):
        part, terms = partial_fractions(rational(poly([1]), poly([1, 2, 1])))
        assert part.is_zero
        assert len(terms) >= 1
        top = max(terms, key=lambda t: t.order)
        assert top.order == 2
        assert abs(top.pole + 1.0) < 1e-9
        assert abs(top.coefficient - 1.0) < 1e-9
        for t in terms:
            if t is not top:
                assert abs(t.coefficient) < 1e-12

    def test_improper_input_gets_polynomial_part(self):
        r = RationalFunction(poly([1, 0, 1]), poly([1, 1]))
        part, terms = partial_fractions(r)
        # oracle: sample both sides at independent points
        for s in (0.0, 1.0, 2.0, 1j):
            lhs = poly_eval(r.num, s) / poly_eval(r.den, s)
            rhs = poly_eval(part, s) + sum(
                t.coefficient / (s - t.pole) ** t.order for t in terms
            )
            assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lhs))
        np.testing.assert_allclose(np.array(part.coeffs), [-1.0, 1.0], atol=1e-10)
        assert len(terms) == 1 and abs(terms[0].coefficient - 2.0) < 1e-9

    def test_resummation_on_random_rationals(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            n_poles = int(rng.integers(1, 5))
            roots = []
            for _ in range(n_poles):
                mult = int(rng.integers(1, 3))
                roots.append((complex(rng.uniform(-4, -0.3), rng.normal()), mult))
            den = poly_from_roots(1.0, roots)
            num = poly(rng.normal(size=min(den.degree, 3)))
            if num.is_zero:
                continue
            r = rational(num, den)
            part, terms = partial_fractions(r)
            for _ in range(2 * den.degree + 1):
                s = complex(rng.normal(scale=4), rng.normal(scale=4))
                if min(abs(s - v) for v, _ in roots) < 0.3:
                    continue
                lhs = r(s)
                rhs = poly_eval(part, s) + sum(
                    t.coefficient / (s - t.pole) ** t.order for t in terms
                )
                assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs))


class TestRingProperties:
    def test_ring_axioms_random_degree_8(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = poly(rng.normal(size=int(rng.integers(1, 9))))
            b = poly(rng.normal(size=int(rng.integers(1, 9))))
            c = poly(rng.normal(size=int(rng.integers(1, 9))))
            assoc_l = poly_add(poly_add(a, b), c)
            assoc_r = poly_add(a, poly_add(b, c))
            width = max(len(assoc_l.coeffs), len(assoc_r.coeffs))
            la = list(assoc_l.coeffs) + [0j] * (width - len(assoc_l.coeffs))
            ra = list(assoc_r.coeffs) + [0j] * (width - len(assoc_r.coeffs))
            np.testing.assert_allclose(np.array(la), np.array(ra), atol=1e-12)

            dist_l = poly_mul(a, poly_add(b, c))
            dist_r = poly_add(poly_mul(a, b), poly_mul(a, c))
            width = max(len(dist_l.coeffs), len(dist_r.coeffs))
            ld = list(dist_l.coeffs) + [0j] * (width - len(dist_l.coeffs))
            rd = list(dist_r.coeffs) + [0j] * (width - len(dist_r.coeffs))
            np.testing.assert_allclose(np.array(ld), np.array(rd), atol=1e-12)

    def test_eval_is_multiplicative(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            a = poly(rng.normal(size=int(rng.integers(1, 9))))
            b = poly(rng.normal(size=int(rng.integers(1, 9))))
            s = complex(rng.normal(), rng.normal())
            lhs = poly_eval(poly_mul(a, b), s)
            rhs = poly_eval(a, s) * poly_eval(b, s)
            assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))

    def test_root_reconstruction_well_separated(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            degree = int(rng.integers(2, 9))
            roots = []
            while len(roots) < degree:
                z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
                if all(abs(z - w) > 0.5 for w in roots):
                    roots.append(z)
            lead = complex(rng.uniform(0.5, 2.0))
            p = poly_from_roots(lead, [(z, 1) for z in roots])
            rs = poly_roots(p)
            recon = poly_from_roots(lead, rs.roots)
            gap = max(abs(x - y) for x, y in zip(recon.coeffs, p.coeffs))
            assert gap <= 1e-8 * max(1.0, max(abs(c) for c in p.coeffs))
