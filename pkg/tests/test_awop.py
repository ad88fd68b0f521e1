import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awspec import verify
from awspec.awop import (CoeffVector, dq_coeffs, dq_pointwise, eval_coeffvector,
                         kernel_eval, make_rule, t_coeffs, t_factor,
                         t_quadrature, weight_theta_grid, xi_factor)
from awspec.exceptions import DomainError
from awspec.qcore import QContext
from awspec.qpolys import JacobiLevel, cqjacobi, cqjacobi_seq


class TestDqPointwise:
    def test_constant_maps_to_zero(self, ctx):
        assert dq_pointwise(lambda t: 1.0, 0.3, ctx) == 0.0

    def test_identity_maps_to_one(self, ctx):
        v = dq_pointwise(lambda t: t, 0.3, ctx)
        assert abs(v - 1.0) <= 1e-14

    def test_chebyshev_t2(self):
        # D_q T_2 = (q - q^{-1})/(q^{1/2} - q^{-1/2}) U_1,  U_1 = 2x
        q, x = 0.5, 0.3
        ctx = QContext(q)
        t2 = lambda t: 2 * t * t - 1
        lhs = dq_pointwise(t2, x, ctx)
        rhs = (q - 1 / q) / (math.sqrt(q) - 1 / math.sqrt(q)) * 2 * x
        assert abs(lhs - rhs) <= 1e-13 * abs(rhs)

    def test_domain_error_at_endpoints(self, ctx):
        with pytest.raises(DomainError):
            dq_pointwise(lambda t: t, 1.0, ctx)


class TestCoefficientOperators:
    def test_dq_unit_vector(self, ctx, level):
        f = CoeffVector(level, (0.0, 1.0))
        out = dq_coeffs(f, ctx)
        assert out.level == level.shifted(1)
        assert out.coeffs[0] == xi_factor(1, level, ctx.q)

    def test_dq_zero_vector(self, ctx, level):
        out = dq_coeffs(CoeffVector(level, (0.0, 0.0, 0.0)), ctx)
        assert all(c == 0.0 for c in out.coeffs)

    def test_dq_pointwise_agreement(self, ctx, level, rng):
        # coefficient ladder against the pointwise operator for P_3
        xi3 = xi_factor(3, level, ctx.q)
        for x in rng.uniform(-0.9, 0.9, 20):
            lhs = dq_pointwise(lambda t: cqjacobi(3, level, t, ctx), x, ctx)
            rhs = xi3 * cqjacobi(2, level.shifted(1), x, ctx)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))

    def test_t_unit_vector_factor(self, ctx, level):
        # the degree-0 -> degree-1 factor in closed form
        q = ctx.q
        al, be = 0.3, -0.2
        g = CoeffVector(level.shifted(1), (1.0,))
        out = t_coeffs(g, ctx)
        want = ((1 - q) * (1 + q ** ((al + be + 1) / 2))
                * (1 + q ** ((al + be + 2) / 2)) * q ** (-(2 * al + 1) / 4)
                / (2 * (1 - q ** (al + be + 2))))
        assert out.coeffs[0] == 0.0
        assert abs(out.coeffs[1] - want) <= 1e-14 * abs(want)

    def test_round_trip_identity(self, ctx, level, rng):
        g = CoeffVector(level.shifted(1), tuple(rng.standard_normal(7)))
        back = dq_coeffs(t_coeffs(g, ctx), ctx)
        for a, b in zip(back.coeffs, g.coeffs):
            assert abs(a - b) <= 1e-15 * max(1.0, abs(b))

    def test_level_mismatch_rejected(self, ctx, level):
        a = CoeffVector(level, (1.0,))
        b = CoeffVector(level.shifted(1), (1.0,))
        with pytest.raises(DomainError):
            a + b

    @given(st.lists(st.floats(-2, 2), min_size=1, max_size=6))
    @settings(max_examples=25, deadline=None)
    def test_round_trip_property(self, coeffs):
        ctx = QContext(0.5)
        level = JacobiLevel(0.3, -0.2)
        g = CoeffVector(level.shifted(1), tuple(coeffs))
        back = dq_coeffs(t_coeffs(g, ctx), ctx)
        for a, b in zip(back.coeffs, g.coeffs):
            assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


class TestKernel:
    def test_truncation_stability(self):
        ctx = QContext(0.5)
        level = JacobiLevel(0.3, -0.2)
        x, y = 0.2, -0.4
        k60 = kernel_eval(x, y, level, ctx, nterms=60)
        k120 = kernel_eval(x, y, level, ctx, nterms=120)
        assert abs(k60 - k120) < 1e-10

    def test_reproducing_property(self, ctx, level):
        # integrating the kernel against P_0 at the shifted level yields
        # the degree-0 -> degree-1 coefficient times P_1
        rule = make_rule(160)
        fac = t_factor(0, level, ctx.q)
        for x in (-0.5, 0.2, 0.7):
            got = t_quadrature(lambda t: 1.0, x, level, rule, ctx)
            want = fac * cqjacobi(1, level, x, ctx)
            assert abs(got - want) <= 1e-7 * max(1.0, abs(want))

    def test_term_ratio_geometric_mean(self, ctx, level):
        # consecutive term magnitudes oscillate; their geometric mean
        # approaches sqrt(q) (not q: the coefficient growth 1/h_n' beats
        # the q^n factor by q^{-n/2} against the polynomial amplitudes)
        q = ctx.q
        x, y = 0.2, -0.4
        n_hi = 96
        px = cqjacobi_seq(n_hi + 1, level, x, ctx)
        py = cqjacobi_seq(n_hi, level.shifted(1), y, ctx)
        from awspec.awop import _kernel_factor
        terms = [_kernel_factor(n, level, ctx) * px[n + 1] * py[n]
                 for n in range(n_hi)]
        logs = [math.log(abs(terms[n + 1] / terms[n]))
                for n in range(30, n_hi - 1)]
        gm = math.exp(sum(logs) / len(logs))
        assert abs(gm - math.sqrt(q)) <= 0.1 * math.sqrt(q)

    def test_quadrature_error_report(self, ctx, level):
        rule = make_rule(96)
        val, err = t_quadrature(lambda t: t * t, 0.3, level, rule, ctx,
                                return_error=True)
        assert err <= 1e-10

    def test_zero_function(self, ctx, level):
        rule = make_rule(64)
        assert t_quadrature(lambda t: 0.0, 0.2, level, rule, ctx) == 0.0


class TestQuadrature:
    def test_rule_doubling_consistency(self, ctx, level):
        # smooth test integral reproduced under node doubling
        f = np.cos
        r1 = make_rule(96)
        r2 = make_rule(192)
        w1 = weight_theta_grid(level, r1, ctx)
        w2 = weight_theta_grid(level, r2, ctx)
        v1 = np.sum(r1.weights * w1 * f(np.cos(r1.nodes)))
        v2 = np.sum(r2.weights * w2 * f(np.cos(r2.nodes)))
        assert abs(v1 - v2) <= 1e-12 * abs(v2)

    def test_eval_coeffvector(self, ctx, level):
        vec = CoeffVector(level, (0.5, -1.0, 2.0))
        x = 0.37
        want = (0.5 - 1.0 * cqjacobi(1, level, x, ctx)
                + 2.0 * cqjacobi(2, level, x, ctx))
        assert abs(eval_coeffvector(vec, x, ctx) - want) <= 1e-13 * abs(want)


class TestSuites:
    @pytest.mark.parametrize("name", [
        "awop.ladder", "awop.right-inverse", "awop.kernel-coeff",
    ])
    def test_suite_passes(self, name):
        r = verify.run_suite(name)
        assert r.passed, f"{name}: {r.max_err} > {r.tol} ({r.detail})"
