import math

import numpy as np
import pytest

from awspec import awop, verify
from awspec.exceptions import DomainError
from awspec.qcore import QContext, phi
from awspec.qpolys import (AWParams, JacobiLevel, Normalization, aw_norm,
                           aw_poly, awpoly_to_cqj_factor, connection_down,
                           cqjacobi, cqjacobi_seq, dual_expansion,
                           dual_expansion_aw, hermite_h, kappa_aw, norm_h,
                           classical_to_aw_factor, weight_w, _weight_w_complex)


class TestAWPoly:
    def test_degree_zero(self, ctx):
        params = AWParams.from_level(JacobiLevel(0.3, -0.2), ctx.q)
        assert aw_poly(0, params, 0.3, ctx) == 1.0

    def test_hermite_specialization(self):
        # all-zero parameters against the three-term recurrence oracle
        ctx = QContext(0.5)
        x = 0.3
        h0, h1 = 1.0, 2 * x
        h2 = 2 * x * h1 - (1 - 0.5) * h0
        got = aw_poly(2, (0, 0, 0, 0), x, ctx)
        assert abs(got - h2) <= 1e-14

    def test_hermite_routes_agree(self, ctx):
        for n in range(9):
            a = hermite_h(n, 0.37, ctx.q, method="recurrence")
            b = hermite_h(n, 0.37, ctx.q, method="theta")
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_bcd_permutation_symmetry(self, ctx, rng):
        a, b, c, d = 0.6, 0.3, -0.45, 0.2
        x = rng.uniform(-0.9, 0.9)
        base = aw_poly(5, (a, b, c, d), x, ctx)
        for perm in [(a, c, b, d), (a, d, c, b), (a, c, d, b)]:
            assert abs(aw_poly(5, perm, x, ctx) - base) <= 1e-12 * abs(base)

    def test_zero_parameter_permuted_to_front(self, ctx):
        v1 = aw_poly(4, (0.0, 0.5, -0.3, 0.2), 0.4, ctx)
        v2 = aw_poly(4, (0.5, 0.0, -0.3, 0.2), 0.4, ctx)
        assert abs(v1 - v2) <= 1e-12 * abs(v1)

    def test_phi_route_matches_recurrence(self, ctx, level, rng):
        params = AWParams.from_level(level, ctx.q)
        for n in range(7):
            x = rng.uniform(-0.9, 0.9)
            v1 = aw_poly(n, params, x, ctx, method="phi")
            v2 = aw_poly(n, params, x, ctx, method="recurrence")
            assert abs(v1 - v2) <= 1e-11 * max(1.0, abs(v1))


class TestCqjacobi:
    def test_degree_zero_both_normalizations(self, ctx):
        aw = JacobiLevel(0.3, -0.2, Normalization.ASKEY_WILSON)
        ra = JacobiLevel(0.3, -0.2, Normalization.CLASSICAL)
        assert cqjacobi(0, aw, 0.4, ctx) == 1.0
        assert cqjacobi(0, ra, 0.4, ctx) == 1.0

    def test_normalization_relation(self):
        # classical normalization at base q vs Askey-Wilson form at base q^2
        n, al, be, q, x = 3, 0.5, -0.25, 0.49, 0.2
        ra = JacobiLevel(al, be, Normalization.CLASSICAL)
        lhs = cqjacobi(n, ra, x, QContext(q), method="phi")
        aw = JacobiLevel(al, be, Normalization.ASKEY_WILSON)
        rhs = (classical_to_aw_factor(n, ra, q)
               * cqjacobi(n, aw, x, QContext(q * q)))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_aw_equals_specialized_askey_wilson(self, ctx, level, rng):
        # the alternate representation equals the four-parameter polynomial
        n = 3
        x = rng.uniform(-0.9, 0.9)
        params = AWParams.from_level(level, ctx.q)
        lhs = aw_poly(n, params, x, ctx)
        rhs = awpoly_to_cqj_factor(n, level, ctx.q) * cqjacobi(n, level, x, ctx)
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)

    def test_seq_matches_scalar(self, ctx, level):
        xs = np.array([-0.5, 0.2, 0.8])
        seq = cqjacobi_seq(5, level, xs, ctx)
        for n in range(6):
            for i, x in enumerate(xs):
                assert abs(seq[n][i] - cqjacobi(n, level, float(x), ctx)) \
                    <= 1e-12 * max(1.0, abs(seq[n][i]))


class TestWeight:
    def test_two_routes_agree(self):
        ctx = QContext(0.64)
        level = JacobiLevel(0.3, -0.2)
        a = weight_w(level, 0.5, ctx, route="h")
        b = weight_w(level, 0.5, ctx, route="literal")
        assert abs(a - b) <= 1e-10 * abs(a)

    def test_positive_on_grid(self, ctx, level):
        for x in np.linspace(-0.99, 0.99, 101):
            assert weight_w(level, float(x), ctx) > 0.0

    def test_real_level_weight_is_real(self, ctx, level):
        for x in (-0.7, 0.1, 0.8):
            v = _weight_w_complex(level, x, ctx)
            assert abs(v.imag) <= 1e-13 * abs(v)

    def test_conjugate_pair_routes_agree(self):
        # the conjugate-pair weight is genuinely complex (parameter multiset
        # is not conjugation-stable); the two independent evaluation routes
        # must still agree, and orthogonality holds bilinearly against it
        ctx = QContext(0.5)
        level = JacobiLevel(0.3 + 0.4j, 0.3 - 0.4j)
        for x in (-0.6, 0.2, 0.7):
            v1 = _weight_w_complex(level, x, ctx, route="h")
            v2 = _weight_w_complex(level, x, ctx, route="literal")
            assert abs(v1 - v2) <= 1e-11 * abs(v1)

    def test_domain_error_at_endpoints(self, ctx, level):
        with pytest.raises(DomainError):
            weight_w(level, 1.0, ctx)


class TestNorms:
    def test_quadrature_matches_closed_form(self, ctx):
        level = JacobiLevel(0.3, -0.2)
        rule = awop.make_rule(200)
        w = awop.weight_theta_grid(level, rule, ctx)
        xs = np.cos(rule.nodes)
        polys = cqjacobi_seq(6, level, xs, ctx)
        for n in range(7):
            quad = np.sum(rule.weights * w * polys[n] * polys[n])
            hn = norm_h(n, level, ctx)
            assert abs(quad - hn) <= 1e-8 * abs(hn)

    def test_h0_is_total_mass(self, ctx, level):
        rule = awop.make_rule(200)
        mass = awop.quad_weighted(level, rule, ctx, np.ones(rule.size))
        assert abs(mass - norm_h(0, level, ctx)) <= 1e-8 * abs(mass)

    def test_askey_wilson_route(self, ctx, level):
        # AW orthogonality norm with the q-Jacobi parameters, converted
        params = AWParams.from_level(level, ctx.q)
        for n in range(5):
            aw = aw_norm(n, params, ctx.q, ctx.tol)
            conv = awpoly_to_cqj_factor(n, level, ctx.q)
            assert abs(aw / conv ** 2 - norm_h(n, level, ctx)) \
                <= 1e-10 * abs(aw / conv ** 2)

    def test_kappa_is_degree_zero_norm(self, ctx, level):
        params = AWParams.from_level(level, ctx.q)
        k = kappa_aw(params, ctx.q)
        assert abs(aw_norm(0, params, ctx.q) - k) <= 1e-13 * abs(k)


class TestConnection:
    def test_degree_zero_triple(self, ctx, level):
        t = connection_down(0, level, ctx)
        assert t.c_nn1 == 0.0 and t.c_nn2 == 0.0
        assert t.c_nn != 0.0

    def test_pointwise_identity(self):
        n, al, be, q, x = 4, 0.5, -0.25, 0.36, 0.7
        ctx = QContext(q)
        level = JacobiLevel(al, be)
        t = connection_down(n, level, ctx)
        lhs = cqjacobi(n, level, x, ctx)
        up = level.shifted(1)
        rhs = (t.c_nn * cqjacobi(n, up, x, ctx)
               + t.c_nn1 * cqjacobi(n - 1, up, x, ctx)
               + t.c_nn2 * cqjacobi(n - 2, up, x, ctx))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_symmetric_level_middle_coefficient_vanishes(self, ctx):
        level = JacobiLevel(0.4, 0.4)
        t = connection_down(3, level, ctx)
        assert t.c_nn1 == 0.0

    def test_classical_limit_ratios(self):
        # q -> 1: coefficient ratios against brute-force expansion of
        # classical Jacobi polynomials (independent binomial-formula oracle)
        q = 1.0 - 1e-4
        ctx = QContext(q)
        al, be = 0.5, -0.25

        def classical(n, a, b, x):
            tot = 0.0
            for s in range(n + 1):
                tot += (math.comb(n, s) * _rising(a + s + 1, n - s)
                        * _rising(a + b + n + 1, s) / math.factorial(n)
                        * ((x - 1) / 2) ** s)
            return tot

        def _rising(a, k):
            out = 1.0
            for i in range(k):
                out *= a + i
            return out

        for n in (3, 4):
            level = JacobiLevel(al, be)
            t = connection_down(n, level, ctx)
            # classical connection coefficients by linear solve at nodes
            xs = np.linspace(-0.8, 0.8, n + 1)
            A = np.array([[classical(m, al + 1, be + 1, x) for m in (n, n - 1, n - 2)]
                          for x in xs])
            rhs = np.array([classical(n, al, be, x) for x in xs])
            chat, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            # normalization-free comparison via scale factors measured at q
            scale = []
            for m in (n, n - 1, n - 2):
                xref = 0.63
                scale.append(cqjacobi(m, level.shifted(1), xref, ctx).real
                             / classical(m, al + 1, be + 1, xref))
            for i, m in enumerate((n - 1, n - 2)):
                got = (t.as_tuple()[i + 1] * scale[i + 1]
                       / (t.c_nn * scale[0]))
                want = chat[i + 1] / chat[0]
                assert abs(got - want) <= 2e-3 * abs(want)


class TestDualExpansion:
    def test_requires_positive_degree(self, ctx, level):
        with pytest.raises(DomainError):
            dual_expansion(0, level, ctx)

    def test_pointwise_identity_classical(self, ctx):
        n, al, be, q, x = 3, 0.5, -0.25, 0.36, 0.4
        ctx = QContext(q)
        level = JacobiLevel(al, be, Normalization.CLASSICAL)
        A = dual_expansion(n, level, ctx)
        quad = ((1 - 2 * x * q ** (al + 0.5) + q ** (2 * al + 1))
                * (1 + 2 * x * q ** (be + 0.5) + q ** (2 * be + 1)))
        lhs = quad * cqjacobi(n - 1, level.shifted(1), x, ctx, method="phi")
        rhs = sum(c * cqjacobi(m, level, x, ctx, method="phi")
                  for c, m in zip(A, (n - 1, n, n + 1)))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_pointwise_identity_aw(self):
        n, al, be, q, x = 3, 0.5, -0.25, 0.36, 0.4
        ctx = QContext(q)
        ctx2 = QContext(q * q)
        level = JacobiLevel(al, be)
        E = dual_expansion_aw(n, level, ctx)
        quad = ((1 - 2 * x * q ** (al + 0.5) + q ** (2 * al + 1))
                * (1 + 2 * x * q ** (be + 0.5) + q ** (2 * be + 1)))
        lhs = quad * cqjacobi(n - 1, level.shifted(1), x, ctx2)
        rhs = sum(c * cqjacobi(m, level, x, ctx2)
                  for c, m in zip(E, (n - 1, n, n + 1)))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_lower_projections_vanish(self, ctx):
        # expansion coefficients below degree n-1 are zero: quadrature check
        # (the base-q statement carries the quadratic factor in p = sqrt q)
        n = 5
        q = ctx.q
        level = JacobiLevel(0.3, -0.2)
        p = math.sqrt(q)
        rule = awop.make_rule(200)
        xs = np.cos(rule.nodes)
        al, be = 0.3, -0.2
        quadf = ((1 - 2 * xs * p ** (al + 0.5) + p ** (2 * al + 1))
                 * (1 + 2 * xs * p ** (be + 0.5) + p ** (2 * be + 1)))
        up = cqjacobi_seq(n - 1, level.shifted(1), xs, ctx)[n - 1]
        w = awop.weight_theta_grid(level, rule, ctx)
        lows = cqjacobi_seq(n - 2, level, xs, ctx)
        for k in range(n - 1):
            proj = np.sum(rule.weights * w * quadf * up * lows[k])
            assert abs(proj) <= 1e-9

    def test_classical_limit(self):
        # q -> 1: coefficients/4 approach the classical three-term data
        q = 1.0 - 1e-4
        ctx = QContext(q)
        al, be = 0.5, -0.25
        n = 3
        A = dual_expansion(n, JacobiLevel(al, be), ctx)
        c1 = 4 * (n + al) * (n + be) / ((2 * n + al + be) * (2 * n + al + be + 1))
        c2 = 4 * n * (al - be) / ((2 * n + al + be) * (2 * n + al + be + 2))
        c3 = -4 * n * (n + 1) / ((2 * n + al + be + 1) * (2 * n + al + be + 2))
        for got, want in zip(A, (c1, c2, c3)):
            assert abs(got / 4 - want) <= 1e-3 * abs(want)


class TestSuites:
    @pytest.mark.parametrize("name", [
        "qpolys.orthogonality", "qpolys.duality", "qpolys.contiguous",
    ])
    def test_suite_passes(self, name):
        r = verify.run_suite(name)
        assert r.passed, f"{name}: {r.max_err} > {r.tol} ({r.detail})"
