import math

import pytest

from awspec import verify
from awspec.awop import dq_pointwise, make_rule
from awspec.qcore import QContext, qpoch_inf, phi
from awspec.qpolys import JacobiLevel
from awspec.qexp import (am_coeff, bc_params, e_series_invariant,
                         e_series_invariant_closed, eq_eigenvalue_dq, eq_exp,
                         expansion_residual, hermite_identity_residual,
                         hermite_series, imn_quadrature, jm_closed,
                         jm_double_series, jm_quadrature)


class TestEqExp:
    def test_zero_b_is_one(self, ctx):
        assert eq_exp(0.3, -1j, 0.0, ctx) == 1.0

    def test_truncation_self_consistency(self, ctx):
        v1 = eq_exp(0.3, -1j, 0.4, ctx, nmax=60)
        v2 = eq_exp(0.3, -1j, 0.4, ctx, nmax=70)
        assert abs(v1 - v2) < 1e-13

    def test_dq_eigenrelation(self):
        x, a, b, q = 0.3, -1j, 0.4, 0.5
        ctx = QContext(q)
        lhs = dq_pointwise(lambda t: eq_exp(t, a, b, ctx), x, ctx)
        rhs = eq_eigenvalue_dq(a, b, q) * eq_exp(x, a, b, ctx)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


class TestExpansionCoefficients:
    def test_m_zero_closed_form(self, ctx, level):
        # a_0 = (i r q^{1/2}; q)_inf/(-i r; q)_inf
        #       * 2phi1(c q^{1/4}, -b q^{1/4}; bc q^{1/2} | q^{1/2}, i r)
        q = ctx.q
        r = 0.3
        b, c = bc_params(level, q)
        want = (qpoch_inf(1j * r * math.sqrt(q), q) / qpoch_inf(-1j * r, q)
                * phi([c * q ** 0.25, -b * q ** 0.25], [b * c * q ** 0.5],
                      math.sqrt(q), 1j * r, nterms=-1))
        got = am_coeff(0, r, level, ctx)
        assert abs(got - want) <= 1e-13 * abs(want)

    def test_r_zero_collapses_to_constant(self, ctx, level):
        assert am_coeff(0, 0.0, level, ctx) == 1.0
        for m in (1, 2, 5):
            assert abs(am_coeff(m, 0.0, level, ctx)) == 0.0

    def test_quadrature_route(self, ctx, level):
        # closed form against the orthogonality projection J_m / norm
        r = 0.3
        rule = make_rule(220)
        from awspec.qpolys import aw_norm
        from awspec.qexp import _expansion_params
        params = _expansion_params(level, ctx.q)
        for m in range(4):
            jq = jm_quadrature(m, -1j, r, level, ctx, rule)
            am_q = jq / aw_norm(m, params, ctx.q, ctx.tol)
            assert abs(am_q - am_coeff(m, r, level, ctx)) \
                <= 1e-7 * max(1.0, abs(am_q))

    def test_jm_closed_matches_quadrature(self, ctx, level):
        r = 0.3
        rule = make_rule(220)
        for m in (0, 1):
            jq = jm_quadrature(m, -1j, r, level, ctx, rule)
            jc = jm_closed(m, r, level, ctx)
            assert abs(jq - jc) <= 1e-7 * abs(jc)

    def test_jm_double_series_general_argument(self, ctx, level):
        # the double series covers a != -i; checked against quadrature
        r = 0.3
        rule = make_rule(220)
        for a, m in [(0.5j, 0), (0.5j, 1), (0.5j, 2)]:
            jq = jm_quadrature(m, a, r, level, ctx, rule)
            jd = jm_double_series(m, a, r, level, ctx)
            assert abs(jq - jd) <= 1e-6 * max(1.0, abs(jq))

    def test_imn_vanishing(self, ctx, level):
        assert abs(imn_quadrature(3, 1, -1j, level, ctx)) <= 1e-9


class TestExpansionResidual:
    def test_reference_point(self):
        ctx = QContext(0.5)
        level = JacobiLevel(0.3, -0.2)
        assert expansion_residual(0.2, 0.3, level, ctx, m_trunc=25) < 1e-8

    def test_r_zero_exact(self, ctx, level):
        assert expansion_residual(0.2, 0.0, level, ctx, m_trunc=3) < 1e-14

    def test_residual_decreases_in_truncation(self, ctx, level):
        # strictly decreasing until the 1e-14 roundoff floor (reached by
        # M ~ 11 at these parameters)
        resids = [expansion_residual(0.2, 0.3, level, ctx, m_trunc=m)
                  for m in (3, 5, 7, 9)]
        assert all(b < a for a, b in zip(resids, resids[1:]))
        assert expansion_residual(0.2, 0.3, level, ctx, m_trunc=20) <= 1e-13


class TestHermiteIdentity:
    def test_residual_at_reference_point(self):
        ctx = QContext(0.5)
        assert hermite_identity_residual(2.5, 0.3, ctx) < 1e-10

    def test_large_lambda_limit(self, ctx):
        lam = 1e8
        lhs = hermite_series(lam, 0.3, ctx)
        rhs = qpoch_inf(lam ** -2.0, ctx.q ** 2) * eq_exp(0.3, -1j, 1j / lam, ctx)
        assert abs(lhs - 1.0) < 1e-7 and abs(rhs - 1.0) < 1e-7

    def test_identity_domain_boundary(self, ctx):
        # the E_q series has convergence radius |ab| = 1, so the identity
        # lives on |lambda| > 1; at lambda = q the Pochhammer factor
        # vanishes exactly while the H-series does not (its continuation
        # pole cancels the zero), and the series evaluation refuses the
        # out-of-disc argument rather than returning garbage
        lam = ctx.q
        assert abs(qpoch_inf(lam ** -2.0, ctx.q ** 2, ctx.tol)) == 0.0
        assert abs(hermite_series(lam, 0.3, ctx)) > 1e-3
        from awspec.exceptions import NonConvergenceError
        with pytest.raises(NonConvergenceError):
            eq_exp(0.3, -1j, 1j / lam, ctx)


class TestInvariantValue:
    def test_matches_closed_form(self, ctx, level):
        for lam, x in [(1.7, 0.3), (0.9, -0.4)]:
            c = e_series_invariant(x, lam, level, ctx)
            cc = e_series_invariant_closed(x, lam, ctx)
            assert abs(c - cc) <= 1e-9 * abs(c)

    def test_level_shift_single_step(self, ctx, level):
        # the one-step functional equation: the combined value is already
        # invariant under (a, b) -> (a+1, b+1); the displayed prefactor's
        # residual Pochhammer ratio is identically 1
        q = ctx.q
        al, be = 0.3, -0.2
        from awspec.qcore import qpoch
        num = qpoch(q ** (al + be + 1), q, 2)
        den = (qpoch(q ** ((al + be + 1) / 2), math.sqrt(q), 2)
               * qpoch(-q ** ((al + be + 1) / 2), math.sqrt(q), 2))
        assert abs(num / den - 1.0) <= 1e-14
        c0 = e_series_invariant(0.3, 1.7, level, ctx)
        c1 = e_series_invariant(0.3, 1.7, level.shifted(1), ctx)
        assert abs(c0 - c1) <= 1e-9 * abs(c0)


class TestSuites:
    @pytest.mark.parametrize("name", [
        "qexp.dq-eigen", "qexp.expansion-coeffs", "qexp.expansion-residual",
        "qexp.level-shift", "qexp.hermite-value",
    ])
    def test_suite_passes(self, name):
        r = verify.run_suite(name)
        assert r.passed, f"{name}: {r.max_err} > {r.tol} ({r.detail})"
