import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awspec import verify
from awspec.exceptions import DomainError, NonConvergenceError, PoleError
from awspec.qcore import (HypergeometricSpec, QContext, exp_itheta, h_product,
                          phi, qpoch, qpoch_inf, qpoch_multi, rphis, w8w7)


class TestQPoch:
    def test_n_zero_is_one(self):
        assert qpoch(2.3 - 1.1j, 0.5, 0) == 1.0

    def test_vanishing_first_factor(self):
        assert qpoch(1.0, 0.5, 3) == 0.0

    def test_two_factor_product(self):
        assert qpoch(0.5, 0.5, 2) == pytest.approx(0.375)

    def test_invalid_n(self):
        with pytest.raises(DomainError):
            qpoch(0.5, 0.5, -1)

    def test_invalid_base(self):
        with pytest.raises(DomainError):
            qpoch(0.5, 1.5, 2)

    @given(st.integers(0, 10), st.integers(0, 10),
           st.complex_numbers(max_magnitude=2.0, allow_nan=False,
                              allow_infinity=False))
    @settings(max_examples=60, deadline=None)
    def test_splitting_identity(self, n, m, a):
        q = 0.5
        lhs = qpoch(a, q, n + m)
        rhs = qpoch(a, q, n) * qpoch(a * q ** n, q, m)
        assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(lhs))


class TestQPochInf:
    def test_zero_argument(self):
        assert qpoch_inf(0.0, 0.5) == 1.0

    def test_unit_argument_vanishes(self):
        assert qpoch_inf(1.0, 0.5) == 0.0

    def test_two_truncations_agree(self):
        v1 = qpoch_inf(0.5, 0.5, tol=1e-10)
        v2 = qpoch_inf(0.5, 0.5, tol=1e-16)
        assert abs(v1 - v2) <= 1e-10 * abs(v2)

    def test_guard_against_budget_exhaustion(self):
        with pytest.raises(NonConvergenceError):
            qpoch_inf(0.5, 0.99999, tol=1e-14, max_terms=5)


class TestQPochMulti:
    def test_empty_product(self):
        assert qpoch_multi([], 0.5, 4) == 1.0

    def test_single_factor_reduction(self):
        assert qpoch_multi([0.3 + 0.1j], 0.5, 5) == qpoch(0.3 + 0.1j, 0.5, 5)

    def test_direct_two_factor(self):
        assert qpoch_multi([0.3, 0.7], 0.5, 1) == pytest.approx(0.21)

    def test_infinite_variant(self):
        v = qpoch_multi([0.3, 0.7], 0.5, None)
        assert v == pytest.approx(qpoch_inf(0.3, 0.5) * qpoch_inf(0.7, 0.5))


class TestRphis:
    def test_zero_argument(self, ctx):
        spec = HypergeometricSpec((0.3, 0.2), (0.7,), 0.5, 0.0)
        assert rphis(spec, ctx) == 1.0

    def test_unit_numerator_parameter(self, ctx):
        spec = HypergeometricSpec((1.0, 0.2), (0.7,), 0.5, 0.35)
        assert rphis(spec, ctx) == 1.0

    def test_heine_transformed_agreement(self, ctx):
        # 2phi1(a,b;c;q,z) against its first Heine transform
        a, b, c, z, q = 0.5, 0.25, 0.125, 0.3, 0.5
        lhs = phi([a, b], [c], q, z, nterms=-1)
        rhs = (qpoch_inf(b, q) * qpoch_inf(a * z, q)
               / (qpoch_inf(c, q) * qpoch_inf(z, q))
               * phi([c / b, z], [a * z], q, b, nterms=-1))
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)

    def test_termination_detection(self):
        spec = HypergeometricSpec((0.5 ** -3, 0.2), (0.7,), 0.5, 1.2)
        assert spec.terminating_order == 3

    def test_pole_error(self, ctx):
        spec = HypergeometricSpec((0.5 ** -4, 0.2), (0.5 ** -2,), 0.5, 0.5)
        with pytest.raises(PoleError):
            rphis(spec, ctx)

    def test_divergence_error(self, ctx):
        spec = HypergeometricSpec((0.3, 0.2, 0.4), (0.1,), 0.5, 1.8)
        with pytest.raises(NonConvergenceError):
            rphis(spec, QContext(0.5, max_terms=300))


class TestW8W7:
    def test_zero_argument(self, ctx):
        assert w8w7(0.3, 0.1, 0.2, 0.15, 0.25, 0.05, 0.5, 0.0, ctx) == 1.0

    def test_terminating_two_term_sum(self, ctx):
        # f = base^{-1}: expand the very-well-poised definition by hand
        q = 0.5
        a, b, c, d, e = 0.3, 0.1, 0.2, 0.17, 0.25
        f = 1.0 / q
        z = 0.4
        got = w8w7(a, b, c, d, e, f, q, z, ctx)
        t1 = (1 - a * q ** 2) * z / (1 - q)
        for v in (b, c, d, e, f):
            t1 *= (1 - v) / (1 - a * q / v)
        assert abs(got - (1.0 + t1)) <= 1e-14 * abs(got)

    def test_watson_transform(self, ctx):
        # terminating 8W7 equals a multiple of a balanced 4phi3
        q = 0.5
        a, b, c = 0.7, 0.8, 0.6
        n, j = 4, 2
        lhs = w8w7(a * a * q ** -n,
                   a * q ** (-j - (n - 1) / 2) / b, a * q ** (-n / 2) / b,
                   -a * q ** ((1 - n) / 2) / c, -a * q ** (-n / 2) / c,
                   q ** -n, q, b * b * c * c * q ** (j + n + 1), ctx)
        pre = (qpoch(a * a * q ** (1 - n), q, n) * qpoch(c * c * q ** 0.5, q, n)
               / (qpoch(-a * c * q ** ((1 - n) / 2), q, n)
                  * qpoch(-a * c * q ** ((2 - n) / 2), q, n)))
        rhs = pre * phi(
            [q ** -n, -a * q ** (-n / 2) / c, -a * q ** ((1 - n) / 2) / c,
             b * b * q ** (j + 0.5)],
            [q ** (-n + 0.5) / (c * c), a * b * q ** (j + (1 - n) / 2),
             a * b * q ** (1 - n / 2)], q, q, nterms=n)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


class TestHProduct:
    def test_empty_params(self):
        assert h_product(0.3, [], 0.5) == 1.0

    def test_chebyshev_case(self):
        # h(cos t; 1, -1, sqrt(q), -sqrt(q)) = (e^{2it}, e^{-2it}; q)_inf
        q, theta = 0.5, math.pi / 3
        x = math.cos(theta)
        lhs = h_product(x, [1.0, -1.0, math.sqrt(q), -math.sqrt(q)], q)
        w2 = cmath.exp(2j * theta)
        rhs = qpoch_inf(w2, q) * qpoch_inf(1.0 / w2, q)
        assert abs(lhs - rhs) <= 1e-13 * abs(rhs)

    def test_real_endpoint_square(self):
        q, a = 0.5, 0.4
        lhs = h_product(1.0, [a], q)
        assert abs(lhs - qpoch_inf(a, q) ** 2) <= 1e-13 * abs(lhs)


class TestExpITheta:
    def test_interval_branch(self):
        w = exp_itheta(0.3)
        assert w == pytest.approx(complex(0.3, math.sqrt(1 - 0.09)))

    def test_large_x_asymptotics(self):
        # sqrt(x^2 - 1) ~ x: e^{i theta} ~ 2x at infinity, both signs
        for x in (1e6, -1e6, 1e6j):
            assert abs(exp_itheta(x) / (2 * x) - 1.0) < 1e-6

    def test_modulus_at_least_one(self, rng):
        for _ in range(50):
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            assert abs(exp_itheta(z)) >= 1.0 - 1e-12


class TestTransformSuites:
    @pytest.mark.parametrize("name", [
        "qcore.heine", "qcore.heine-iterated", "qcore.sears",
        "qcore.saalschutz", "qcore.poch-split", "qcore.phi-poly",
    ])
    def test_suite_passes(self, name):
        r = verify.run_suite(name)
        assert r.passed, f"{name}: {r.max_err} > {r.tol} ({r.detail})"
