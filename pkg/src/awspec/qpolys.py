"""Continuous q-Jacobi and Askey-Wilson polynomials, weights, norms and
connection coefficients.

Two normalizations are supported: the classically normalized form P_n(x; q)
(whose q -> 1 limit is the classical Jacobi polynomial) and the
Askey-Wilson form P_n(x | q), related by

    P_n(x; q) = (-q^{a+b+1}; q)_n / (-q; q)_n * q^{-a n} * P_n(x | q^2).

Large-degree evaluation goes through the standard Askey-Wilson three-term
recurrence: the defining terminating 4phi3 alternates with terms of size
base^{-n(n-1)/2} and loses that many digits to cancellation, while the
recurrence is stable on [-1, 1].  Tests cross-validate the two routes.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .qcore import exp_itheta, h_product, phi, qpoch, qpoch_inf

__all__ = [
    "Normalization", "JacobiLevel", "AWParams", "ConnectionTriple",
    "aw_poly", "aw_phi_seq", "cqjacobi", "cqjacobi_seq", "hermite_h",
    "weight_w", "norm_h", "aw_norm", "kappa_aw", "connection_down",
    "dual_expansion", "dual_expansion_aw", "classical_to_aw_factor",
    "awpoly_to_cqj_factor",
]


class Normalization(Enum):
    CLASSICAL = "classical"
    ASKEY_WILSON = "askey-wilson"


@dataclass(frozen=True)
class JacobiLevel:
    """Parameter level (alpha, beta) plus the normalization tag.

    alpha, beta may be real or a complex-conjugate pair; mixed complex
    values are rejected.
    """
    alpha: complex
    beta: complex
    normalization: Normalization = Normalization.ASKEY_WILSON

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if (a.imag != 0.0 or b.imag != 0.0) and abs(a - b.conjugate()) > 1e-12 * (1 + abs(a)):
            raise DomainError("complex alpha, beta must be conjugates")

    @property
    def is_real(self):
        return complex(self.alpha).imag == 0.0 and complex(self.beta).imag == 0.0

    def shifted(self, k):
        return JacobiLevel(self.alpha + k, self.beta + k, self.normalization)

    def require_orthogonal(self):
        if complex(self.alpha).real <= -1.0 or complex(self.beta).real <= -1.0:
            raise DomainError("orthogonality requires Re(alpha), Re(beta) > -1")


def _ab(level):
    a, b = complex(level.alpha), complex(level.beta)
    if a.imag == 0.0:
        a = a.real
    if b.imag == 0.0:
        b = b.real
    return a, b


@dataclass(frozen=True)
class AWParams:
    """The four Askey-Wilson parameters (a, b, c, d)."""
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def from_level(cls, level, q):
        """Continuous q-Jacobi specialization a=q^{(2a+1)/4}, b=q^{(2a+3)/4},
        c=-q^{(2b+1)/4}, d=-q^{(2b+3)/4}."""
        al, be = _ab(level)
        return cls(q ** ((2 * al + 1) / 4), q ** ((2 * al + 3) / 4),
                   -q ** ((2 * be + 1) / 4), -q ** ((2 * be + 3) / 4))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ConnectionTriple:
    """Coefficients onto degrees n, n-1, n-2 of the (alpha+1, beta+1) family."""
    c_nn: complex
    c_nn1: complex
    c_nn2: complex

    def as_tuple(self):
        return (self.c_nn, self.c_nn1, self.c_nn2)


# ---------------------------------------------------------------------------
# polynomial evaluation
# ---------------------------------------------------------------------------

def aw_phi_seq(nmax, params, x, q):
    """phi_n(x) = a^n p_n(x)/ (ab,ac,ad;q)_n for n = 0..nmax via the
    Askey-Wilson three-term recurrence; ``x`` may be a scalar or ndarray."""
    a, b, c, d = params.as_tuple() if isinstance(params, AWParams) else params
    abcd = a * b * c * d
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0 + 0.0j
    vals = [one * (1.0 + 0.0j)]
    pm1 = one * 0.0j
    p0 = vals[0]
    for n in range(nmax):
        qn = q ** n
        An = ((1 - a * b * qn) * (1 - a * c * qn) * (1 - a * d * qn)
              * (1 - abcd * qn / q)
              / (a * (1 - abcd * qn * qn / q) * (1 - abcd * qn * qn)))
        Cn = (a * (1 - qn) * (1 - b * c * qn / q) * (1 - b * d * qn / q)
              * (1 - c * d * qn / q)
              / ((1 - abcd * qn * qn / (q * q)) * (1 - abcd * qn * qn / q)))
        p1 = ((2 * x - a - 1 / a + An + Cn) * p0 - Cn * pm1) / An
        vals.append(p1)
        pm1, p0 = p0, p1
    return vals


def _aw_prefactor(n, params, q):
    a, b, c, d = params
    return (qpoch(a * b, q, n) * qpoch(a * c, q, n) * qpoch(a * d, q, n)
            * a ** (-n))


def aw_poly(n, params, x, ctx, method="auto"):
    """Askey-Wilson polynomial p_n(x; a, b, c, d | q).

    ``method="phi"`` evaluates the defining terminating 4phi3 (n+1 terms);
    the default evaluates through the equivalent three-term recurrence,
    which is stable (the raw series sheds q^{-n(n-1)/2} digits to
    cancellation; the two routes are cross-validated by the tests).  Zero
    parameters are handled by permuting a nonzero one to the front; the
    all-zero case is the continuous q-Hermite polynomial H_n(x|q).
    """
    q = ctx.q
    if n < 0:
        return 0.0 + 0.0j
    if isinstance(params, AWParams):
        params = params.as_tuple()
    params = tuple(complex(v) for v in params)
    if all(v == 0.0 for v in params):
        return hermite_h(n, x, q, method="theta")
    if params[0] == 0.0:
        nz = max(range(4), key=lambda i: abs(params[i]))
        order = (nz,) + tuple(i for i in range(4) if i != nz)
        params = tuple(params[i] for i in order)
    a, b, c, d = params
    if method == "phi":
        w = exp_itheta(x)
        abcd = a * b * c * d
        val = phi([q ** (-n), abcd * q ** (n - 1), a * w, a / w],
                  [a * b, a * c, a * d], q, q, nterms=n,
                  tol=ctx.tol, max_terms=ctx.max_terms)
        return _aw_prefactor(n, params, q) * val
    seq = aw_phi_seq(n, params, x, q)
    return _aw_prefactor(n, params, q) * seq[n]


def hermite_h(n, x, q, method="recurrence"):
    """Continuous q-Hermite H_n(x|q).

    ``recurrence``: H_{n+1} = 2x H_n - (1-q^n) H_{n-1}, H_0 = 1, H_1 = 2x.
    ``theta``: the q-binomial sum over e^{i(n-2k)theta} (independent route).
    """
    if method == "theta":
        w = exp_itheta(x)
        qn = qpoch(q, q, n)
        return sum(qn / (qpoch(q, q, k) * qpoch(q, q, n - k)) * w ** (n - 2 * k)
                   for k in range(n + 1))
    h0, h1 = 1.0 + 0.0j, 2.0 * x + 0.0j
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, 2 * x * h1 - (1 - q ** k) * h0
    return h1


def awpoly_to_cqj_factor(n, level, q):
    """p_n(x; AW params) = factor * P_n^{(a,b)}(x|q)."""
    al, be = _ab(level)
    return (qpoch(-q ** ((al + be + 1) / 2), q, n)
            * qpoch(-q ** ((al + be + 2) / 2), q, n)
            * qpoch(q, q, n) * q ** (-n * (2 * al + 1) / 4))


def cqjacobi_seq(nmax, level, x, ctx):
    """[P_0, ..., P_nmax] at ``x`` (scalar or ndarray), Askey-Wilson form, base q."""
    q = ctx.q
    al, be = _ab(level)
    params = AWParams.from_level(level, q)
    seq = aw_phi_seq(nmax, params, x, q)
    out = []
    cv = 1.0 + 0.0j
    for n in range(nmax + 1):
        out.append(cv * seq[n])
        cv *= (1 - q ** (al + 1 + n)) / (1 - q ** (n + 1))
    return out


def cqjacobi(n, level, x, ctx, method="auto"):
    """Continuous q-Jacobi polynomial in the level's normalization.

    Askey-Wilson form: Eq-style 4phi3 with base q (or its stable
    recurrence equivalent).  Classical-normalization form: evaluated as the conversion
    factor times the Askey-Wilson form at base q^2, with the literal
    series available via ``method="phi"``.
    """
    q = ctx.q
    if n < 0:
        return 0.0 + 0.0j
    al, be = _ab(level)
    if level.normalization is Normalization.ASKEY_WILSON:
        if method == "phi":
            w = exp_itheta(x)
            pre = qpoch(q ** (al + 1), q, n) / qpoch(q, q, n)
            return pre * phi(
                [q ** (-n), q ** (n + al + be + 1),
                 q ** ((2 * al + 1) / 4) * w, q ** ((2 * al + 1) / 4) / w],
                [q ** (al + 1), -q ** ((al + be + 1) / 2), -q ** ((al + be + 2) / 2)],
                q, q, nterms=n, tol=ctx.tol, max_terms=ctx.max_terms)
        return cqjacobi_seq(n, level, x, ctx)[n]
    # classical normalization, base q
    if method == "phi":
        w = exp_itheta(x)
        pre = (qpoch(q ** (al + 1), q, n) * qpoch(-q ** (be + 1), q, n)
               / (qpoch(q, q, n) * qpoch(-q, q, n)))
        return pre * phi(
            [q ** (-n), q ** (n + al + be + 1), math.sqrt(q) * w, math.sqrt(q) / w],
            [q ** (al + 1), -q ** (be + 1), -q], q, q, nterms=n,
            tol=ctx.tol, max_terms=ctx.max_terms)
    from .qcore import QContext
    ctx2 = QContext(q * q, ctx.tol, ctx.max_terms)
    aw_level = JacobiLevel(al, be, Normalization.ASKEY_WILSON)
    return classical_to_aw_factor(n, level, q) * cqjacobi(n, aw_level, x, ctx2, method=method)


def classical_to_aw_factor(n, level, q):
    """P_n(x; q) = factor * P_n(x | q^2)."""
    al, be = _ab(level)
    return qpoch(-q ** (al + be + 1), q, n) / qpoch(-q, q, n) * q ** (-al * n)


# ---------------------------------------------------------------------------
# weight and norms
# ---------------------------------------------------------------------------

def weight_w(level, x, ctx, route="h"):
    """Weight w_{a,b}(x|q) of the Askey-Wilson-normalized family, base q.

    ``route="h"``: h-product form h(x; 1, -1, sqrt(q), -sqrt(q)) /
    [h(x; a, b, c, d) sqrt(1-x^2)] with the q-Jacobi parameters.
    ``route="literal"``: the explicit product form with base p = sqrt(q)
    (the product form written at base q^2, with q -> sqrt(q) substituted).
    Returns a float; for conjugate-pair levels the imaginary part is
    checked by the tests, not silently assumed.
    """
    return _weight_w_complex(level, x, ctx, route).real


def _weight_w_complex(level, x, ctx, route="h"):
    q = ctx.q
    xr = float(np.real(x))
    if not -1.0 < xr < 1.0:
        raise DomainError("weight_w: x must lie in (-1, 1)")
    s = math.sqrt(1.0 - xr * xr)
    if route == "h":
        params = AWParams.from_level(level, q)
        num = h_product(xr, [1.0, -1.0, math.sqrt(q), -math.sqrt(q)], q, ctx.tol)
        den = h_product(xr, params.as_tuple(), q, ctx.tol)
        return num / (den * s)
    al, be = _ab(level)
    p = math.sqrt(q)
    w = exp_itheta(xr)
    num = qpoch_inf(w * w, q, ctx.tol) * qpoch_inf(1.0 / (w * w), q, ctx.tol)
    den = (qpoch_inf(p ** (al + 0.5) * w, p, ctx.tol)
           * qpoch_inf(p ** (al + 0.5) / w, p, ctx.tol)
           * qpoch_inf(-p ** (be + 0.5) * w, p, ctx.tol)
           * qpoch_inf(-p ** (be + 0.5) / w, p, ctx.tol))
    return num / (den * s)


def norm_h(n, level, ctx):
    """Normalization constant h_n^{(a,b)}(q) of Eq-form orthogonality
    (with the corrected exponent q^{n(2a+1)/2})."""
    q = ctx.q
    al, be = _ab(level)
    tol = ctx.tol
    c0 = (2 * math.pi * (1 - q ** (al + be + 1))
          * qpoch_inf(q ** ((al + be + 2) / 2), q, tol)
          * qpoch_inf(q ** ((al + be + 3) / 2), q, tol)
          / (qpoch_inf(q, q, tol) * qpoch_inf(q ** (al + 1), q, tol)
             * qpoch_inf(q ** (be + 1), q, tol)
             * qpoch_inf(-q ** ((al + be + 1) / 2), q, tol)
             * qpoch_inf(-q ** ((al + be + 2) / 2), q, tol)))
    cn = (qpoch(q ** (al + 1), q, n) * qpoch(q ** (be + 1), q, n)
          * qpoch(-q ** ((al + be + 3) / 2), q, n) * q ** (n * (2 * al + 1) / 2)
          / ((1 - q ** (2 * n + al + be + 1)) * qpoch(q, q, n)
             * qpoch(q ** (al + be + 1), q, n)
             * qpoch(-q ** ((al + be + 1) / 2), q, n)))
    out = c0 * cn
    if level.is_real:
        return complex(out.real, 0.0)
    return out


def kappa_aw(params, q, tol=1e-14):
    """kappa(a,b,c,d|q) = 2 pi (abcd)_inf / (q, ab, ac, ad, bc, bd, cd)_inf."""
    a, b, c, d = params.as_tuple() if isinstance(params, AWParams) else params
    return (2 * math.pi * qpoch_inf(a * b * c * d, q, tol)
            / (qpoch_inf(q, q, tol) * qpoch_inf(a * b, q, tol)
               * qpoch_inf(a * c, q, tol) * qpoch_inf(a * d, q, tol)
               * qpoch_inf(b * c, q, tol) * qpoch_inf(b * d, q, tol)
               * qpoch_inf(c * d, q, tol)))


def aw_norm(n, params, q, tol=1e-14):
    """Askey-Wilson orthogonality norm of p_n (right side of the AW
    orthogonality relation)."""
    a, b, c, d = params.as_tuple() if isinstance(params, AWParams) else params
    abcd = a * b * c * d
    return (kappa_aw((a, b, c, d), q, tol) * (1 - abcd / q)
            * qpoch(q, q, n) * qpoch(a * b, q, n) * qpoch(a * c, q, n)
            * qpoch(a * d, q, n) * qpoch(b * c, q, n) * qpoch(b * d, q, n)
            * qpoch(c * d, q, n)
            / ((1 - abcd * q ** (2 * n - 1)) * qpoch(abcd / q, q, n)))


# ---------------------------------------------------------------------------
# connection coefficients (both directions)
# ---------------------------------------------------------------------------

def connection_down(n, level, ctx):
    """Coefficients of P_n^{(a,b)}(x|q) in the three top degrees of the
    (a+1, b+1) family; coefficients for negative degrees are exact zero."""
    q = ctx.q
    al, be = _ab(level)
    pre = qpoch(-q ** ((al + be + 1) / 2), math.sqrt(q), 2)
    cnn = (q ** (-n / 2) * (1 - q ** (al + be + n + 1)) * (1 - q ** (al + be + n + 2))
           / (pre * (1 - q ** (n + (al + be + 1) / 2))
              * (1 - q ** (n + (al + be + 2) / 2))))
    if n < 1:
        return ConnectionTriple(cnn, 0.0, 0.0)
    cnn1 = (q ** ((al + be + 2 - n) / 2) * (1 - q ** (al + be + n + 1))
            * (1 + q ** (n + (al + be + 1) / 2)) * (1 - q ** ((al - be) / 2))
            / (pre * (1 - q ** (n + (al + be) / 2))
               * (1 - q ** (n + (al + be + 2) / 2))))
    if n < 2:
        return ConnectionTriple(cnn, cnn1, 0.0)
    cnn2 = (-q ** ((3 * al + be + 4 - n) / 2) * (1 - q ** (al + n)) * (1 - q ** (be + n))
            / (pre * (1 - q ** (n + (al + be) / 2))
               * (1 - q ** (n + (al + be + 1) / 2))))
    return ConnectionTriple(cnn, cnn1, cnn2)


def dual_expansion(n, level, ctx):
    """Coefficients (A_{n-1}, A_n, A_{n+1}) of the expansion of the
    quadratic-weight-multiplied level-(a+1,b+1) polynomial of degree n-1
    in the level-(a,b) family (classical normalization, base q); all lower
    coefficients vanish."""
    if n < 1:
        raise DomainError("dual_expansion requires n >= 1")
    q = ctx.q
    al, be = _ab(level)
    anm1 = ((1 + q ** (al + be + n)) * (1 + q ** (al + be + n + 1))
            * (1 - q ** (2 * al + 2 * n)) * (1 - q ** (2 * be + 2 * n))
            / ((1 - q ** (2 * n + al + be)) * (1 - q ** (2 * n + al + be + 1))))
    an = ((1 + q ** (al + be + n + 1)) * (1 + q ** (al + be + 2 * n + 1))
          * (1 + q ** n) ** 2 * (1 - q ** n) * (1 - q ** (al - be)) * q ** be
          / ((1 - q ** (2 * n + al + be)) * (1 - q ** (2 * n + al + be + 2))))
    anp1 = (-(1 + q ** n) ** 2 * (1 + q ** (n + 1)) ** 2
            * (1 - q ** n) * (1 - q ** (n + 1)) * q ** (al + be)
            / ((1 - q ** (2 * n + al + be + 1)) * (1 - q ** (2 * n + al + be + 2))))
    return (anm1, an, anp1)


def dual_expansion_aw(n, level, ctx):
    """Same expansion in the Askey-Wilson normalization at base q^2
    (coefficients written as functions of the context's q)."""
    if n < 1:
        raise DomainError("dual_expansion_aw requires n >= 1")
    q = ctx.q
    al, be = _ab(level)
    po2 = qpoch(-q ** (al + be + 1), q, 2)
    enm1 = ((1 - q ** (2 * al + 2 * n)) * (1 - q ** (2 * be + 2 * n)) * po2
            * q ** (n - 1)
            / ((1 - q ** (2 * n + al + be)) * (1 - q ** (2 * n + al + be + 1))))
    en = (po2 * (1 + q ** (al + be + 2 * n + 1)) * (1 - q ** (2 * n))
          * (1 - q ** (al - be)) * q ** (be - al + n - 1)
          / ((1 - q ** (2 * n + al + be)) * (1 - q ** (2 * n + al + be + 2))))
    enp1 = (-po2 * (1 - q ** (2 * n)) * (1 - q ** (2 * n + 2)) * q ** (be - al + n - 1)
            / ((1 - q ** (2 * n + al + be + 1)) * (1 - q ** (2 * n + al + be + 2))))
    return (enm1, en, enp1)
