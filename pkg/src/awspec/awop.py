"""The Askey-Wilson divided-difference operator, its ladder action on
continuous q-Jacobi coefficients, the kernel K, and the right-inverse
integral operator T (coefficient-space and quadrature forms).

Quadrature convention: every integral over [-1, 1] is pulled back with
x = cos(theta), which cancels the (1-x^2)^{-1/2} weight singularity into a
smooth integrand on [0, pi]; a Gauss-Legendre rule in theta with automatic
node doubling then converges spectrally.
"""
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .qcore import exp_itheta, h_product
from .qpolys import AWParams, JacobiLevel, cqjacobi_seq, norm_h

__all__ = [
    "CoeffVector", "QuadratureRule", "make_rule", "weight_theta_grid",
    "dq_pointwise", "xi_factor", "t_factor", "dq_coeffs", "t_coeffs",
    "kernel_truncation", "kernel_eval", "t_quadrature", "t_apply_series",
    "project_coeffs", "eval_coeffvector", "quad_weighted",
]


@dataclass(frozen=True)
class CoeffVector:
    """Finite expansion coefficients in the q-Jacobi family at one level.

    Index n is the polynomial degree.  Vectors at different levels never
    combine; trailing zeros are allowed and never read past ``length``.
    """
    level: JacobiLevel
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(v) for v in self.coeffs))

    @property
    def length(self):
        return len(self.coeffs)

    def __add__(self, other):
        if other.level != self.level:
            raise DomainError("CoeffVector levels differ")
        n = max(self.length, other.length)
        a = self.coeffs + (0.0,) * (n - self.length)
        b = other.coeffs + (0.0,) * (n - other.length)
        return CoeffVector(self.level, tuple(x + y for x, y in zip(a, b)))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on (0, pi) in the theta variable."""
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self):
        return len(self.nodes)


def make_rule(n):
    t, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule((t + 1.0) * (math.pi / 2.0), w * (math.pi / 2.0))


def weight_theta_grid(level, rule, ctx):
    """w(cos theta) sin(theta) on the rule's nodes (smooth in theta).

    Real levels give a real grid; conjugate-pair levels keep the genuinely
    complex weight (the parameter multiset is not conjugation-stable), and
    the orthogonality relation holds bilinearly against it."""
    q = ctx.q
    params = AWParams.from_level(level, q).as_tuple()
    sq = math.sqrt(q)
    out = np.empty(rule.size, dtype=complex)
    for i, th in enumerate(rule.nodes):
        x = math.cos(th)
        num = h_product(x, [1.0, -1.0, sq, -sq], q, ctx.tol)
        den = h_product(x, params, q, ctx.tol)
        out[i] = num / den
    return out.real if level.is_real else out


def quad_weighted(level, rule, ctx, values):
    """Integral over [-1,1] of f(x) w(x) dx given f at the rule's cos-nodes."""
    w = weight_theta_grid(level, rule, ctx)
    return np.sum(rule.weights * w * values)


def project_coeffs(level, rule, ctx, values, nmax):
    """Coefficients <f, P_n>/h_n for n = 0..nmax from samples of f."""
    w = weight_theta_grid(level, rule, ctx)
    xs = np.cos(rule.nodes)
    polys = cqjacobi_seq(nmax, level, xs, ctx)
    return [complex(np.sum(rule.weights * w * polys[n] * values))
            / norm_h(n, level, ctx) for n in range(nmax + 1)]


def eval_coeffvector(f, x, ctx):
    """Pointwise value of sum_n f_n P_n^{(level)}(x|q)."""
    if f.length == 0:
        return 0.0 + 0.0j
    polys = cqjacobi_seq(f.length - 1, f.level, x, ctx)
    return sum(c * p for c, p in zip(f.coeffs, polys))


# ---------------------------------------------------------------------------
# divided-difference operator
# ---------------------------------------------------------------------------

def dq_pointwise(f, x, ctx):
    """(D_q f)(x) for x in (-1, 1).

    ``f`` must accept the complex shifted arguments
    (q^{1/2} e^{i theta} + q^{-1/2} e^{-i theta})/2 and its mirror; for a
    polynomial (or any symmetric-Laurent-evaluable function of x) this is
    ordinary evaluation at complex points.  x = +-1 is out of domain
    (sin(theta) = 0); no removable-singularity handling is attempted.
    """
    q = ctx.q
    xr = complex(x)
    if xr.imag == 0.0 and abs(abs(xr.real) - 1.0) < 1e-14:
        raise DomainError("dq_pointwise: sin(theta) vanishes at x = +-1")
    w = exp_itheta(x)
    rq = math.sqrt(q)
    xp = (rq * w + 1.0 / (rq * w)) / 2.0
    xm = (w / rq + rq / w) / 2.0
    sinth = (w - 1.0 / w) / 2.0j
    return (f(xp) - f(xm)) / (1.0j * (rq - 1.0 / rq) * sinth)


def xi_factor(n, level, q):
    """Ladder factor: D_q P_n^{(a,b)}(.|q) = xi_n P_{n-1}^{(a+1,b+1)}(.|q)."""
    al, be = complex(level.alpha), complex(level.beta)
    if al.imag == 0.0 and be.imag == 0.0:
        al, be = al.real, be.real
    return (2 * q ** (-n + (2 * al + 5) / 4) * (1 - q ** (al + be + n + 1))
            / ((1 + q ** ((al + be + 1) / 2)) * (1 + q ** ((al + be + 2) / 2))
               * (1 - q)))


def t_factor(n, level, q):
    """Coefficient factor of T: degree n at level (a+1, b+1) maps to degree
    n+1 at level (a, b); exact reciprocal of xi_{n+1}(level)."""
    return 1.0 / xi_factor(n + 1, level, q)


def dq_coeffs(f, ctx):
    """Coefficient-space D_q: CoeffVector at (a,b) -> CoeffVector at (a+1,b+1),
    output coefficient n-1 = xi_n * (input coefficient n)."""
    lvl = f.level
    out = [xi_factor(n, lvl, ctx.q) * f.coeffs[n] for n in range(1, f.length)]
    return CoeffVector(lvl.shifted(1), tuple(out))


def t_coeffs(g, ctx):
    """Coefficient-space T: CoeffVector at (a+1,b+1) -> CoeffVector at (a,b),
    output coefficient n+1 = t_factor(n) * g_n; output coefficient 0 is 0."""
    lvl = g.level.shifted(-1)
    out = [0.0 + 0.0j]
    out += [t_factor(n, lvl, ctx.q) * g.coeffs[n] for n in range(g.length)]
    return CoeffVector(lvl, tuple(out))


# ---------------------------------------------------------------------------
# kernel and integral operator
# ---------------------------------------------------------------------------

def _kernel_factor(n, level, ctx):
    q = ctx.q
    al, be = complex(level.alpha), complex(level.beta)
    if al.imag == 0.0 and be.imag == 0.0:
        al, be = al.real, be.real
    po2 = (1 + q ** ((al + be + 1) / 2)) * (1 + q ** ((al + be + 2) / 2))
    return ((1 - q) * po2 * q ** (n - (2 * al + 1) / 4)
            / (2 * (1 - q ** (al + be + n + 2))
               * norm_h(n, level.shifted(1), ctx)))


def kernel_truncation(level, ctx, tol=None, nmin=20, nmax=400):
    """Number of terms N so the geometric tail bound of the kernel series
    is below tol.

    The per-term scale on the support is |factor_n| sqrt(|h_{n+1} h_n'|)
    (polynomials on [-1, 1] oscillate with amplitude ~ sqrt(norm)), which
    decays like sqrt(q)^n; the bound uses the measured trailing ratio
    capped at 0.95."""
    q = ctx.q
    tol = ctx.tol if tol is None else tol
    lvl1 = level.shifted(1)

    def scale(n):
        return (abs(_kernel_factor(n, level, ctx))
                * math.sqrt(abs(norm_h(n + 1, level, ctx))
                            * abs(norm_h(n, lvl1, ctx))))

    n = nmin
    fprev = scale(n)
    while n < nmax:
        n += 1
        f = scale(n)
        r = min(0.95, max(f / fprev, math.sqrt(q)))
        if f * r / (1.0 - r) < tol:
            break
        fprev = f
    return n


def kernel_eval(x, y, level, ctx, nterms=None):
    """Kernel K_{a,b;q}(x, y): partial sum of the bilinear series to
    ``nterms`` terms (chosen from the tail bound when omitted)."""
    if nterms is None:
        nterms = kernel_truncation(level, ctx)
    px = cqjacobi_seq(nterms + 1, level, x, ctx)
    py = cqjacobi_seq(nterms, level.shifted(1), y, ctx)
    total = 0.0 + 0.0j
    for n in range(nterms):
        total += _kernel_factor(n, level, ctx) * px[n + 1] * py[n]
    return total


def t_quadrature(g, x, level, rule, ctx, nterms=None, return_error=False):
    """(T g)(x) by quadrature of the truncated-kernel integral
    int K(x,y) g(y) w_{a+1,b+1}(y) dy.

    ``g`` is a callable on [-1, 1].  With ``return_error`` the difference
    against the doubled rule is reported alongside the value.
    """
    val = _t_quad_once(g, x, level, rule, ctx, nterms)
    if not return_error:
        return val
    val2 = _t_quad_once(g, x, level, make_rule(2 * rule.size), ctx, nterms)
    return val2, abs(val2 - val)


def _t_quad_once(g, x, level, rule, ctx, nterms):
    if nterms is None:
        nterms = kernel_truncation(level, ctx)
    # the rule resolves moments only up to ~half its node count (beyond
    # that the oscillatory P_n alias); within that, moments below the
    # quadrature noise floor carry no information, and at complex x (the
    # dq-shifted ellipse) the kernel amplifies them exponentially, so
    # truncate where the data ends
    nterms = min(nterms, rule.size // 2)
    ys = np.cos(rule.nodes)
    gy = np.array([g(t) for t in ys], dtype=complex)
    w1 = weight_theta_grid(level.shifted(1), rule, ctx)
    py = cqjacobi_seq(nterms, level.shifted(1), ys, ctx)
    moments = [complex(np.sum(rule.weights * w1 * py[n] * gy))
               for n in range(nterms)]
    scales = [abs(m) / max(abs(norm_h(n, level.shifted(1), ctx)), 1e-300) ** 0.5
              for n, m in enumerate(moments)]
    floor = max(scales) * 1e-12
    last = max((n for n, s in enumerate(scales) if s >= floor), default=0)
    neff = min(nterms, last + 3)
    px = cqjacobi_seq(neff + 1, level, x, ctx)
    total = 0.0 + 0.0j
    for n in range(neff):
        total += _kernel_factor(n, level, ctx) * px[n + 1] * moments[n]
    return total


def t_apply_series(coeffs_x, level, ctx, x):
    """Sample sum_n c_n P_n at x (helper for operator-residual checks)."""
    return eval_coeffvector(CoeffVector(level, tuple(coeffs_x)), x, ctx)
