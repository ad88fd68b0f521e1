"""Eigenvalue machinery of the right-inverse integral operator: recurrence
coefficients, the monic polynomials b_n (recurrence and closed form), the
minimal solutions X_nu, the transcendental function F, eigenvalue location
and certification, eigenfunctions, the s_n polynomials, the Markov ratio
and the q-Coulomb wave function.

Numerical conventions that matter here:

* Forward recurrence of b_n is the dominant direction and is stable at
  generic mu.  At a zero xi of F the sequence b_n(xi) is the *minimal*
  solution, so it is computed by a backward (Miller) recurrence, in the
  scaled variable w_n = b_n(xi) (-xi)^n q^{-n(n+a+b+3)/2} whose dynamic
  range stays O(1).
* The closed form is evaluated as the double sum with coefficient arrays
  A_k and B_k^{(n)} built ratio-wise; the single-4phi3 inner form loses
  q^{-j(j-1)/2} digits to cancellation and is kept only as a small-degree
  cross-check.
* X_nu is always summed from its convergent series, never by forward
  recurrence, which would destroy minimality.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .awop import CoeffVector
from .exceptions import DomainError
from .qcore import phi, qpoch, qpoch_inf


__all__ = [
    "recurrence_a_coeffs", "classical_a_coeffs", "bn_B", "bn_C",
    "bn_recurrence", "bn_sequence", "bn_explicit", "bn_explicit_nested",
    "bn_minimal_scaled", "bn0_scaled_sequence", "zero_asymptotics_constants",
    "an_from_bn", "an_prefactor", "x_nu", "f_eval", "bn_growth_limit",
    "root_asymptotics_constant", "eigenvalue_equation", "matrix_oracle", "EigenResult",
    "eigenvalues", "eigenfunction", "eigen_tail_ratios", "s_poly",
    "s_recurrence_coeffs", "markov_ratio", "markov_stieltjes", "q_coulomb",
    "mu_from_lambda", "lambda_from_mu",
]


def _ab(level):
    a, b = complex(level.alpha), complex(level.beta)
    if a.imag == 0.0 and b.imag == 0.0:
        return a.real, b.real
    return a, b


def mu_from_lambda(lam, q):
    return 2.0 * lam * math.sqrt(q) / (1.0 - q)


def lambda_from_mu(mu, q):
    return (1.0 - q) * mu / (2.0 * math.sqrt(q))


# ---------------------------------------------------------------------------
# recurrences
# ---------------------------------------------------------------------------

def recurrence_a_coeffs(k, level, ctx):
    """Coefficients (of a_{k+1}, a_k, a_{k-1}) on the right side of the
    three-term recurrence -lambda a_k q^{a/2+1/4} = P a_{k+1} + Q a_k + R a_{k-1}."""
    if k < 1:
        raise DomainError("recurrence_a_coeffs requires k >= 1")
    q = ctx.q
    al, be = _ab(level)
    P = ((1 - q) * (1 - q ** (al + k + 1)) * (1 - q ** (be + k + 1))
         * q ** ((3 * al + be + k + 1) / 2)
         / (2 * (1 - q ** (al + be + 1 + k)) * (1 - q ** ((al + be + 2) / 2 + k))
            * (1 - q ** ((al + be + 3) / 2 + k))))
    Q = -((1 - q) * (1 - q ** ((al - be) / 2)) * (1 + q ** ((al + be + 1) / 2 + k))
          * q ** ((al + be + k) / 2)
          / (2 * (1 - q ** ((al + be) / 2 + k)) * (1 - q ** ((al + be + 2) / 2 + k))))
    R = -((1 - q) * (1 - q ** (al + be + k)) * q ** ((k - 1) / 2)
          / (2 * (1 - q ** ((al + be) / 2 + k)) * (1 - q ** ((al + be - 1) / 2 + k))))
    return P, Q, R


def classical_a_coeffs(k, alpha, beta):
    """q -> 1 limit of the a_k recurrence: coefficients of a_{k+1}, a_k, a_{k-1}
    in -lambda a_k = ..."""
    P = (2 * (alpha + 1 + k) * (beta + 1 + k)
         / ((alpha + beta + 1 + k) * (alpha + beta + 2 + 2 * k)
            * (alpha + beta + 3 + 2 * k)))
    Q = 2 * (beta - alpha) / ((alpha + beta + 2 * k) * (alpha + beta + 2 + 2 * k))
    R = -2 * (alpha + beta + k) / ((alpha + beta + 2 * k - 1) * (alpha + beta + 2 * k))
    return P, Q, R


def bn_B(k, level, q):
    """Bracket coefficient of the monic recurrence
    b_{k+1}(mu) = (mu + bn_B) b_k(mu) + bn_C b_{k-1}(mu)."""
    al, be = _ab(level)
    return ((1 - q ** ((be - al) / 2)) * (1 + q ** ((al + be + 3) / 2 + k))
            * q ** (al / 2 + 0.75 + k / 2)
            / ((1 - q ** ((al + be + 2) / 2 + k)) * (1 - q ** ((al + be + 4) / 2 + k))))


def bn_C(k, level, q):
    """Sub-diagonal coefficient of the monic recurrence (see bn_B)."""
    al, be = _ab(level)
    return ((1 - q ** (al + 1 + k)) * (1 - q ** (be + 1 + k))
            * q ** (k + (al + be) / 2 + 1)
            / ((1 - q ** ((al + be + 1) / 2 + k))
               * (1 - q ** ((al + be + 2) / 2 + k)) ** 2
               * (1 - q ** ((al + be + 3) / 2 + k))))


def bn_sequence(nmax, mu, level, ctx):
    """[b_0(mu), ..., b_nmax(mu)] by forward recurrence (the dominant
    direction, hence stable).

    Accumulation runs in extended precision: near q -> 1 the subdiagonal
    coefficient grows like (1-q)^{-3} and intermediate values amplify
    roundoff by several orders before the sequence settles."""
    q = ctx.q
    al, be = _ab(level)
    lnq = np.log(np.longdouble(q))

    def qpow(e):
        if isinstance(e, complex):
            return np.exp(np.clongdouble(e) * lnq)
        return np.exp(np.longdouble(e) * lnq)

    vals = [1.0 + 0.0j]
    bm1 = np.clongdouble(0.0)
    b0 = np.clongdouble(1.0)
    muv = np.clongdouble(mu)
    for k in range(nmax):
        bk = ((1 - qpow((be - al) / 2)) * (1 + qpow((al + be + 3) / 2 + k))
              * qpow(al / 2 + 0.75 + k / 2)
              / ((1 - qpow((al + be + 2) / 2 + k))
                 * (1 - qpow((al + be + 4) / 2 + k))))
        ck = ((1 - qpow(al + 1 + k)) * (1 - qpow(be + 1 + k))
              * qpow(k + (al + be) / 2 + 1)
              / ((1 - qpow((al + be + 1) / 2 + k))
                 * (1 - qpow((al + be + 2) / 2 + k)) ** 2
                 * (1 - qpow((al + be + 3) / 2 + k))))
        b1 = (muv + bk) * b0 + ck * bm1
        vals.append(complex(b1))
        bm1, b0 = b0, b1
    return vals


def bn_recurrence(n, mu, level, ctx):
    """b_n(mu) by forward recurrence from b_{-1} = 0, b_0 = 1."""
    if n < 0:
        raise DomainError("bn_recurrence: n must be >= 0")
    return bn_sequence(n, mu, level, ctx)[n]


def _ak_bk_arrays(nmax, level, ctx):
    """Coefficient arrays A_k and B_k^{(n)} of the double-sum closed form,
    built ratio-wise (products only, no cancellation).  Extended precision:
    near q -> 1 the arrays grow like 1/(p; p)_k before cancelling in the
    convolution, so the extra mantissa keeps the sum at full accuracy."""
    q = ctx.q
    one = np.clongdouble(1.0)
    p = np.sqrt(np.longdouble(q))
    lnp = np.log(p)
    al, be = _ab(level)
    # exponent arithmetic must also run in extended precision: the arrays
    # feed a convolution whose products overshoot the sum by many orders,
    # so even 1e-16-level exponent noise surfaces in the result
    al_e = np.clongdouble(al) if isinstance(al, complex) else np.longdouble(al)
    be_e = np.clongdouble(be) if isinstance(be, complex) else np.longdouble(be)

    def ppow(e):
        return np.exp(e * lnp)

    A = [one]
    for k in range(nmax):
        A.append(A[k] * (1 - ppow(be_e + 1 + k)) * (1 + ppow(al_e + 1 + k))
                 / ((1 - ppow(np.longdouble(k + 1)))
                    * (1 - ppow(al_e + be_e + 2 + k))))
    B = {}
    for n in range(nmax + 1):
        row = [one]
        for k in range(n):
            row.append(row[k] * (1 - ppow(-be_e - n - 1 + k))
                       * (1 + ppow(-al_e - n - 1 + k))
                       / ((1 - ppow(np.longdouble(k + 1)))
                          * (1 - ppow(-2 * n - al_e - be_e - 2 + k))))
        B[n] = row
    return A, B


def bn_explicit(n, mu, level, ctx):
    """Closed form of b_n(mu): outer j-sum over mu^{n-j} with inner
    terminating sums, base p = sqrt(q), organized as the double sum with
    bounded summands.

    The summand arrays grow like 1/(p; p)_k before cancelling, so the
    conditioning degrades as q -> 1; when the extended-precision error
    estimate cannot certify ~1e-12 absolute accuracy the evaluation
    reruns in arbitrary precision (mpmath), keeping the closed form a
    trustworthy independent oracle at every admissible q."""
    if n < 0:
        raise DomainError("bn_explicit: n must be >= 0")
    p = np.sqrt(np.longdouble(ctx.q))
    A, B = _ak_bk_arrays(n, level, ctx)
    Bn = B[n]
    cond = (max(abs(complex(a)) for a in A) * max(abs(complex(b)) for b in Bn)
            * (n + 1) * max(1.0, abs(mu)) ** n)
    if cond * 1.1e-19 > 1e-12:
        return _bn_explicit_mp(n, mu, level, ctx, cond)
    mu = np.clongdouble(mu)
    total = np.clongdouble(0.0)
    for j in range(n, -1, -1):
        s = np.clongdouble(0.0)
        for k in range(j + 1):
            s += (-1.0) ** k * A[k] * Bn[j - k]
        total += (-1.0) ** j * p ** np.longdouble(j / 2) * mu ** (n - j) * s
    return complex(total)


def _bn_explicit_mp(n, mu, level, ctx, cond):
    import mpmath as mp
    al, be = _ab(level)
    digits = int(math.log10(max(cond, 1.0))) + 25
    with mp.workdps(digits):
        p = mp.sqrt(mp.mpf(ctx.q))
        al_e = mp.mpc(al) if isinstance(al, complex) else mp.mpf(al)
        be_e = mp.mpc(be) if isinstance(be, complex) else mp.mpf(be)

        def ppow(e):
            if isinstance(e, mp.mpc):
                return mp.e ** (e * mp.log(p))
            return p ** e

        A = [mp.mpc(1)]
        for k in range(n):
            A.append(A[k] * (1 - ppow(be_e + 1 + k)) * (1 + ppow(al_e + 1 + k))
                     / ((1 - ppow(mp.mpf(k + 1)))
                        * (1 - ppow(al_e + be_e + 2 + k))))
        Bn = [mp.mpc(1)]
        for k in range(n):
            Bn.append(Bn[k] * (1 - ppow(-be_e - n - 1 + k))
                      * (1 + ppow(-al_e - n - 1 + k))
                      / ((1 - ppow(mp.mpf(k + 1)))
                         * (1 - ppow(-2 * n - al_e - be_e - 2 + k))))
        muv = mp.mpc(mu)
        total = mp.mpc(0)
        for j in range(n, -1, -1):
            s = mp.mpc(0)
            for k in range(j + 1):
                s += (-1) ** k * A[k] * Bn[j - k]
            total += (-1) ** j * p ** (mp.mpf(j) / 2) * muv ** (n - j) * s
        return complex(total)


def bn_explicit_nested(n, mu, level, ctx):
    """Literal outer-sum/inner-4phi3 form of the closed formula.  The inner
    series cancels catastrophically beyond small degree; kept as a
    small-n cross-check of the double-sum organization."""
    q = ctx.q
    p = math.sqrt(q)
    al, be = _ab(level)
    total = 0.0 + 0.0j
    coeff = 1.0 + 0.0j
    for j in range(n + 1):
        inner = phi([p ** (-j), p ** (2 * n + al + be + 3 - j), p ** (be + 1),
                     -p ** (al + 1)],
                    [p ** (al + be + 2), p ** (n + be + 2 - j), -p ** (al + n + 2 - j)],
                    p, p, nterms=j, tol=ctx.tol, max_terms=ctx.max_terms)
        total += coeff * (-1.0) ** j * p ** (j / 2) * mu ** (n - j) * inner
        coeff *= ((1 - p ** (-be - n - 1 + j)) * (1 + p ** (-al - n - 1 + j))
                  / ((1 - p ** (j + 1)) * (1 - p ** (-2 * n - al - be - 2 + j))))
    return total


def bn_minimal_scaled(nmax, xi, level, ctx, extra=40):
    """w_n = b_n(xi) (-xi)^n q^{-n(n+a+b+3)/2} for n = 0..nmax at a zero xi
    of F, by backward (Miller) recurrence in the scaled variable.

    At a root the b_n(xi) sequence is minimal, so the forward recurrence is
    exponentially contaminated; backward recursion with tail seed (0, 1)
    and normalization w_0 = 1 recovers it.  w_n tends to the constant of
    the root asymptotics."""
    q = ctx.q
    al, be = _ab(level)
    M = nmax + extra
    w = [0.0 + 0.0j] * (M + 2)
    w[M + 1] = 0.0
    w[M] = 1.0
    for k in range(M, 0, -1):
        s_pp = q ** (2 * k + al + be + 3) / (xi * xi)
        s_p = q ** (k + (al + be + 2) / 2) / xi
        w[k - 1] = (w[k + 1] * s_pp + (xi + bn_B(k, level, q)) * w[k] * s_p) \
            / bn_C(k, level, q)
        m = abs(w[k - 1])
        if m > 1e200:
            for j in range(k - 1, M + 2):
                w[j] /= m
    c = 1.0 / w[0]
    return [w[n] * c for n in range(nmax + 1)]


def bn0_scaled_sequence(nmax, level, ctx, u=None):
    """r_n = b_n(0) / (p^{n^2/2} u^n) by the rescaled forward recurrence
    (no under/overflow for any q).  ``u`` defaults to the corrected
    zero-asymptotics base from zero_asymptotics_constants."""
    q = ctx.q
    p = math.sqrt(q)
    if u is None:
        u = zero_asymptotics_constants(level, ctx)[0]
    vals = [1.0 + 0.0j]
    rm1, r0 = 0.0 + 0.0j, 1.0 + 0.0j
    for n in range(nmax):
        r1 = (bn_B(n, level, q) * p ** (-(2 * n + 1) / 2) / u * r0
              + bn_C(n, level, q) * p ** (-2 * n) / (u * u) * rm1)
        vals.append(r1)
        rm1, r0 = r0, r1
    return vals


def zero_asymptotics_constants(level, ctx):
    """(u, C) of the zero asymptotics b_n(0) ~ C p^{n^2/2} u^n.

    The magnitude of u is p^{b+1} for a > b and p^{a+1} for b > a; the
    signs carry the (-1)^n of the closed form (u = -p^{b+1} and +p^{a+1}
    respectively), which is what makes the scaled ratio converge, as the
    tests verify."""
    q = ctx.q
    p = math.sqrt(q)
    al, be = _ab(level)
    if not level.is_real or al == be:
        raise DomainError("zero_asymptotics_constants requires real alpha != beta")
    tol = ctx.tol
    if al > be:
        u = -p ** (be + 1)
        C = (qpoch_inf(-p ** (al + 1), p, tol) * qpoch_inf(p ** (al + 1), p, tol)
             / ((1 + p ** (al - be)) * qpoch_inf(p ** (al + be + 2), p, tol)))
    else:
        u = p ** (al + 1)
        C = (qpoch_inf(-p ** (be + 1), p, tol) * qpoch_inf(p ** (be + 1), p, tol)
             / ((1 + p ** (be - al)) * qpoch_inf(p ** (al + be + 2), p, tol)))
    return u, C


# ---------------------------------------------------------------------------
# a_n coefficients
# ---------------------------------------------------------------------------

def an_prefactor(k, level, ctx):
    """f_k of a_{k+1} = f_k (-1)^k b_k(mu) q^{-(k^2/4 + (a + b/2 + 1) k)}."""
    q = ctx.q
    al, be = _ab(level)
    return (qpoch(q ** (al + be + 2), q, k) * qpoch(q ** ((al + be + 4) / 2), q, k)
            * qpoch(q ** ((al + be + 5) / 2), q, k)
            / (qpoch(q ** (al + 2), q, k) * qpoch(q ** (be + 2), q, k)))


def an_from_bn(k, lam, level, ctx, bn_value=None):
    """a_{k+1}(lambda|q) from the monic polynomial; a_0 = 0, a_1 = 1."""
    if k < 0:
        return 0.0 + 0.0j
    q = ctx.q
    al, be = _ab(level)
    mu = mu_from_lambda(lam, q)
    b = bn_recurrence(k, mu, level, ctx) if bn_value is None else bn_value
    return (an_prefactor(k, level, ctx) * (-1.0) ** k * b
            * q ** -(k * k / 4 + (al + be / 2 + 1) * k))


# ---------------------------------------------------------------------------
# minimal solutions, F, and the transcendental equation
# ---------------------------------------------------------------------------

def x_nu(nu, x, level, ctx, route="heine"):
    """Minimal solution X_nu(x), nu >= -1 (real order allowed).

    ``route="heine"`` uses the everywhere-convergent representation with
    argument p^{b+nu+2}; ``route="series"`` uses the alternate form with
    argument p^{1/2}/x, convergent only for |x| > sqrt(p)."""
    if x == 0:
        raise DomainError("x_nu: x must be nonzero")
    q = ctx.q
    p = math.sqrt(q)
    al, be = _ab(level)
    if route == "series":
        if abs(p ** 0.5 / x) >= 1.0:
            raise DomainError("x_nu series route needs |x| > p^{1/2}")
        return ((-x) ** (-nu) * qpoch_inf(p ** 0.5 / x, p, ctx.tol)
                * phi([-p ** (al + 2 + nu), p ** (be + 2 + nu)],
                      [p ** (al + be + 2 * nu + 4)], p, p ** 0.5 / x,
                      nterms=-1, tol=ctx.tol, max_terms=ctx.max_terms))
    pref = ((-x) ** (-nu) * qpoch_inf(p ** (be + nu + 2), p, ctx.tol)
            * qpoch_inf(-p ** (al + nu + 2.5) / x, p, ctx.tol)
            / qpoch_inf(p ** (al + be + 2 * nu + 4), p, ctx.tol))
    return pref * phi([p ** (al + nu + 2), p ** 0.5 / x],
                      [-p ** (al + nu + 2.5) / x], p, p ** (be + nu + 2),
                      nterms=-1, tol=ctx.tol, max_terms=ctx.max_terms)


def f_eval(x, level, ctx):
    """F(x); F(x) = 0 iff X_{-1}(x) = 0 (eigencondition in the mu variable)."""
    if x == 0:
        raise DomainError("f_eval: x must be nonzero")
    q = ctx.q
    p = math.sqrt(q)
    al, be = _ab(level)
    return (qpoch_inf(p ** (be + 1), p, ctx.tol)
            * qpoch_inf(-p ** (al + 1.5) / x, p, ctx.tol)
            / qpoch_inf(p ** (al + be + 2), p, ctx.tol)
            * phi([p ** (al + 1), p ** 0.5 / x], [-p ** (al + 1.5) / x],
                  p, p ** (be + 1), nterms=-1, tol=ctx.tol,
                  max_terms=ctx.max_terms))


def bn_growth_limit(x, level, ctx):
    """Limit of x^n b_n(1/x): equals F evaluated at 1/x."""
    return f_eval(1.0 / x, level, ctx)


def root_asymptotics_constant(xi, level, ctx):
    """Constant of the root asymptotics: b_n(xi) (-xi)^n q^{-n(n+a+b+3)/2}
    tends to this value at a zero xi of F."""
    q = ctx.q
    al, be = _ab(level)
    tol = ctx.tol
    return (qpoch_inf(q ** (al + 2), q, tol) * qpoch_inf(q ** (be + 2), q, tol)
            / (qpoch_inf(q ** ((al + be + 3) / 2), q, tol)
               * qpoch_inf(q ** ((al + be + 5) / 2), q, tol)
               * qpoch_inf(q ** ((al + be + 4) / 2), q, tol) ** 2)
            / x_nu(0, xi, level, ctx))


def eigenvalue_equation(x, level, ctx):
    """Literal left side of the transcendental eigenvalue equation, with
    p = sqrt(q).

    Its zero set maps onto zeros of F via mu = 2/((1-q) x): the package
    treats the F route as authoritative (it is the one backed by the
    convergence proof and the matrix oracle), so roots x* here correspond
    to eigenvalues lambda = q^{-1/2}/x*."""
    q = ctx.q
    p = math.sqrt(q)
    al, be = _ab(level)
    z = (1.0 - q) * x / 2.0
    return (qpoch_inf(-p ** (al + 1.5) * z, p, ctx.tol)
            * phi([p ** (al + 1), z * p ** 0.5], [-p ** (al + 1.5) * z],
                  p, p ** (be + 1), nterms=-1, tol=ctx.tol,
                  max_terms=ctx.max_terms))


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def matrix_oracle(n, level, ctx):
    """Eigenvalues of the N x N tridiagonal section of the recurrence,
    general complex eigensolver, sorted by |lambda| descending."""
    if n < 1:
        raise DomainError("matrix_oracle: N >= 1 required")
    q = ctx.q
    al, _ = _ab(level)
    s = -q ** -(al / 2 + 0.25)
    m = np.zeros((n, n), dtype=complex)
    for k in range(1, n + 1):
        P, Q, R = recurrence_a_coeffs(k, level, ctx)
        i = k - 1
        m[i, i] = s * Q
        if i + 1 < n:
            m[i, i + 1] = s * P
        if i - 1 >= 0:
            m[i, i - 1] = s * R
    ev = np.linalg.eigvals(m)
    order = np.lexsort((np.angle(ev), -np.abs(ev)))
    return ev[order]


@dataclass(frozen=True)
class EigenResult:
    """A certified eigenvalue with residuals and truncated eigenfunction."""
    lam: complex
    mu: complex
    residual_f: float
    residual_operator: float
    coeffs: CoeffVector
    converged: bool = True

    def __post_init__(self):
        if self.lam == 0:
            raise DomainError("lambda = 0 is not an eigenvalue")


def _newton_f(mu0, level, ctx, maxit=80):
    mu = complex(mu0)
    for _ in range(maxit):
        h = 1e-7 * max(1.0, abs(mu))
        f0 = f_eval(mu, level, ctx)
        d = (f_eval(mu + h, level, ctx) - f_eval(mu - h, level, ctx)) / (2 * h)
        if d == 0:
            return mu, False
        step = f0 / d
        mu -= step
        if abs(step) < 1e-14 * max(1.0, abs(mu)):
            return mu, True
    return mu, abs(f_eval(mu, level, ctx)) < 1e-9


def eigenvalues(level, ctx, count=5, nmat=80, ncoeff=48, operator_residual=None):
    """Locate eigenvalues: truncated-matrix seeds, Newton refinement on F
    in the mu variable, residual certification.  Results sorted by
    (|lambda| desc, arg lambda); conjugate-pair symmetry is enforced for
    real parameter levels.  Seeds that fail to refine are reported with
    ``converged=False``, never dropped."""
    q = ctx.q
    seeds = [ev for ev in matrix_oracle(nmat, level, ctx) if abs(ev) > 1e-13]
    if level.is_real:
        # keep one representative per conjugate pair, restore partners after
        reps = [ev for ev in seeds if ev.imag >= -1e-15]
    else:
        reps = list(seeds)
    results = []
    for lam0 in reps[:count if not level.is_real else (count + 1)]:
        mu, ok = _newton_f(mu_from_lambda(lam0, q), level, ctx)
        lam = lambda_from_mu(mu, q)
        res_f = abs(f_eval(mu, level, ctx))
        coeffs = eigenfunction(lam, level, ncoeff, ctx)
        res_op = math.nan
        if operator_residual is not None:
            res_op = operator_residual(lam, coeffs)
        results.append(EigenResult(lam, mu, res_f, res_op, coeffs, ok))
        if level.is_real and abs(lam.imag) > 1e-13 * abs(lam):
            conj_coeffs = CoeffVector(coeffs.level,
                                      tuple(c.conjugate() for c in coeffs.coeffs))
            results.append(EigenResult(lam.conjugate(), mu.conjugate(),
                                       res_f, res_op, conj_coeffs, ok))
    results.sort(key=lambda r: (-abs(r.lam), cmath.phase(r.lam)))
    return results[:count]


def eigenfunction(lam, level, nmax, ctx):
    """Coefficients a_n(lambda|q), n = 0..nmax with a_0 = 0, a_1 = 1, at a
    certified eigenvalue.

    Built from the scaled minimal solution (Miller route): beyond the
    point where a_n underflows double precision the coefficients are an
    exact flush-to-zero (they are below 1e-300 relative to a_1)."""
    q = ctx.q
    al, be = _ab(level)
    xi = mu_from_lambda(lam, q)
    w = bn_minimal_scaled(nmax, xi, level, ctx)
    coeffs = [0.0 + 0.0j, 1.0 + 0.0j]
    lnq = math.log(q)
    alr = al.real if isinstance(al, complex) else al
    for k in range(1, nmax):
        # log-magnitude guard against underflow of q^{k^2/4 + ...}
        expo = k * k / 4 + k * (1 - alr) / 2
        mag = expo * lnq - k * math.log(abs(xi))
        if mag < -690.0:
            coeffs.append(0.0 + 0.0j)
            continue
        a = (an_prefactor(k, level, ctx) * xi ** (-k)
             * q ** (k * k / 4 + k * (1 - al) / 2) * w[k])
        coeffs.append(a)
    return CoeffVector(level, tuple(coeffs[:nmax + 1]))


def eigen_tail_ratios(lam, level, nmax, ctx):
    """Ratios t_{k+1}/t_k of the weighted tail t_k = h_k |a_k|^2 at an
    eigenvalue, computed factor-wise so no under/overflow occurs."""
    q = ctx.q
    al, be = _ab(level)
    xi = mu_from_lambda(lam, q)
    w = bn_minimal_scaled(nmax + 1, xi, level, ctx)
    out = []
    for k in range(1, nmax):
        # h_{k+1}/h_k from the closed form of the norm
        hr = ((1 - q ** (al + 1 + k)) * (1 - q ** (be + 1 + k))
              * (1 + q ** ((al + be + 3) / 2 + k)) * q ** ((2 * al + 1) / 2)
              * (1 - q ** (2 * k + al + be + 1))
              / ((1 - q ** (2 * k + al + be + 3)) * (1 - q ** (k + 1))
                 * (1 - q ** (al + be + 1 + k)) * (1 + q ** ((al + be + 1) / 2 + k))))
        fr = ((1 - q ** (al + be + 2 + k)) * (1 - q ** ((al + be + 4) / 2 + k))
              * (1 - q ** ((al + be + 5) / 2 + k))
              / ((1 - q ** (al + 2 + k)) * (1 - q ** (be + 2 + k))))
        ar = fr / xi * q ** ((2 * k + 1) / 4 + (1 - al) / 2) * (w[k + 1] / w[k])
        out.append(abs(hr) * abs(ar) ** 2)
    return out


# ---------------------------------------------------------------------------
# s_n polynomials, Markov ratio, q-Coulomb
# ---------------------------------------------------------------------------

def _require_conj_regime(level):
    al, be = complex(level.alpha), complex(level.beta)
    if al.imag == 0.0 or abs(al - be.conjugate()) > 1e-12 * (1 + abs(al)) \
            or al.real <= -1.0:
        raise DomainError("s_n regime requires alpha = conj(beta), "
                          "Im alpha != 0, Re alpha > -1")


def s_poly(n, x, level, ctx):
    """s_n(x) = i^{-n} b_n(i x); real for real x in the conjugate-pair regime."""
    _require_conj_regime(level)
    return (1j) ** (-n) * bn_recurrence(n, 1j * x, level, ctx)


def s_recurrence_coeffs(n, level, ctx):
    """(diagonal, subdiagonal) of s_{n+1} = (x + diag) s_n + sub s_{n-1};
    in the conjugate-pair regime diag is real and sub is negative."""
    _require_conj_regime(level)
    q = ctx.q
    return -1j * bn_B(n, level, q), -bn_C(n, level, q)


def markov_ratio(n, x, level, ctx):
    """Finite-n Markov ratio s*_n/s_n = s_{n-1}^{(a+1,b+1)}(x)/s_n^{(a,b)}(x)."""
    _require_conj_regime(level)
    if complex(x).imag == 0.0:
        raise DomainError("markov_ratio requires Im x != 0")
    den = s_poly(n, x, level, ctx)
    if abs(den) < 1e-280:
        raise ZeroDivisionError("s_n vanishes at x; retry at a perturbed x")
    return s_poly(n - 1, x, level.shifted(1), ctx) / den


def markov_stieltjes(x, level, ctx):
    """Large-n limit of the Markov ratio (the Stieltjes transform of the
    orthogonality measure): F^{(a+1,b+1)}(ix) / (x F^{(a,b)}(ix)).

    This is the printed closed form with its two misprints repaired (the
    missing 1/x and the /x in the second phi argument)."""
    _require_conj_regime(level)
    return f_eval(1j * x, level.shifted(1), ctx) / (x * f_eval(1j * x, level, ctx))


def q_coulomb(L, eta, rho, ctx):
    """q-analog of the regular Coulomb wave function; real for real rho.

    The defining series converges only for q^{1/2}|rho| < 1; beyond that
    the Heine-transformed representation (argument q^{L-i eta+1}) provides
    the analytic continuation, and the two agree on the overlap."""
    q = ctx.q
    z = 1j * math.sqrt(q) * rho
    A = q ** (L + 1j * eta + 1)
    B = q ** (L - 1j * eta + 1)
    if abs(z) < 0.9:
        return (qpoch_inf(z, q, ctx.tol)
                * phi([-A, B], [q ** (2 * L + 2)], q, z, nterms=-1,
                      tol=ctx.tol, max_terms=ctx.max_terms))
    return (qpoch_inf(B, q, ctx.tol) * qpoch_inf(-A * z, q, ctx.tol)
            / qpoch_inf(q ** (2 * L + 2), q, ctx.tol)
            * phi([A, z], [-A * z], q, B, nterms=-1, tol=ctx.tol,
                  max_terms=ctx.max_terms))
