"""Named verification suites: every invariant of the library runs as a
registered check returning a machine-readable record.

Each suite maps to one invariant of the underlying identities (transforms,
orthogonality, operator calculus, spectral asymptotics, expansions).  The
CLI command ``awspec verify`` runs them; the acceptance tests call the
same registry, so the command-line report and the test-suite can never
drift apart.

Error metric: identities evaluated through terminating series in base q
with unit argument cancel intrinsically (their terms peak at
base^{-n(n-1)/2}), so residuals of that kind are normalized by the largest
participating term, the backward-error scale; everything else uses plain
relative error.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import awop, framework, qexp, qpolys, spectral
from .exceptions import NonConvergenceError
from .qcore import QContext, phi, qpoch, qpoch_inf
from .qpolys import JacobiLevel

__all__ = ["VerifyConfig", "SuiteResult", "REGISTRY", "run_suite",
           "run_suites", "suite_names", "DEFAULT_CONFIG"]


@dataclass(frozen=True)
class VerifyConfig:
    q: float = 0.5
    alpha: complex = 0.3
    beta: complex = -0.2
    tol: float = 1e-14
    trunc: int = 80
    nodes: int = 160
    seed: int = 20240801

    @property
    def ctx(self):
        return QContext(self.q, self.tol)

    @property
    def level(self):
        return JacobiLevel(self.alpha, self.beta)


DEFAULT_CONFIG = VerifyConfig()


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_err: float
    tol: float
    detail: str = ""


REGISTRY = {}


def _suite(name, tol):
    def wrap(fn):
        fn._suite_name = name
        fn._suite_tol = tol
        REGISTRY[name] = fn
        return fn
    return wrap


def suite_names():
    return sorted(REGISTRY)


def run_suite(name, config=DEFAULT_CONFIG):
    fn = REGISTRY[name]
    try:
        err, detail = fn(config)
    except Exception as exc:  # a crash is a failure, not a silence
        return SuiteResult(name, False, math.inf, fn._suite_tol,
                           f"exception: {exc!r}")
    return SuiteResult(name, bool(err <= fn._suite_tol), float(err),
                       fn._suite_tol, detail)


def run_suites(names=None, config=DEFAULT_CONFIG):
    names = suite_names() if names is None else names
    return [run_suite(n, config) for n in names]


def _rng(config):
    return np.random.default_rng(config.seed)


def _combine(pairs, tol):
    """Fold (error, subtolerance) pairs into a single error expressed in
    units of the suite tolerance: passes iff every sub-error passes."""
    return max(e / t for e, t in pairs) * tol


def _phi_term_scale(num, den, base, z, nterms):
    """Largest |term| of a terminating series (the backward-error scale)."""
    term = 1.0 + 0.0j
    peak = 1.0
    for k in range(nterms):
        bk = base ** k
        r = z / (1.0 - base * bk)
        for v in num:
            r *= 1.0 - v * bk
        for v in den:
            r /= 1.0 - v * bk
        term *= r
        peak = max(peak, abs(term))
    return peak


# ---------------------------------------------------------------------------
# qcore
# ---------------------------------------------------------------------------

@_suite("qcore.heine", 1e-10)
def _heine(config):
    """First Heine transformation on random admissible draws."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for _ in range(100):
        a = _disc(rng, 0.9)
        c = _disc(rng, 0.9)
        b = _disc(rng, 0.8, rmin=0.2)
        z = _disc(rng, 0.8)
        lhs = phi([a, b], [c], q, z, nterms=-1)
        rhs = (qpoch_inf(b, q) * qpoch_inf(a * z, q)
               / (qpoch_inf(c, q) * qpoch_inf(z, q))
               * phi([c / b, z], [a * z], q, b, nterms=-1))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst, "100 draws"


@_suite("qcore.heine-iterated", 1e-10)
def _heine2(config):
    """Iterated Heine transformation on random admissible draws."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for _ in range(100):
        a, b, z = (_disc(rng, 0.7) for _ in range(3))
        c = _disc(rng, 0.9, rmin=0.5)
        w = a * b * z / c
        lhs = phi([a, b], [c], q, z, nterms=-1)
        rhs = (qpoch_inf(w, q) / qpoch_inf(z, q)
               * phi([c / a, c / b], [c], q, w, nterms=-1))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst, "100 draws"


@_suite("qcore.sears", 1e-10)
def _sears(config):
    """Sears transformation of terminating balanced 4phi3, n <= 8."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for n in range(1, 9):
        for _ in range(6):
            a = _disc(rng, 0.8, rmin=0.2)
            b = _disc(rng, 0.8, rmin=0.2)
            c = _disc(rng, 0.8, rmin=0.2)
            d = _disc(rng, 0.8, rmin=0.3)
            e = _disc(rng, 0.8, rmin=0.3)
            f = a * b * c * q ** (1 - n) / (d * e)
            num = [q ** -n, a, b, c]
            lhs = phi(num, [d, e, f], q, q, nterms=n)
            pre = (qpoch(e / a, q, n) * qpoch(f / a, q, n)
                   / (qpoch(e, q, n) * qpoch(f, q, n)) * a ** n)
            rhs = pre * phi([q ** -n, a, d / b, d / c],
                            [d, a * q ** (1 - n) / e, a * q ** (1 - n) / f],
                            q, q, nterms=n)
            scale = _phi_term_scale(num, [d, e, f], q, q, n)
            worst = max(worst, abs(lhs - rhs) / max(scale, abs(lhs), 1.0))
    return worst, "n<=8, 6 draws each; max-term normalized"


@_suite("qcore.saalschutz", 1e-10)
def _saalschutz(config):
    """q-Pfaff-Saalschuetz sum of the balanced terminating 3phi2, n <= 8."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for n in range(1, 9):
        for _ in range(6):
            a = _disc(rng, 0.8, rmin=0.2)
            b = _disc(rng, 0.8, rmin=0.2)
            c = _disc(rng, 0.9, rmin=0.3)
            num = [q ** -n, a, b]
            den = [c, a * b * q ** (1 - n) / c]
            lhs = phi(num, den, q, q, nterms=n)
            rhs = (qpoch(c / a, q, n) * qpoch(c / b, q, n)
                   / (qpoch(c, q, n) * qpoch(c / (a * b), q, n)))
            scale = _phi_term_scale(num, den, q, q, n)
            worst = max(worst, abs(lhs - rhs) / max(scale, abs(lhs), 1.0))
    return worst, "n<=8; max-term normalized"


@_suite("qcore.poch-split", 1e-14)
def _poch_split(config):
    """(a)_{n+m} = (a)_n (a q^n)_m for 0 <= n, m <= 10."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for _ in range(20):
        a = _disc(rng, 2.0)
        for n in range(11):
            for m in range(11):
                lhs = qpoch(a, q, n + m)
                rhs = qpoch(a, q, n) * qpoch(a * q ** n, q, m)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst, "20 draws x n,m<=10"


@_suite("qcore.phi-poly", 1e-10)
def _phi_poly(config):
    """A terminating series is a polynomial in z: interpolation check."""
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for n in range(1, 7):
        a = _disc(rng, 0.8, rmin=0.2)
        b = _disc(rng, 0.8, rmin=0.2)
        c = _disc(rng, 0.8, rmin=0.3)
        zs = np.linspace(-0.9, 0.9, n + 1)
        vals = [phi([q ** -n, a, b], [c], q, z, nterms=n) for z in zs]
        zt = 0.37
        # Lagrange interpolation at zt
        acc = 0.0 + 0.0j
        for i, zi in enumerate(zs):
            li = 1.0
            for j, zj in enumerate(zs):
                if j != i:
                    li *= (zt - zj) / (zi - zj)
            acc += vals[i] * li
        direct = phi([q ** -n, a, b], [c], q, zt, nterms=n)
        worst = max(worst, abs(acc - direct) / max(1.0, abs(direct)))
    return worst, "degree <= 6"


def _disc(rng, rmax, rmin=0.0):
    r = rng.uniform(rmin, rmax)
    t = rng.uniform(0.0, 2 * math.pi)
    return r * complex(math.cos(t), math.sin(t))


# ---------------------------------------------------------------------------
# qpolys
# ---------------------------------------------------------------------------

@_suite("qpolys.orthogonality", 1e-8)
def _orthogonality(config):
    """Off-diagonal moments below 1e-8 h_n; diagonal matches h_n; doubling-checked."""
    ctx = config.ctx
    worst = 0.0
    for (al, be) in [(config.alpha, config.beta), (0.5, 0.5),
                     (0.3 + 0.5j, 0.3 - 0.5j)]:
        level = JacobiLevel(al, be)
        for nn in (config.nodes, 2 * config.nodes):
            rule = awop.make_rule(nn)
            w = awop.weight_theta_grid(level, rule, ctx)
            xs = np.cos(rule.nodes)
            polys = qpolys.cqjacobi_seq(8, level, xs, ctx)
            for n in range(9):
                hn = qpolys.norm_h(n, level, ctx)
                for m in range(n, 9):
                    val = np.sum(rule.weights * w * polys[n] * polys[m])
                    if n == m:
                        worst = max(worst, abs(val - hn) / abs(hn))
                    else:
                        worst = max(worst, abs(val) / abs(hn))
    return worst, "3 parameter sets, node doubling"


@_suite("qpolys.duality", 1e-10)
def _duality(config):
    """Connection coefficients against the weighted dual expansion."""
    ctx = config.ctx
    level = config.level
    p = math.sqrt(config.q)
    ctx_p = QContext(p, config.tol)
    worst = 0.0
    for nprime in range(2, 8):
        n = nprime - 1  # degree on the shifted side
        ecoef = qpolys.dual_expansion_aw(nprime, level, ctx_p)
        hl = qpolys.norm_h(n, level.shifted(1), ctx)
        triples = [qpolys.connection_down(m, level, ctx) for m in (n, n + 1, n + 2)]
        cmn = [triples[0].c_nn, triples[1].c_nn1, triples[2].c_nn2]
        for i, m in enumerate((n, n + 1, n + 2)):
            dd = hl * cmn[i] / qpolys.norm_h(m, level, ctx)
            worst = max(worst, abs(ecoef[i] - dd) / max(1.0, abs(dd)))
    return worst, "degrees 1..6"


@_suite("qpolys.contiguous", 1e-10)
def _contiguous(config):
    """Three-term contiguous relation of the balanced 4phi3 family."""
    q = config.q
    p = math.sqrt(q)
    al = complex(config.alpha).real
    be = complex(config.beta).real

    def phi_n(nn):
        return phi([p ** -nn, p ** (nn + al + be + 3), p ** (be + 1),
                    -p ** (al + 1)],
                   [p ** (al + be + 2), p ** (be + 2), -p ** (al + 2)],
                   p, p, nterms=nn)

    def peak_n(nn):
        return _phi_term_scale(
            [p ** -nn, p ** (nn + al + be + 3), p ** (be + 1), -p ** (al + 1)],
            [p ** (al + be + 2), p ** (be + 2), -p ** (al + 2)], p, p, nn)

    worst = 0.0
    for nn in range(1, 9):
        A = (p ** (al + be - 3 * nn + 4) * (1 - p ** (nn + al + be + 3))
             * (1 - p ** (2 * nn + al + be + 2)) * (1 - p ** (nn + al + be + 2))
             * (1 - p ** (nn + be + 2)) * (1 + p ** (nn + al + 2)))
        C = (-p ** (2 * al + 2 * be + 6 - 3 * nn) * (1 - p ** nn)
             * (1 - p ** (2 * nn + al + be + 4)) * (1 - p ** (nn + 1))
             * (1 - p ** (nn + al + 1)) * (1 + p ** (nn + be + 1)))
        B = (-C - A + p ** (al + be - 3 * nn + 4)
             * qpoch(p ** (2 * nn + al + be + 2), p, 3)
             * (1 - p ** (be + 1)) * (1 + p ** (al + 1)))
        t1 = phi_n(nn + 1)
        t2 = -B / A * phi_n(nn)
        t3 = -C / A * phi_n(nn - 1)
        # backward-error scale: the terminating series peak terms (the
        # values cancel down from there), weighted by the coefficients
        scale = max(peak_n(nn + 1), abs(B / A) * peak_n(nn),
                    abs(C / A) * peak_n(nn - 1), 1.0)
        worst = max(worst, abs(t1 - t2 - t3) / scale)
    return worst, "n <= 8; series-peak normalized"


# ---------------------------------------------------------------------------
# awop
# ---------------------------------------------------------------------------

@_suite("awop.ladder", 1e-10)
def _ladder(config):
    """D_q P_n = xi_n P_{n-1} at the shifted level, pointwise."""
    ctx = config.ctx
    level = config.level
    rng = _rng(config)
    worst = 0.0
    for n in range(1, 9):
        xi = awop.xi_factor(n, level, config.q)
        for x in rng.uniform(-0.95, 0.95, 20):
            lhs = awop.dq_pointwise(
                lambda t, n=n: qpolys.cqjacobi(n, level, t, ctx), x, ctx)
            rhs = xi * qpolys.cqjacobi(n - 1, level.shifted(1), x, ctx)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst, "n <= 8, 20 x each"


@_suite("awop.right-inverse", 1e-7)
def _right_inverse(config):
    """D_q (T g) = g for polynomials of degree <= 5 (quadrature route)."""
    ctx = config.ctx
    level = config.level
    rule = awop.make_rule(config.nodes)
    rng = _rng(config)
    worst = 0.0
    for deg in range(6):
        cs = rng.standard_normal(deg + 1)

        def g(t, cs=cs):
            return sum(c * t ** k for k, c in enumerate(cs))

        def tg(t):
            return awop.t_quadrature(g, t, level, rule, ctx)

        for x in (-0.6, 0.1, 0.55):
            lhs = awop.dq_pointwise(tg, x, ctx)
            worst = max(worst, abs(lhs - g(x)) / max(1.0, abs(g(x))))
    # coefficient route: dq_coeffs after t_coeffs is the identity
    vec = awop.CoeffVector(level.shifted(1), tuple(rng.standard_normal(6)))
    back = awop.dq_coeffs(awop.t_coeffs(vec, ctx), ctx)
    cerr = max(abs(a - b) for a, b in zip(back.coeffs, vec.coeffs))
    return _combine([(worst, 1e-7), (cerr, 1e-14)], 1e-7), \
        "degrees <= 5; coefficient round-trip exact"


@_suite("awop.kernel-coeff", 1e-7)
def _kernel_coeff(config):
    """Quadrature form of T equals the coefficient action on P_n, n <= 4."""
    ctx = config.ctx
    level = config.level
    rule = awop.make_rule(config.nodes)
    worst = 0.0
    for n in range(5):
        fac = awop.t_factor(n, level, config.q)

        def g(t, n=n):
            return qpolys.cqjacobi(n, level.shifted(1), t, ctx)

        for x in (-0.4, 0.2, 0.7):
            quad = awop.t_quadrature(g, x, level, rule, ctx)
            coef = fac * qpolys.cqjacobi(n + 1, level, x, ctx)
            worst = max(worst, abs(quad - coef) / max(1.0, abs(coef)))
    return worst, "n <= 4"


# ---------------------------------------------------------------------------
# spectral
# ---------------------------------------------------------------------------

BN_PARAM_SETS = [(0.3, -0.2), (0.5, 0.5), (0.3 + 0.5j, 0.3 - 0.5j)]
BN_QS = [0.36, 0.5, 0.8]


@_suite("spectral.bn-closed-form", 1e-10)
def _bn_closed(config):
    """Closed form against forward recurrence: n <= 20, |mu| <= 3."""
    rng = _rng(config)
    worst = 0.0
    for (al, be) in BN_PARAM_SETS:
        level = JacobiLevel(al, be)
        for q in BN_QS:
            ctx = QContext(q, config.tol)
            for _ in range(50):
                mu = _disc(rng, 3.0)
                seq = spectral.bn_sequence(20, mu, level, ctx)
                for n in range(21):
                    ex = spectral.bn_explicit(n, mu, level, ctx)
                    worst = max(worst, abs(ex - seq[n]) / max(1.0, abs(seq[n])))
    return worst, "3 param sets x 3 q x 50 mu"


@_suite("spectral.asymp-growth", 1e-5)
def _asymp_growth(config):
    """Large-n limit of x^n b_n(1/x) against the closed 2phi1 form."""
    ctx = config.ctx
    level = config.level
    worst = 0.0
    for x in (0.5, 1 + 1j, -2.0):
        b = spectral.bn_sequence(80, 1.0 / x, level, ctx)[80]
        tgt = spectral.bn_growth_limit(x, level, ctx)
        worst = max(worst, abs(x ** 80 * b - tgt) / abs(tgt))
    return worst, "n = 80 at three x"


@_suite("spectral.asymp-zero", 1e-3)
def _asymp_zero(config):
    """Zero asymptotics b_n(0) ~ C p^{n^2/2} u^n, both parameter orderings."""
    worst = 0.0
    detail = []
    for (al, be) in [(0.5, -0.25), (-0.25, 0.5)]:
        level = JacobiLevel(al, be)
        ctx = config.ctx
        u, C = spectral.zero_asymptotics_constants(level, ctx)
        r = spectral.bn0_scaled_sequence(61, level, ctx, u)
        ratio_drift = max(abs(r[n + 1] / r[n] - 1.0) for n in range(58, 61))
        cerr = abs(r[60] - C) / abs(C)
        detail.append(f"drift={ratio_drift:.1e}")
        worst = max(worst, _combine([(cerr, 1e-3), (ratio_drift, 1e-4)], 1e-3))
    return worst, "; ".join(detail)


@_suite("spectral.asymp-root", 1e-3)
def _asymp_root(config):
    """Root asymptotics at a certified zero of F, via the scaled Miller
    recurrence, plus the X_n(-xi)^n -> 1 intermediate form."""
    ctx = config.ctx
    level = config.level
    res = spectral.eigenvalues(level, ctx, count=1, nmat=60)
    xi = res[0].mu
    w = spectral.bn_minimal_scaled(50, xi, level, ctx)
    K = spectral.root_asymptotics_constant(xi, level, ctx)
    err = abs(w[50] - K) / abs(K)
    x40 = spectral.x_nu(40, xi, level, ctx) * (-xi) ** 40
    return _combine([(err, 1e-3), (abs(x40 - 1.0), 1e-3)], 1e-3), \
        f"|F(xi)|={res[0].residual_f:.1e}"


@_suite("spectral.x-telescope", 1e-10)
def _x_telescope(config):
    """Telescoping identity linking b_n, X_nu and X_{nu-1} (nu = 0)."""
    ctx = config.ctx
    level = config.level
    rng = _rng(config)
    worst = 0.0
    for _ in range(5):
        x = _disc(rng, 2.0, rmin=0.7)
        bfwd = spectral.bn_sequence(10, x, level, ctx)
        bfwd1 = spectral.bn_sequence(9, x, level.shifted(1), ctx)
        x0 = spectral.x_nu(0, x, level, ctx)
        xm1 = spectral.x_nu(-1, x, level, ctx)
        cprod = 1.0 + 0.0j
        for n in range(1, 11):
            cprod *= spectral.bn_C(n, level, config.q)
            lhs = cprod * spectral.x_nu(n, x, level, ctx)
            rhs = bfwd[n] * x0 + bfwd1[n - 1] * xm1
            scale = max(abs(lhs), abs(bfwd[n] * x0), abs(bfwd1[n - 1] * xm1), 1e-10)
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst, "n <= 10, 5 random x"


@_suite("spectral.eigen-certify", 1e-6)
def _eigen_certify(config):
    """Full pipeline: truncation stability, |F| residual, operator residual,
    conjugate symmetry, pure-imaginary regimes."""
    ctx = config.ctx
    level = config.level
    rule = awop.make_rule(config.nodes)

    def op_resid(lam, coeffs):
        def g(t):
            return awop.eval_coeffvector(coeffs, t, ctx)
        worst = 0.0
        for x in np.linspace(-0.85, 0.85, 10):
            tg = awop.t_quadrature(g, x, level, rule, ctx)
            worst = max(worst, abs(tg - lam * g(x)))
        return worst

    res40 = spectral.eigenvalues(level, ctx, count=5, nmat=40)
    res80 = spectral.eigenvalues(level, ctx, count=5, nmat=80,
                                 operator_residual=op_resid)
    drift = max(abs(a.lam - b.lam) for a, b in zip(res40, res80))
    fres = max(r.residual_f for r in res80)
    opres = max(r.residual_operator for r in res80)
    conj = 0.0
    lams = [r.lam for r in spectral.eigenvalues(level, ctx, count=6, nmat=80)]
    for lam in lams:
        conj = max(conj, min(abs(lam.conjugate() - l2) for l2 in lams))
    imag = 0.0
    for (al, be) in [(0.4, 0.4), (0.3 + 0.5j, 0.3 - 0.5j)]:
        ev = spectral.matrix_oracle(30, JacobiLevel(al, be), ctx)[:6]
        imag = max(imag, max(abs(e.real) / abs(e) for e in ev))
    err = _combine([(drift, 1e-8), (fres, 1e-9), (opres, 1e-6),
                    (conj, 1e-10), (imag, 1e-9)], 1e-6)
    return err, (f"drift={drift:.1e} F={fres:.1e} op={opres:.1e} "
                 f"conj={conj:.1e} imag={imag:.1e}")


@_suite("spectral.markov", 1e-5)
def _markov(config):
    """Markov ratio against the Stieltjes-transform closed form at n = 60."""
    ctx = config.ctx
    level = JacobiLevel(0.3 + 0.5j, 0.3 - 0.5j)
    x = 2j
    rat = spectral.markov_ratio(60, x, level, ctx)
    closed = spectral.markov_stieltjes(x, level, ctx)
    return abs(rat - closed) / abs(closed), "n=60 at x=2i"


@_suite("spectral.coulomb", 1e-12)
def _coulomb(config):
    """Reality of the q-Coulomb function on a 50-point real rho grid."""
    ctx = config.ctx
    worst = 0.0
    for rho in np.linspace(0.05, 2.5, 50):
        v = spectral.q_coulomb(0.5, 0.3, rho, ctx)
        worst = max(worst, abs(v.imag))
    return worst, "L=0.5, eta=0.3"


# ---------------------------------------------------------------------------
# qexp
# ---------------------------------------------------------------------------

@_suite("qexp.dq-eigen", 1e-10)
def _dq_eigen(config):
    """D_q eigenrelation of the q-exponential across random (a, b) draws."""
    ctx = config.ctx
    rng = _rng(config)
    worst = 0.0
    draws = [(-1j, 0.4)] + [(_disc(rng, 1.0, rmin=0.3), _disc(rng, 0.6, rmin=0.1))
                            for _ in range(8)]
    for a, b in draws:
        for x in (0.3, -0.45):
            lhs = awop.dq_pointwise(lambda t: qexp.eq_exp(t, a, b, ctx), x, ctx)
            rhs = qexp.eq_eigenvalue_dq(a, b, config.q) * qexp.eq_exp(x, a, b, ctx)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst, "9 (a,b) draws x 2 x"


@_suite("qexp.expansion-coeffs", 1e-10)
def _expansion_coeffs(config):
    """Closed-form expansion coefficients against quadrature projection, m <= 10."""
    ctx = config.ctx
    level = config.level
    r = 0.3
    rule = awop.make_rule(2 * config.nodes)
    xs = np.cos(rule.nodes)
    q = config.q
    params = qexp._expansion_params(level, q)
    w = qexp._aw_weight_theta(params, rule, ctx)
    seq = qpolys.aw_phi_seq(10, params, xs, q)
    ev = np.array([qexp.eq_exp(x, -1j, r, ctx) for x in xs])
    worst = 0.0
    conv = 1.0 + 0.0j
    a0, b0, c0, d0 = params
    for m in range(11):
        if m > 0:
            qm = q ** (m - 1)
            conv *= (1 - a0 * b0 * qm) * (1 - a0 * c0 * qm) * (1 - a0 * d0 * qm) / a0
        proj = (np.sum(rule.weights * w * conv * seq[m] * ev)
                / qpolys.aw_norm(m, params, q, ctx.tol))
        am = qexp.am_coeff(m, r, level, ctx)
        worst = max(worst, abs(proj - am) / max(1.0, abs(am)))
    return worst, "m <= 10 at r=0.3"


@_suite("qexp.expansion-residual", 1e-8)
def _expansion_residual(config):
    """Expansion of E_q(x; -i, r) at M = 25 across parameter sets and r."""
    worst = 0.0
    for (al, be) in [(0.3, -0.2), (0.5, -0.25), (0.1, 0.4)]:
        level = JacobiLevel(al, be)
        for r in (0.1, 0.3, 0.5j):
            for x in (0.2, -0.5):
                worst = max(worst, qexp.expansion_residual(
                    x, r, level, config.ctx, m_trunc=25))
    return worst, "3 param sets x r in {0.1, 0.3, 0.5i}"


@_suite("qexp.level-shift", 1e-8)
def _level_shift(config):
    """Level-independence of the combined eigen-expansion value."""
    ctx = config.ctx
    level = config.level
    worst = 0.0
    for lam, x in [(1.7, 0.3), (0.9, -0.4), (2.3 + 0.4j, 0.2)]:
        c0 = qexp.e_series_invariant(x, lam, level, ctx)
        c2 = qexp.e_series_invariant(x, lam, level.shifted(2), ctx)
        worst = max(worst, abs(c0 - c2) / max(1.0, abs(c0)))
    return worst, "(a,b) vs (a+2,b+2)"


@_suite("qexp.hermite-value", 1e-8)
def _hermite_value(config):
    """Combined value against the q-Hermite/E_q closed form, and the
    standalone q-Hermite identity."""
    ctx = config.ctx
    level = config.level
    worst = 0.0
    for lam, x in [(1.7, 0.3), (2.6, 0.3), (1.7, -0.45), (0.9, 0.1),
                   (1.6 + 0.5j, 0.25)]:
        c = qexp.e_series_invariant(x, lam, level, ctx)
        closed = qexp.e_series_invariant_closed(x, lam, ctx)
        worst = max(worst, abs(c - closed) / max(1.0, abs(c)))
    hid = max(qexp.hermite_identity_residual(lam, x, ctx)
              for lam, x in [(2.5, 0.3), (1.8, -0.2), (3.0 + 1.0j, 0.5)])
    return _combine([(worst, 1e-8), (hid, 1e-10)], 1e-8), \
        "invariant vs closed; 7.47 = 7.48"


# ---------------------------------------------------------------------------
# framework
# ---------------------------------------------------------------------------

@_suite("framework.qjacobi-coeffs", 1e-14)
def _fw_qjacobi(config):
    """Monicized q-Jacobi ladder equals the direct recurrence coefficients."""
    ctx = config.ctx
    level = config.level
    u = 2 * math.sqrt(config.q) / (1 - config.q)
    sys = framework.monicize(framework.qjacobi_family(level, ctx), u)
    worst = 0.0
    for n in range(21):
        worst = max(worst, abs(sys.B(n) + spectral.bn_B(n, level, config.q)))
        if n >= 1:
            worst = max(worst, abs(sys.C(n) + spectral.bn_C(n, level, config.q)))
    return worst, "n <= 20 (sign map B -> -B, C -> -C)"


@_suite("framework.ultraspherical", 1e-14)
def _fw_ultra(config):
    """Ultraspherical instance reproduces its classical recurrence, and the
    shift-invariance detector accepts it (and rejects a perturbation)."""
    nu = 0.7
    fam = framework.ultraspherical_family(nu)
    u = 2.0
    sys = framework.monicize(fam, u)
    worst = 0.0
    for n in range(1, 12):
        worst = max(worst, abs(sys.B(n)))
        worst = max(worst, abs(sys.C(n) + u * u / (4 * (nu + n) * (nu + n + 1))))
    ok = framework.shift_invariance_check(fam, u, 8)
    bad = framework.shift_invariance_check(
        fam, u, 8, perturb=lambda n, c: c * 1.01 if n == 3 else c)
    if not ok or bad:
        worst = max(worst, 1.0)
    qj_ok = framework.shift_invariance_check(
        framework.qjacobi_family(config.level, config.ctx),
        2 * math.sqrt(config.q) / (1 - config.q), 8)
    if not qj_ok:
        worst = max(worst, 1.0)
    return worst, "recurrence + shift-invariance detector"


@_suite("framework.dual-coeffs", 1e-10)
def _fw_dual(config):
    """Generic dual-expansion coefficients through the family interface."""
    ctx = config.ctx
    level = config.level
    fam = framework.qjacobi_family(level, ctx)
    fam1 = fam.shift()
    p = math.sqrt(config.q)
    ctx_p = QContext(p, config.tol)
    worst = 0.0
    for n in range(1, 7):
        ec = qpolys.dual_expansion_aw(n + 1, level, ctx_p)
        triples = [fam.conn(m) for m in (n, n + 1, n + 2)]
        cmn = [triples[0].c_nn, triples[1].c_nn1, triples[2].c_nn2]
        for i, m in enumerate((n, n + 1, n + 2)):
            dd = fam1.h(n) * cmn[i] / fam.h(m)
            worst = max(worst, abs(ec[i] - dd) / max(1.0, abs(dd)))
    return worst, "q-Jacobi instance, n <= 6"


@_suite("framework.cf-pincherle", 1e-8)
def _fw_cf(config):
    """Continued J-fraction against the minimal-solution ratio, with
    divergence at a certified eigenvalue."""
    ctx = config.ctx
    level = config.level
    u = 2 * math.sqrt(config.q) / (1 - config.q)
    sys = framework.monicize(framework.qjacobi_family(level, ctx), u)
    vals = []
    for mu in (1.5, 2.5):
        cf = framework.cf_minimal_ratio(sys, mu, ctx)
        xr = spectral.x_nu(0, mu, level, ctx) / spectral.x_nu(-1, mu, level, ctx)
        vals.append(cf / xr)
    worst = abs(vals[0] - vals[1]) / abs(vals[1])
    res = spectral.eigenvalues(level, ctx, count=1, nmat=60)
    mu_star = res[0].mu
    try:
        pole = framework.cf_minimal_ratio(sys, mu_star, ctx, depth=400,
                                          max_depth=800)
    except NonConvergenceError:
        pole = math.inf
    if abs(pole) < 1e6:
        worst = max(worst, 1.0)
    return worst, f"ratio const; |CF(mu*)|={abs(pole):.1e}"


@_suite("framework.telescope", 1e-10)
def _fw_telescope(config):
    """Telescoping identity for the X family, with a sensitivity control."""
    ctx = config.ctx
    level = config.level
    q = config.q
    rng = _rng(config)
    worst = 0.0
    for _ in range(4):
        x = complex(rng.uniform(0.8, 2.0), rng.uniform(0.1, 0.8))

        def f(nu, x=x):
            return spectral.x_nu(nu, x, level, ctx)

        for n in range(1, 9):
            worst = max(worst, framework.telescope_residual(
                f, lambda nu: 1.0, lambda nu: spectral.bn_B(nu, level, q),
                lambda nu: spectral.bn_C(nu + 1, level, q), n, x, sign=+1))
    xs = 0.9 + 0.3j

    def fs(nu):
        return spectral.x_nu(nu, xs, level, ctx)

    broken = framework.telescope_residual(
        fs, lambda nu: 1.0, lambda nu: spectral.bn_B(nu, level, q),
        lambda nu: spectral.bn_C(nu + 1, level, q) * (1.5 if nu == 2 else 1.0),
        6, xs, sign=+1)
    if broken < 1e-4:
        worst = max(worst, 1.0)
    return worst, f"n <= 8, 4 x-draws; control residual {broken:.1e}"


@_suite("framework.large-param-limit", 1e-12)
def _fw_large_param(config):
    """Large-parameter limit reduction onto the monic q-Jacobi recurrence."""
    level = JacobiLevel(0.5, -0.25)
    ctx = QContext(0.36, config.tol)
    dev = framework.large_param_limit_check(level, 10, ctx)
    # finite-parameter b at A = 1e8 approaches the displayed limit magnitude
    q = 0.36
    qs = math.sqrt(q)
    B8 = q ** (1 + 0.5 / 2)
    D8 = q ** (2 + (0.5 - 0.25) / 2)
    lim_err = 0.0
    for n in (1, 2, 3):
        bfin = framework.four_param_b(n, 1e8, B8, -B8, D8, qs)
        lim_err = max(lim_err, abs(bfin + framework.large_param_b(
            n, level, q)) / abs(bfin))
    return _combine([(dev, 1e-12), (lim_err, 1e-6)], 1e-12), f"map dev={dev:.1e}"
