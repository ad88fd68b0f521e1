"""Generic ladder-family machinery: induced tridiagonal recurrences, monic
normalization, shift-invariance detection, Pincherle continued-fraction
ratios, the telescoping identity for solution families, and the shipped
instances (ultraspherical, continuous q-Jacobi) plus the large-parameter
limit reduction used as a consistency check.
"""
from dataclasses import dataclass
from typing import Callable, Optional

from .awop import xi_factor
from .exceptions import DomainError, NonConvergenceError
from .qpolys import ConnectionTriple, connection_down, norm_h
from .spectral import bn_B, bn_C

__all__ = [
    "LadderFamily", "MonicSystem", "qjacobi_family", "ultraspherical_family",
    "monicize", "shift_invariance_check", "cf_minimal_ratio",
    "telescope_residual", "four_param_a", "four_param_b", "large_param_a",
    "large_param_b", "large_param_limit_check",
]


@dataclass(frozen=True)
class LadderFamily:
    """A family of orthogonal polynomials with a degree-lowering ladder
    operator and a three-band connection to the shifted parameter point.

    ``xi(n)``: ladder factor; ``conn(n)``: ConnectionTriple (c_nn, c_nn1,
    c_nn2) onto the shifted family; ``h(n)``: norms (optional); ``shift()``:
    the family at A + 1.
    """
    label: str
    xi: Callable[[int], complex]
    conn: Callable[[int], ConnectionTriple]
    shift: Callable[[], "LadderFamily"]
    h: Optional[Callable[[int], complex]] = None


@dataclass(frozen=True)
class MonicSystem:
    """Monic-form recurrence data: lambda b_n = b_{n+1} + B(n) b_n + C(n) b_{n-1}."""
    B: Callable[[int], complex]
    C: Callable[[int], complex]
    u: complex


def qjacobi_family(level, ctx):
    """The continuous q-Jacobi instance of the ladder family."""
    def make(lv):
        return LadderFamily(
            label=f"q-jacobi({lv.alpha}, {lv.beta})",
            xi=lambda n: xi_factor(n, lv, ctx.q),
            conn=lambda n: connection_down(n, lv, ctx),
            shift=lambda: make(lv.shifted(1)),
            h=lambda n: norm_h(n, lv, ctx),
        )
    return make(level)


def ultraspherical_family(nu):
    """The ultraspherical instance: xi_n = 2 nu, c_{n,n} = -c_{n,n-2} =
    nu/(nu + n), c_{n,n-1} = 0."""
    def make(v):
        return LadderFamily(
            label=f"ultraspherical({v})",
            xi=lambda n: 2.0 * v,
            conn=lambda n: ConnectionTriple(
                v / (v + n), 0.0, -v / (v + n) if n >= 2 else 0.0),
            shift=lambda: make(v + 1.0),
        )
    return make(nu)


def monicize(family, u):
    """Monic-form coefficients B_n = u c_{n+1,n}/xi_{n+1} and
    C_n = u^2 c_{n,n} c_{n+1,n-1} / (xi_n xi_{n+1})."""
    def B(n):
        return u * family.conn(n + 1).c_nn1 / family.xi(n + 1)

    def C(n):
        if n < 1:
            return 0.0 + 0.0j
        return (u * u * family.conn(n).c_nn * family.conn(n + 1).c_nn2
                / (family.xi(n) * family.xi(n + 1)))
    return MonicSystem(B, C, u)


def shift_invariance_check(family, u, n_max, tol=1e-12, perturb=None):
    """True iff B_n(A) = B_0(A+n) and C_n(A) = C_1(A+n-1) up to ``tol``
    for 1 <= n <= n_max.

    The C comparison is anchored at index 1 rather than 0 because the
    degree-0 connection triple has no structural c_{1,-1} entry; for an
    analytically shift-invariant family the two anchorings are equivalent.
    ``perturb``: optional map (n, value) -> value applied to C_n(A), used
    by the deliberate-counterexample test."""
    sys0 = monicize(family, u)
    fam = family
    shifts = [fam]
    for _ in range(n_max):
        fam = fam.shift()
        shifts.append(fam)
    for n in range(1, n_max + 1):
        bn = sys0.B(n)
        cn = sys0.C(n)
        if perturb is not None:
            cn = perturb(n, cn)
        b0 = monicize(shifts[n], u).B(0)
        c1 = monicize(shifts[n - 1], u).C(1)
        if abs(bn - b0) > tol * max(1.0, abs(bn)):
            return False
        if abs(cn - c1) > tol * max(1.0, abs(cn)):
            return False
    return True


def cf_minimal_ratio(system, lam, ctx, depth=200, max_depth=12800):
    """Value of the continued J-fraction of the monic recurrence,

        r_0 = 1 / (lam - B_0 - C_1 / (lam - B_1 - C_2 / (...))),

    evaluated bottom-up with tail 0 and depth doubling (Pincherle: this is
    G_0/G_{-1} of the minimal solution when B_n, C_n -> 0).  Values larger
    than 1/tol are reported as spurious-pole candidates via
    NonConvergenceError."""
    prev = None
    d = depth
    while d <= max_depth:
        r = 0.0 + 0.0j
        for k in range(d - 1, -1, -1):
            r = 1.0 / (lam - system.B(k) - system.C(k + 1) * r)
        if prev is not None and abs(r - prev) <= ctx.tol * max(1.0, abs(r)):
            return r
        prev = r
        d *= 2
    if abs(prev) > 1.0 / ctx.tol:
        return prev  # pole neighbourhood: caller inspects magnitude
    raise NonConvergenceError("cf_minimal_ratio: depth doubling did not settle")


def telescope_residual(f, a_fn, b_fn, c_fn, n, x, sign=+1, nu0=0.0):
    """Residual of the telescoping identity

        C_{nu0} ... C_{nu0+n-1} f(nu0+n)
            = f_{n,nu0}(x) f(nu0) +- f_{n-1,nu0+1}(x) f(nu0-1)

    for a family satisfying C_nu f(nu+1) = (A_nu x + B_nu) f(nu) +- f(nu-1),
    with the companion polynomials built from the same coefficient data.
    The residual is normalized by the largest participating term."""
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")

    def poly_seq(nu, count):
        vals = [1.0 + 0.0j]
        if count >= 1:
            vals.append(a_fn(nu) * x + b_fn(nu))
        for k in range(1, count):
            vals.append((a_fn(nu + k) * x + b_fn(nu + k)) * vals[k]
                        + sign * c_fn(nu + k - 1) * vals[k - 1])
        return vals

    cprod = 1.0 + 0.0j
    for j in range(n):
        cprod *= c_fn(nu0 + j)
    lhs = cprod * f(nu0 + n)
    pn = poly_seq(nu0, n)[n]
    pn1 = poly_seq(nu0 + 1, n - 1)[n - 1] if n >= 1 else 0.0
    rhs = pn * f(nu0) + sign * pn1 * f(nu0 - 1)
    scale = max(abs(lhs), abs(pn * f(nu0)), abs(pn1 * f(nu0 - 1)), 1e-300)
    return abs(lhs - rhs) / scale


# ---------------------------------------------------------------------------
# large-parameter limit reduction
# ---------------------------------------------------------------------------

def four_param_a(n, A, B, C, D, q):
    """Diagonal coefficient of the finite-parameter recurrence
    Z_{n+1} = (x - a_n) Z_n - b_n Z_{n-1}."""
    return (-D / (A * B * C)
            - q ** (n - 1) * (1 - D * q ** n / A) * (1 - D * q ** n / B)
            * (1 - D * q ** n / C)
            / ((1 - D * q ** (2 * n - 1)) * (1 - D * q ** (2 * n - 2)))
            + D / (A * B * C) * (1 - A * q ** (n - 1)) * (1 - B * q ** (n - 1))
            * (1 - C * q ** (n - 1))
            / ((1 - D * q ** (2 * n - 1)) * (1 - D * q ** (2 * n))))


def four_param_b(n, A, B, C, D, q):
    """Sub-diagonal coefficient of the finite-parameter recurrence."""
    return (-D / (A * B * C) * q ** (n - 2)
            * (1 - A * q ** (n - 1)) * (1 - B * q ** (n - 1))
            * (1 - C * q ** (n - 1)) * (1 - D * q ** (n - 1) / A)
            * (1 - D * q ** (n - 1) / B) * (1 - D * q ** (n - 1) / C)
            / ((1 - D * q ** (2 * n - 1)) * (1 - D * q ** (2 * n - 2)) ** 2
               * (1 - D * q ** (2 * n - 3))))


def large_param_a(n, level, q):
    """a'_n: the displayed large-A limit after the q -> sqrt(q) replacement
    and the B = q^{1+a/2} = -C, D = q^{2+(a+b)/2} identification."""
    al, be = complex(level.alpha).real, complex(level.beta).real
    return (-q ** ((n - 1) / 2) * (1 + q ** (n + (al + be + 3) / 2))
            * (1 - q ** ((be - al) / 2))
            / ((1 - q ** (n + 1 + (al + be) / 2))
               * (1 - q ** (n + 2 + (al + be) / 2))))


def large_param_b(n, level, q):
    """b'_n of the displayed limit (see large_param_a)."""
    al, be = complex(level.alpha).real, complex(level.beta).real
    return (q ** (n + (be - al - 3) / 2) * (1 - q ** (n + al + 1))
            * (1 - q ** (n + be + 1))
            / ((1 - q ** (n + (al + be + 1) / 2))
               * (1 - q ** (n + 1 + (al + be) / 2)) ** 2
               * (1 - q ** (n + (al + be + 3) / 2))))


def large_param_limit_check(level, n_max, ctx):
    """Max deviation of the rescaling map onto the monic q-Jacobi
    recurrence: with s = q^{(2a+5)/4}, the limit coefficients satisfy
    s a'_n = -B_n and s^2 b'_n = C_n of the monic system (the minus sign
    realizes the (x - a) vs (mu + B) bookkeeping of the two displays)."""
    if not level.is_real:
        raise DomainError("large_param_limit_check requires real alpha, beta")
    q = ctx.q
    al = complex(level.alpha).real
    s = q ** ((2 * al + 5) / 4)
    dev = 0.0
    for n in range(1, n_max + 1):
        da = abs(s * large_param_a(n, level, q) + bn_B(n, level, q))
        db = abs(s * s * large_param_b(n, level, q) - bn_C(n, level, q))
        dev = max(dev, da, db)
    return dev
