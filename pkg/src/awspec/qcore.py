"""q-shifted factorials, basic hypergeometric series and h-products.

All functions are pure and take their base explicitly: no implicit base
conversion happens anywhere (callers juggling q, q^2 and p = sqrt(q) pass
whichever base the formula at hand uses).
"""
import cmath
import math
from dataclasses import dataclass

from . import backend
from .exceptions import DomainError, PoleError

__all__ = [
    "QContext", "HypergeometricSpec", "qpoch", "qpoch_inf", "qpoch_multi",
    "phi", "rphis", "w8w7", "h_product", "exp_itheta", "terminating_order",
]


@dataclass(frozen=True)
class QContext:
    """Evaluation context: the base q in (0,1) plus truncation controls.

    ``p = sqrt(q)`` is always derived from ``q`` (single source of truth).
    """
    q: float
    tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"q must be in (0,1), got {self.q}")
        if self.tol <= 0.0:
            raise DomainError("tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")

    @property
    def p(self):
        return math.sqrt(self.q)


def exp_itheta(x):
    """e^{i theta} for x = cos(theta) with the branch sqrt(x^2-1) ~ x at infinity.

    For real x in [-1, 1] this is x + i sqrt(1-x^2); elsewhere the product
    of principal square roots sqrt(x-1)*sqrt(x+1) realizes the branch.
    """
    z = complex(x)
    if z.imag == 0.0 and -1.0 <= z.real <= 1.0:
        return complex(z.real, math.sqrt(max(0.0, 1.0 - z.real * z.real)))
    return z + cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def qpoch(a, base, n):
    """(a; base)_n = prod_{j=0}^{n-1} (1 - a base^j); n = 0 gives 1."""
    if n < 0:
        raise DomainError("qpoch: n must be >= 0")
    _check_base(base)
    return backend.qpoch(a, base, n)


def qpoch_inf(a, base, tol=1e-14, max_terms=10000):
    """(a; base)_inf, truncated by the geometric tail bound of the log-product."""
    _check_base(base)
    return backend.qpoch_inf(a, base, tol, max_terms)


def qpoch_multi(params, base, n, tol=1e-14, max_terms=10000):
    """(a_1, ..., a_m; base)_n, n a nonnegative integer or None for infinity."""
    out = 1.0 + 0.0j
    for a in params:
        if n is None:
            out *= qpoch_inf(a, base, tol, max_terms)
        else:
            out *= qpoch(a, base, n)
    return out


def terminating_order(num_params, base, tol=1e-12, max_order=400):
    """Smallest n >= 0 with some numerator parameter equal to base^(-n), else None."""
    best = None
    for a in num_params:
        a = complex(a)
        if a == 0.0 or a.imag != 0.0 or a.real <= 0.0:
            continue
        m = round(-math.log(a.real) / math.log(base))
        if 0 <= m <= max_order and abs(a - base ** (-m)) <= tol * base ** (-m):
            best = m if best is None else min(best, m)
    return best


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of an r-phi-s evaluation: numerator/denominator lists, base, argument."""
    num_params: tuple
    den_params: tuple
    base: float
    argument: complex
    tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        object.__setattr__(self, "num_params", tuple(complex(v) for v in self.num_params))
        object.__setattr__(self, "den_params", tuple(complex(v) for v in self.den_params))
        _check_base(self.base)

    @property
    def terminating_order(self):
        return terminating_order(self.num_params, self.base)


def rphis(spec, ctx=None):
    """Evaluate the basic hypergeometric series of ``spec``.

    Includes the [(-1)^n base^{n(n-1)/2}]^{1+s-r} factor.  Terminating
    series (a numerator parameter equal to base^{-n}) are summed exactly;
    otherwise partial sums run until the truncation criteria of the
    context are met.
    """
    tol = ctx.tol if ctx is not None else spec.tol
    max_terms = ctx.max_terms if ctx is not None else spec.max_terms
    nt = spec.terminating_order
    # guard denominator poles over the summation range actually visited
    if nt is not None:
        limit = nt
        for b in spec.den_params:
            m = terminating_order([b], spec.base)
            if m is not None and m < limit:
                raise PoleError(f"rphis: denominator parameter {b} = base^-{m}")
    return phi(spec.num_params, spec.den_params, spec.base, spec.argument,
               nterms=nt, tol=tol, max_terms=max_terms)


def phi(num, den, base, z, nterms=None, tol=1e-14, max_terms=10000):
    """r-phi-s series with explicit parameter lists.

    ``nterms``: if None, detect termination from the numerator parameters;
    if an integer n, sum exactly n+1 terms; pass -1 to force the adaptive
    non-terminating path.
    """
    _check_base(base)
    if nterms is None:
        nt = terminating_order(num, base)
        nterms = -1 if nt is None else nt
    sign_power = 1 + len(den) - len(num)
    return backend.phi_sum(num, den, base, complex(z), sign_power, nterms,
                           tol, max_terms)


def w8w7(a, b, c, d, e, f, base, z, ctx=None):
    """Very-well-poised 8W7(a; b, c, d, e, f; base, z) in standard W-notation.

    Summed directly from the well-poised term ratio (the q a^{1/2} pair is
    folded into the (1 - a base^{2k}) factor), so no square-root branch of
    ``a`` is ever taken.
    """
    tol = ctx.tol if ctx is not None else 1e-14
    max_terms = ctx.max_terms if ctx is not None else 10000
    _check_base(base)
    if z == 0:
        return 1.0 + 0.0j
    nt = terminating_order([b, c, d, e, f], base)
    term = 1.0 + 0.0j
    total = term
    k = 0
    small = 0
    while True:
        if nt is not None and k >= nt:
            break
        bk = base ** k
        ratio = (1.0 - a * base ** (2 * k + 2)) / (1.0 - a * base ** (2 * k))
        ratio *= (1.0 - a * bk) * z / (1.0 - base * bk)
        for v in (b, c, d, e, f):
            ratio *= 1.0 - v * bk
            dfac = 1.0 - (a * base / v) * bk
            if abs(dfac) < 1e-15 * (1.0 + abs(a * base * bk / v)):
                raise PoleError("w8w7: denominator factor vanished")
            ratio /= dfac
        term *= ratio
        total += term
        k += 1
        if nt is None:
            if abs(term) < tol * max(1.0, abs(total)):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            if k >= max_terms:
                raise PoleError("w8w7: no convergence")
    return total


def h_product(x, params, base, tol=1e-14):
    """h(cos theta; a_1, ..., a_m) = prod_j (a_j e^{i theta}, a_j e^{-i theta}; base)_inf."""
    w = exp_itheta(x)
    out = 1.0 + 0.0j
    for a in params:
        out *= qpoch_inf(a * w, base, tol) * qpoch_inf(a / w, base, tol)
    return out


def _check_base(base):
    if not 0.0 < base < 1.0:
        raise DomainError(f"base must be in (0,1), got {base}")
