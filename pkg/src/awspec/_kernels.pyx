# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel primitives (see _kernels_py for the reference semantics)."""
from awspec.exceptions import NonConvergenceError, PoleError

cdef double _TINY = 1e-300


def qpoch(a, double base, long n):
    cdef double complex out = 1.0
    cdef double complex f = a
    cdef long j
    for j in range(n):
        out *= 1.0 - f
        f *= base
    return out


def qpoch_inf(a, double base, double tol=1e-14, long max_terms=10000):
    cdef double complex out = 1.0
    cdef double complex f = a
    cdef double bound = abs(complex(a)) / (1.0 - base)
    cdef long j = 0
    while bound > tol:
        out *= 1.0 - f
        f *= base
        bound *= base
        j += 1
        if j > max_terms:
            raise NonConvergenceError("qpoch_inf: tail bound not met")
    return out


def phi_sum(num, den, double base, z, long sign_power, long nterms,
            double tol=1e-14, long max_terms=10000):
    cdef double complex zz = z
    cdef double complex nbuf[8]
    cdef double complex dbuf[8]
    cdef Py_ssize_t nn = len(num)
    cdef Py_ssize_t nd = len(den)
    if nn > 8 or nd > 8:
        raise ValueError("phi_sum: at most 8 parameters per side")
    cdef Py_ssize_t i
    for i in range(nn):
        nbuf[i] = num[i]
    for i in range(nd):
        dbuf[i] = den[i]
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef double complex ratio, dfac
    cdef double bk, mag, scale, r, prev_mag = 1.0
    cdef long k = 0, small = 0, sp
    while True:
        if 0 <= nterms <= k:
            break
        bk = base ** k
        ratio = zz / (1.0 - base * bk)
        for i in range(nn):
            ratio *= 1.0 - nbuf[i] * bk
        for i in range(nd):
            dfac = 1.0 - dbuf[i] * bk
            if abs(dfac) < 1e-15 * (1.0 + abs(dbuf[i] * bk)):
                raise PoleError(f"phi_sum: denominator factor vanished at k={k}")
            ratio /= dfac
        if sign_power:
            if sign_power > 0:
                for sp in range(sign_power):
                    ratio *= -bk
            else:
                for sp in range(-sign_power):
                    ratio /= -bk
        term *= ratio
        total += term
        k += 1
        if nterms < 0:
            mag = abs(term)
            scale = abs(total)
            if scale < _TINY:
                scale = _TINY
            if mag < tol * scale:
                small += 1
                if small >= 2:
                    r = mag / prev_mag if prev_mag > 0.0 else 0.0
                    if r < 1.0 and mag * r / (1.0 - r) < tol * scale:
                        break
            else:
                small = 0
            prev_mag = mag if mag > 0.0 else _TINY
            if k >= max_terms:
                raise NonConvergenceError("phi_sum: max_terms exceeded")
    return total
