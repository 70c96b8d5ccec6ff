# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch 2F1 kernel.

Same dispatch and semantics as the NumPy fallback in ``_kernels_py``:
direct series on [-0.5, 0.8], 1-z connection above, Pfaff map down to -2,
1/(1-z) connection below.  Values beyond double range come back inf; the
quadrature engine discards non-finite tail evaluations.
"""
from libc.math cimport fabs, floor, exp, isfinite, lgamma, pow as cpow, round as cround

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

cdef double GUARD = 1e-6
cdef double Z_SERIES_MAX = 0.8
cdef double Z_PFAFF_MIN = -2.0


cdef inline bint _near_nonpos_int(double x) noexcept nogil:
    cdef double r
    if x > 0.5:
        return 0
    r = cround(x)
    if r > 0:
        return 0
    return fabs(x - r) <= 1e-13 * (1.0 if fabs(r) < 1.0 else fabs(r))


cdef inline double _gamma_sign(double x) noexcept nogil:
    if x > 0:
        return 1.0
    return 1.0 if ((<long long> floor(x)) % 2) == 0 else -1.0


cdef inline double _ratio22(double n1, double n2, double d1, double d2) noexcept nogil:
    # Gamma(n1)Gamma(n2) / (Gamma(d1)Gamma(d2)); a denominator pole gives 0.
    if _near_nonpos_int(d1) or _near_nonpos_int(d2):
        return 0.0
    cdef double lg = lgamma(n1) + lgamma(n2) - lgamma(d1) - lgamma(d2)
    cdef double sg = _gamma_sign(n1) * _gamma_sign(n2) * _gamma_sign(d1) * _gamma_sign(d2)
    return sg * exp(lg)


cdef double _series(double a, double b, double c, double z,
                    int max_terms, double tol, bint* ok) noexcept nogil:
    cdef double term = 1.0, total = 1.0
    cdef int consec = 0
    cdef int k
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if fabs(term) <= tol * fabs(total):
            consec += 1
            if consec >= 3:
                ok[0] = 1
                return total
        else:
            consec = 0
    if not isfinite(total):
        ok[0] = 1  # overflowed element: value is inf/nan by design
        return total
    ok[0] = 0
    return total


cdef double _eval_one(double a, double b, double c, double z, double omz,
                      int max_terms, double tol, bint terminating,
                      bint scaled_deep, bint* ok, bint* deep) noexcept nogil:
    # With scaled_deep, elements on the z <= -2 branch come back multiplied
    # by omz**min(a,b) (deep[0] set); a <= b is guaranteed by the caller.
    cdef double s, coef1, coef2, acc, u
    cdef bint ok1 = 1, ok2 = 1
    ok[0] = 1
    deep[0] = 0
    if z == 0.0:
        return 1.0
    if terminating:
        return _series(a, b, c, z, max_terms, tol, ok)
    if -0.5 <= z <= Z_SERIES_MAX:
        return _series(a, b, c, z, max_terms, tol, ok)
    if z > Z_SERIES_MAX:
        s = c - a - b
        if fabs(s - cround(s)) > GUARD:
            coef1 = _ratio22(c, s, c - a, c - b)
            coef2 = _ratio22(c, -s, a, b)
            acc = 0.0
            if coef1 != 0.0:
                acc += coef1 * _series(a, b, 1.0 - s, omz, max_terms, tol, &ok1)
            if coef2 != 0.0:
                acc += coef2 * cpow(omz, s) * _series(c - a, c - b, 1.0 + s, omz,
                                                      max_terms, tol, &ok2)
            ok[0] = ok1 and ok2
            return acc
        return _series(a, b, c, z, max_terms, tol, ok)
    if z > Z_PFAFF_MIN:
        return cpow(omz, -a) * _series(a, c - b, c, -z / omz, max_terms, tol, ok)
    deep[0] = scaled_deep
    if fabs((a - b) - cround(a - b)) > GUARD:
        coef1 = _ratio22(c, b - a, b, c - a)
        coef2 = _ratio22(c, a - b, a, c - b)
        u = 1.0 / omz
        acc = 0.0
        if coef1 != 0.0:
            acc += coef1 * _series(a, c - b, a - b + 1.0, u, max_terms, tol, &ok1)
        if coef2 != 0.0:
            acc += coef2 * cpow(omz, a - b) * _series(b, c - a, b - a + 1.0, u,
                                                      max_terms, tol, &ok2)
        ok[0] = ok1 and ok2
        if not scaled_deep:
            acc *= cpow(omz, -a)
        return acc
    acc = _series(a, c - b, c, -z / omz, max_terms, tol, ok)
    if not scaled_deep:
        acc *= cpow(omz, -a)
    return acc


def _vec_impl(double a, double b, double c, z, omz, int max_terms,
              double tol, bint scaled_deep):
    cdef double tmp
    z_arr = np.ascontiguousarray(z, dtype=np.float64)
    omz_arr = np.ascontiguousarray(omz, dtype=np.float64)
    out = np.empty_like(z_arr)
    deep_arr = np.zeros(z_arr.shape, dtype=np.uint8)
    cdef double[::1] zv = z_arr
    cdef double[::1] ov = omz_arr
    cdef double[::1] rv = out
    cdef unsigned char[::1] dv = deep_arr
    if _near_nonpos_int(c):
        raise PoleError(f"2F1 parameter c={c} at a pole")
    if a > b:
        tmp = a
        a = b
        b = tmp
    cdef bint terminating = (a <= 0 and a == cround(a)) or (b <= 0 and b == cround(b))
    cdef Py_ssize_t i, n = zv.shape[0]
    cdef bint ok = 1
    cdef bint deep = 0
    cdef bint all_ok = 1
    cdef bint domain_ok = 1
    with nogil:
        for i in range(n):
            if ov[i] <= 0.0:
                domain_ok = 0
                break
            rv[i] = _eval_one(a, b, c, zv[i], ov[i], max_terms, tol, terminating,
                              scaled_deep, &ok, &deep)
            dv[i] = deep
            if not ok:
                all_ok = 0
    if not domain_ok:
        raise DomainError("2F1 batch argument not in (-inf, 1)")
    if not all_ok:
        raise ConvergenceError(
            f"2F1 series (batch) did not converge: a={a}, b={b}, c={c}, "
            f"max_terms={max_terms}"
        )
    return out, deep_arr.view(np.bool_)


def hyp2f1_vec(double a, double b, double c, z, omz,
               int max_terms=20000, double tol=1e-15):
    """Elementwise 2F1(a,b;c;z[k]) with 1-z supplied exactly as omz."""
    out, _ = _vec_impl(a, b, c, z, omz, max_terms, tol, 0)
    return out


def hyp2f1_vec_scaled(double a, double b, double c, z, omz,
                      int max_terms=20000, double tol=1e-15):
    """Elementwise 2F1; deep-branch elements rescaled by omz**min(a,b).

    Returns (vals, deep): F = vals * omz**(-min(a,b)) where deep, else vals.
    """
    return _vec_impl(a, b, c, z, omz, max_terms, tol, 1)
