"""NumPy fallback for the batch 2F1 kernel.

Mirrors the scalar dispatch in :mod:`hyptrans.special`, vectorized over the
argument array.  The compiled extension in ``_fastkernels.pyx`` implements
the same contract; :mod:`hyptrans.backend` picks one at import time.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .special import (
    DEGENERATE_GUARD,
    MAX_TERMS,
    SERIES_TOL,
    Z_PFAFF_MIN,
    Z_SERIES_MAX,
    GammaRatioSpec,
    _dist_to_int,
    _near_nonpos_int,
    gamma_ratio,
)


def _series_vec(a: float, b: float, c: float, z: np.ndarray,
                max_terms: int, tol: float) -> np.ndarray:
    term = np.ones_like(z)
    total = np.ones_like(z)
    consec = np.zeros(z.shape, dtype=np.int8)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(max_terms):
            term *= ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
            total += term
            conv = np.abs(term) <= tol * np.abs(total)
            consec = np.where(conv, consec + 1, 0)
            if k >= 2:
                done = (consec >= 3) | ~np.isfinite(total)
                if done.all():
                    return total
    raise ConvergenceError(
        f"2F1 series (batch) did not converge: a={a}, b={b}, c={c}, "
        f"max_terms={max_terms}"
    )


def hyp2f1_vec_scaled(a: float, b: float, c: float, z, omz,
                      max_terms: int = MAX_TERMS, tol: float = SERIES_TOL
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise 2F1 with the deep-argument branch returned rescaled.

    Returns (vals, deep) where F(z[k]) = vals[k] * omz[k]**(-min(a,b)) on
    the elements flagged deep (z <= -2) and F = vals elsewhere.  The
    rescaled form stays inside double range however large 1-z gets, so
    callers combining F with power-law prefactors can work in log space.
    """
    z = np.asarray(z, dtype=np.float64)
    omz = np.asarray(omz, dtype=np.float64)
    if _near_nonpos_int(c):
        raise PoleError(f"2F1 parameter c={c} at a pole")
    if (omz <= 0.0).any():
        raise DomainError("2F1 batch argument not in (-inf, 1)")
    if a > b:
        a, b = b, a
    out = np.empty_like(z)
    m_deep = z <= Z_PFAFF_MIN

    if (a <= 0 and a == round(a)) or (b <= 0 and b == round(b)):
        return _series_vec(a, b, c, z, max_terms, tol), np.zeros_like(m_deep)

    m_dir = (z >= -0.5) & (z <= Z_SERIES_MAX)
    m_one = z > Z_SERIES_MAX  # may round to >= 1 at deep nodes; omz is exact
    m_pfaff = (z < -0.5) & (z > Z_PFAFF_MIN)

    if m_dir.any():
        out[m_dir] = _series_vec(a, b, c, z[m_dir], max_terms, tol)

    if m_one.any():
        o = omz[m_one]
        s = c - a - b
        if _dist_to_int(s) > DEGENERATE_GUARD:
            coef1 = gamma_ratio(GammaRatioSpec((c, s), (c - a, c - b)))
            coef2 = gamma_ratio(GammaRatioSpec((c, -s), (a, b)))
            acc = np.zeros_like(o)
            with np.errstate(over="ignore", invalid="ignore"):
                if coef1 != 0.0:
                    acc += coef1 * _series_vec(a, b, 1.0 - s, o, max_terms, tol)
                if coef2 != 0.0:
                    acc += coef2 * o ** s * _series_vec(c - a, c - b, 1.0 + s, o, max_terms, tol)
            out[m_one] = acc
        else:
            out[m_one] = _series_vec(a, b, c, z[m_one], max_terms, tol)

    if m_pfaff.any():
        o = omz[m_pfaff]
        with np.errstate(over="ignore", invalid="ignore"):
            out[m_pfaff] = o ** (-a) * _series_vec(a, c - b, c, -z[m_pfaff] / o, max_terms, tol)

    if m_deep.any():
        o = omz[m_deep]
        if _dist_to_int(a - b) > DEGENERATE_GUARD:
            coef1 = gamma_ratio(GammaRatioSpec((c, b - a), (b, c - a)))
            coef2 = gamma_ratio(GammaRatioSpec((c, a - b), (a, c - b)))
            u = 1.0 / o
            acc = np.zeros_like(o)
            with np.errstate(over="ignore", invalid="ignore"):
                if coef1 != 0.0:
                    acc += coef1 * _series_vec(a, c - b, a - b + 1.0, u, max_terms, tol)
                if coef2 != 0.0:
                    acc += coef2 * o ** (a - b) * _series_vec(b, c - a, b - a + 1.0, u, max_terms, tol)
            out[m_deep] = acc
        else:
            out[m_deep] = _series_vec(a, c - b, c, -z[m_deep] / o, max_terms, tol)

    return out, m_deep


def hyp2f1_vec(a: float, b: float, c: float, z, omz,
               max_terms: int = MAX_TERMS, tol: float = SERIES_TOL) -> np.ndarray:
    """Elementwise 2F1(a,b;c;z[k]) with 1-z supplied exactly as omz."""
    vals, deep = hyp2f1_vec_scaled(a, b, c, z, omz, max_terms, tol)
    if deep.any():
        omz = np.asarray(omz, dtype=np.float64)
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.where(deep, vals * omz ** (-min(a, b)), vals)
    return vals
