"""Scalar special functions on the real line.

Signed log-gamma, stable gamma ratios, Pochhammer symbols, the Gauss
hypergeometric function 2F1 for real argument z < 1, and a 3F2 power series.

The 2F1 evaluator dispatches on the argument:

* z in [-0.5, 0.8]          direct power series,
* z in (0.8, 1)             two-series linear connection in 1-z
                            (DLMF 15.8.4; needs c-a-b non-integral),
* z in (-2, -0.5)           Pfaff transform z -> z/(z-1) (DLMF 15.8.1),
* z <= -2                   two-series connection in 1/(1-z)
                            (DLMF 15.8.2; needs a-b non-integral).

The connection branches fall back to the plain series with the full term
budget when the required parameter combination is too close to an integer;
past the radius where that can work a ConvergenceError is raised.  All
branches accept the value of 1-z alongside z so callers integrating up to
an endpoint at z = 1 can supply the distance exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstraintError, ConvergenceError, DomainError, PoleError

Z_SERIES_MAX = 0.8     # direct series for z in [-0.5, Z_SERIES_MAX]
Z_PFAFF_MIN = -2.0     # Pfaff-mapped series down to here; 1/(1-z) below
MAX_TERMS = 20000
SERIES_TOL = 1e-15
DEGENERATE_GUARD = 1e-6   # distance to integer below which connections are unusable
_LOG_FLOAT_MAX = math.log(1.7976931348623157e308)


def _near_nonpos_int(x: float, tol: float = 1e-12) -> bool:
    if x > 0.5:
        return False
    r = round(x)
    return r <= 0 and abs(x - r) <= tol * max(1.0, abs(r))


def _dist_to_int(x: float) -> float:
    return abs(x - round(x))


@dataclass(frozen=True)
class HypParams:
    """Parameter triple (a, b, c) of the hypergeometric equation.

    c must stay away from the non-positive integers so the defining series
    makes sense; all entries must be finite.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ConstraintError(f"parameter {name}={v} is not finite")
        if _near_nonpos_int(self.c):
            raise PoleError(f"c={self.c} is (nearly) a non-positive integer")

    def shifted(self, da: float = 0.0, db: float = 0.0, dc: float = 0.0) -> "HypParams":
        return HypParams(self.a + da, self.b + db, self.c + dc)


@dataclass(frozen=True)
class GammaRatioSpec:
    """Product of gammas over a product of gammas, given by their arguments."""

    numerator_args: tuple[float, ...]
    denominator_args: tuple[float, ...]

    def __init__(self, numerator_args, denominator_args):
        object.__setattr__(self, "numerator_args", tuple(float(x) for x in numerator_args))
        object.__setattr__(self, "denominator_args", tuple(float(x) for x in denominator_args))


def ln_abs_gamma(x: float) -> tuple[float, int]:
    """Return (log|Gamma(x)|, sign of Gamma(x)).

    Raises PoleError when x is within machine tolerance of a pole.
    """
    if _near_nonpos_int(x, 1e-13):
        raise PoleError(f"gamma pole at x={x}")
    try:
        lg = math.lgamma(x)
    except ValueError as exc:  # exact pole
        raise PoleError(f"gamma pole at x={x}") from exc
    if x > 0:
        return lg, 1
    # Gamma alternates sign on successive unit intervals left of zero.
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return lg, sign


def gamma_ratio(spec: GammaRatioSpec) -> float:
    """Evaluate prod Gamma(num) / prod Gamma(den) in log space.

    A denominator argument at a non-positive integer makes the whole ratio
    zero (reciprocal gamma has zeros there); a numerator argument at a pole
    raises PoleError.
    """
    for d in spec.denominator_args:
        if _near_nonpos_int(d, 1e-13):
            return 0.0
    log_total = 0.0
    sign = 1
    for n in spec.numerator_args:
        lg, s = ln_abs_gamma(n)
        log_total += lg
        sign *= s
    for d in spec.denominator_args:
        lg, s = ln_abs_gamma(d)
        log_total -= lg
        sign *= s
    if log_total > _LOG_FLOAT_MAX:
        raise OverflowError(f"gamma ratio magnitude exp({log_total:.1f}) not representable")
    return sign * math.exp(log_total)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0 or k != int(k):
        raise ConstraintError(f"pochhammer order must be a non-negative integer, got {k}")
    out = 1.0
    for i in range(int(k)):
        out *= a + i
    return out


def _series_2f1(a: float, b: float, c: float, z: float,
                max_terms: int, tol: float) -> float:
    term = 1.0
    total = 1.0
    consec = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) <= tol * abs(total):
            consec += 1
            if consec >= 3:
                return total
        else:
            consec = 0
    raise ConvergenceError(
        f"2F1 series did not converge: a={a}, b={b}, c={c}, z={z}, "
        f"max_terms={max_terms}"
    )


def _conn_one_minus(a: float, b: float, c: float, omz: float,
                    max_terms: int, tol: float) -> float:
    # F(a,b;c;1-omz) for small omz > 0, c-a-b not integral (DLMF 15.8.4).
    s = c - a - b
    coef1 = gamma_ratio(GammaRatioSpec((c, s), (c - a, c - b)))
    coef2 = gamma_ratio(GammaRatioSpec((c, -s), (a, b)))
    total = 0.0
    if coef1 != 0.0:
        total += coef1 * _series_2f1(a, b, 1.0 - s, omz, max_terms, tol)
    if coef2 != 0.0:
        total += coef2 * omz ** s * _series_2f1(c - a, c - b, 1.0 + s, omz, max_terms, tol)
    return total


def _conn_reciprocal(a: float, b: float, c: float, omz: float,
                     max_terms: int, tol: float) -> float:
    # F(a,b;c;z) for z <= -2 via the argument 1/(1-z), a-b not integral
    # (DLMF 15.8.2).  omz = 1-z >= 3.
    u = 1.0 / omz
    coef1 = gamma_ratio(GammaRatioSpec((c, b - a), (b, c - a)))
    coef2 = gamma_ratio(GammaRatioSpec((c, a - b), (a, c - b)))
    total = 0.0
    if coef1 != 0.0:
        total += coef1 * omz ** (-a) * _series_2f1(a, c - b, a - b + 1.0, u, max_terms, tol)
    if coef2 != 0.0:
        total += coef2 * omz ** (-b) * _series_2f1(b, c - a, b - a + 1.0, u, max_terms, tol)
    return total


def hyp2f1_raw(a: float, b: float, c: float, z: float, omz: float | None = None,
               max_terms: int = MAX_TERMS, tol: float = SERIES_TOL) -> float:
    """2F1(a,b;c;z) for real z < 1; omz = 1-z may be supplied exactly.

    A value too large for a double comes back as inf (quadrature discards
    non-finite tail evaluations) rather than raising.
    """
    if omz is None:
        omz = 1.0 - z
    if _near_nonpos_int(c):
        raise PoleError(f"2F1 parameter c={c} at a pole")
    if omz <= 0.0:
        raise DomainError(f"2F1 argument z={z} outside (-inf, 1)")
    if a > b:
        a, b = b, a  # exact a<->b symmetry: one canonical code path
    if z == 0.0:
        return 1.0
    try:
        # terminating series is valid for every argument
        if (a <= 0 and a == round(a)) or (b <= 0 and b == round(b)):
            return _series_2f1(a, b, c, z, max_terms, tol)
        if -0.5 <= z <= Z_SERIES_MAX:
            return _series_2f1(a, b, c, z, max_terms, tol)
        if z > Z_SERIES_MAX:
            if _dist_to_int(c - a - b) > DEGENERATE_GUARD:
                return _conn_one_minus(a, b, c, omz, max_terms, tol)
            return _series_2f1(a, b, c, z, max_terms, tol)
        if z > Z_PFAFF_MIN:
            return omz ** (-a) * _series_2f1(a, c - b, c, -z / omz, max_terms, tol)
        if _dist_to_int(a - b) > DEGENERATE_GUARD:
            return _conn_reciprocal(a, b, c, omz, max_terms, tol)
        return omz ** (-a) * _series_2f1(a, c - b, c, -z / omz, max_terms, tol)
    except OverflowError:
        return math.inf


def hyp2f1(p: HypParams, z: float, *, max_terms: int = MAX_TERMS,
           tol: float = SERIES_TOL) -> float:
    """Gauss hypergeometric function F(a,b;c;z) on the real line, z < 1."""
    return hyp2f1_raw(p.a, p.b, p.c, z, None, max_terms, tol)


def hyp3f2(a: float, b: float, c: float, d: float, e: float, z: float,
           *, max_terms: int = MAX_TERMS, tol: float = SERIES_TOL) -> float:
    """3F2(a,b,c; d,e; z) by its power series, |z| < 1."""
    if _near_nonpos_int(d) or _near_nonpos_int(e):
        raise PoleError(f"3F2 lower parameter at a pole: d={d}, e={e}")
    if abs(z) >= 1.0:
        raise DomainError(f"3F2 series argument |z|={abs(z)} >= 1")
    term = 1.0
    total = 1.0
    consec = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) * (c + k) / ((d + k) * (e + k) * (k + 1.0)) * z
        total += term
        if abs(term) <= tol * abs(total):
            consec += 1
            if consec >= 3:
                return total
        else:
            consec = 0
    raise ConvergenceError(f"3F2 series did not converge at z={z}")


def gauss_sum(p: HypParams) -> float:
    """Value of the 2F1 series at z=1: Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).

    Requires c-a-b > 0 for convergence.
    """
    if p.c - p.a - p.b <= 0:
        raise ConstraintError(f"series at z=1 diverges: c-a-b={p.c - p.a - p.b} <= 0")
    return gamma_ratio(GammaRatioSpec((p.c, p.c - p.a - p.b), (p.c - p.a, p.c - p.b)))
