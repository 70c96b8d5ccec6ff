"""The hypergeometric operator L, the first-order factor D, and residual
checks for the transmutation kernel identities.

L_{a,b,c} f = x(1-x) f'' + (c - (a+b+1)x) f' - ab f.

Functions built from the catalog (solutions, power products, Gaussians)
carry exact first and second derivatives; anything else falls back to
five-point central differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Callable

from .errors import DomainError, PoleError, UnknownCaseError
from .expr import A, B, C, MU, ONE, ZERO, Expr
from .solutions import SolutionKind, eval_w, in_domain, map_argument, w_form
from .special import HypParams, hyp2f1_raw

FD_STEP_SCALE = 1e-5


@dataclass(frozen=True)
class SmoothFn:
    """A scalar function with optionally-exact derivatives.

    derivative_order is the highest exact derivative available; below that
    the operators use five-point central differences with step
    max(1e-5, 1e-5 |x|).
    """

    value_at: Callable[[float], float]
    d1: Callable[[float], float] | None = None
    d2: Callable[[float], float] | None = None
    derivative_order: int = 0

    def deriv1(self, x: float) -> float:
        if self.derivative_order >= 1 and self.d1 is not None:
            return self.d1(x)
        h = max(FD_STEP_SCALE, FD_STEP_SCALE * abs(x))
        f = self.value_at
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)

    def deriv2(self, x: float) -> float:
        if self.derivative_order >= 2 and self.d2 is not None:
            return self.d2(x)
        h = max(FD_STEP_SCALE, FD_STEP_SCALE * abs(x))
        f = self.value_at
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x)
                + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def constant_fn(value: float) -> SmoothFn:
    return SmoothFn(lambda x: value, lambda x: 0.0, lambda x: 0.0, 2)


def polynomial_fn(coeffs: list[float]) -> SmoothFn:
    """Polynomial with coefficients in increasing degree order."""

    def ev(x, cs):
        out = 0.0
        for c in reversed(cs):
            out = out * x + c
        return out

    d1 = [k * c for k, c in enumerate(coeffs)][1:]
    d2 = [k * c for k, c in enumerate(d1)][1:]
    return SmoothFn(lambda x: ev(x, coeffs), lambda x: ev(x, d1), lambda x: ev(x, d2), 2)


def gaussian_fn(y0: float, sigma: float) -> SmoothFn:
    def val(x):
        return math.exp(-((x - y0) / sigma) ** 2)

    def d1(x):
        return val(x) * (-2.0 * (x - y0) / sigma ** 2)

    def d2(x):
        u = (x - y0) / sigma
        return val(x) * (4.0 * u * u - 2.0) / sigma ** 2

    return SmoothFn(val, d1, d2, 2)


def solution_fn(kind: SolutionKind, p: HypParams) -> SmoothFn:
    """One of w1..w6 with exact derivatives via the 2F1 derivative formula
    F' = (ab/c) F(a+1,b+1;c+1;.) and the product rule on the power factors."""
    form = w_form(kind, p)

    def f_args(shift: int, x: float) -> float:
        z = map_argument(form.argmap, x)
        return hyp2f1_raw(form.fa + shift, form.fb + shift, form.fc + shift, z)

    fa, fb, fc = form.fa, form.fb, form.fc
    k1 = fa * fb / fc
    k2 = k1 * (fa + 1.0) * (fb + 1.0) / (fc + 1.0)

    def phi_d(x: float) -> float:
        if form.argmap == "x":
            return 1.0
        if form.argmap == "inv":
            return -1.0 / (x * x)
        return -1.0

    def phi_dd(x: float) -> float:
        if form.argmap == "inv":
            return 2.0 / (x * x * x)
        return 0.0

    def parts(x: float):
        if not in_domain(kind, x):
            raise DomainError(f"x={x} outside the domain of {kind.name}")
        u = 1.0
        lp = 0.0
        lpp = 0.0
        if form.pow_x != 0.0:
            u *= abs(x) ** form.pow_x
            lp += form.pow_x / x
            lpp += -form.pow_x / (x * x)
        if form.pow_omx != 0.0:
            u *= abs(1.0 - x) ** form.pow_omx
            lp += -form.pow_omx / (1.0 - x)
            lpp += -form.pow_omx / ((1.0 - x) * (1.0 - x))
        return u, lp, lpp

    def val(x):
        u, _, _ = parts(x)
        return u * f_args(0, x)

    def d1(x):
        u, lp, _ = parts(x)
        h0 = f_args(0, x)
        h1 = k1 * f_args(1, x) * phi_d(x)
        return u * (lp * h0 + h1)

    def d2(x):
        u, lp, lpp = parts(x)
        h0 = f_args(0, x)
        pd = phi_d(x)
        f1 = k1 * f_args(1, x)
        h1 = f1 * pd
        h2 = k2 * f_args(2, x) * pd * pd + f1 * phi_dd(x)
        return u * ((lpp + lp * lp) * h0 + 2.0 * lp * h1 + h2)

    return SmoothFn(val, d1, d2, 2)


def apply_D(alpha: float, f: SmoothFn, x: float) -> float:
    """(D_alpha f)(x) = x f'(x) + alpha f(x)."""
    return x * f.deriv1(x) + alpha * f.value_at(x)


def apply_L(p: HypParams, f: SmoothFn, x: float) -> float:
    """(L_{a,b,c} f)(x) = x(1-x) f'' + (c-(a+b+1)x) f' - ab f."""
    return (x * (1.0 - x) * f.deriv2(x)
            + (p.c - (p.a + p.b + 1.0) * x) * f.deriv1(x)
            - p.a * p.b * f.value_at(x))


def d2f1(p: HypParams, z: float) -> float:
    """d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z)."""
    if p.c == 0.0:
        raise PoleError("derivative formula needs c != 0")
    return p.a * p.b / p.c * hyp2f1_raw(p.a + 1.0, p.b + 1.0, p.c + 1.0, z)


def adjoint_residual(p: HypParams, f: SmoothFn, g: SmoothFn, x: float) -> float:
    """(Lf)g - f(L*g) minus the derivative of the bilinear concomitant.

    L* = L_{1-a,1-b,2-c} is the formal adjoint; the concomitant is
    x(1-x)(f'g - fg') + (c-1+(1-a-b)x) fg, differentiated here by a
    five-point central difference.  The result should vanish.
    """
    padj = HypParams(1.0 - p.a, 1.0 - p.b, 2.0 - p.c)

    def concomitant(t: float) -> float:
        fv, gv = f.value_at(t), g.value_at(t)
        return (t * (1.0 - t) * (f.deriv1(t) * gv - fv * g.deriv1(t))
                + (p.c - 1.0 + (1.0 - p.a - p.b) * t) * fv * gv)

    h = 1e-4
    dB = (-concomitant(x + 2 * h) + 8 * concomitant(x + h)
          - 8 * concomitant(x - h) + concomitant(x - 2 * h)) / (12 * h)
    lhs = apply_L(p, f, x) * g.value_at(x) - f.value_at(x) * apply_L(padj, g, x)
    return lhs - dB


# ---------------------------------------------------------------------------
# Transmutation kernel table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransmutationCase:
    """One row of the eight-case kernel table.

    The kernel identity is L_{a',b',c';x} K1 = L_{1-a,1-b,2-c;y} K2 with
    K1 = w(y)/v(x) |x-y|^(mu-1) and K2 = K1 * w2(y)/v2(x), where w, w2, v,
    v2 are products of powers of |y|, 1-y, |x|, 1-x.  Exponents are affine
    in (a, b, c, mu).
    """

    name: str
    a_p: Expr
    b_p: Expr
    c_p: Expr
    x0: float  # other endpoint of the inner interval: 0, 1, or -inf
    w_y: Expr = ZERO        # exponent of |y| in w
    w_omy: Expr = ZERO      # exponent of (1-y) in w
    v_x: Expr = ZERO        # exponent of |x| in v
    v_omx: Expr = ZERO      # exponent of (1-x) in v
    w2_y: Expr = ZERO
    w2_omy: Expr = ZERO
    v2_x: Expr = ZERO
    v2_omx: Expr = ZERO
    domain: tuple[tuple[float, float], ...] = field(default=((-math.inf, 0.0), (0.0, 1.0)))


# The printed source table has a typo in the a+,b+,c+ row: its v(x) factor
# (1-x)^(b-c) does not satisfy the kernel identity; (1-x)^(a+b-c+mu) does.
TRANSMUTATION_CASES: dict[str, TransmutationCase] = {
    case.name: case
    for case in (
        TransmutationCase(
            "c+", A, B, C + MU, 0.0,
            w_y=C - 1, v_x=C + MU - 1),
        TransmutationCase(
            "a+,c+", A + MU, B, C + MU, 0.0,
            w_y=C - 1, w_omy=B - C - MU, v_x=C + MU - 1, v_omx=B - C,
            w2_omy=ONE, v2_omx=ONE),
        TransmutationCase(
            "a+,b+,c+", A + MU, B + MU, C + MU, 0.0,
            w_y=C - 1, w_omy=A + B - C, v_x=C + MU - 1, v_omx=A + B - C + MU),
        TransmutationCase(
            "a-", A - MU, B, C, 0.0,
            w_y=A - MU - 1, v_x=A - 1, w2_y=ONE, v2_x=ONE),
        TransmutationCase(
            "a+", A + MU, B, C, 0.0,
            w_y=C - A - MU - 1, w_omy=A + B - C, v_x=C - A - 1,
            v_omx=A + B - C + MU, w2_y=ONE, v2_x=ONE),
        TransmutationCase(
            "a-,b-,c-", A - MU, B - MU, C - MU, -math.inf,
            domain=((-math.inf, 1.0),)),
        TransmutationCase(
            "a-,c-", A - MU, B, C - MU, 1.0,
            w_omy=A - MU - 1, v_omx=A - 1, w2_omy=ONE, v2_omx=ONE,
            domain=((-math.inf, 1.0),)),
        TransmutationCase(
            "c-", A, B, C - MU, -math.inf,
            w_omy=A + B - C, v_omx=A + B - C + MU,
            domain=((-math.inf, 1.0),)),
    )
}


def transmutation_case(name: str) -> TransmutationCase:
    key = name.replace(" ", "").lower()
    if key not in TRANSMUTATION_CASES:
        raise UnknownCaseError(
            f"unknown case {name!r}; expected one of {sorted(TRANSMUTATION_CASES)}")
    return TRANSMUTATION_CASES[key]


def _powprod_L(pa: float, pb: float, pc: float,
               e_x: float, e_omx: float, e_y: float, e_omy: float, e_k: float,
               var: str, x: float, y: float) -> float:
    # Exact L applied to |x|^e_x (1-x)^e_omx |y|^e_y (1-y)^e_omy |x-y|^e_k.
    f = 1.0
    if e_x:
        f *= abs(x) ** e_x
    if e_omx:
        f *= (1.0 - x) ** e_omx
    if e_y:
        f *= abs(y) ** e_y
    if e_omy:
        f *= (1.0 - y) ** e_omy
    if e_k:
        f *= abs(x - y) ** e_k
    if var == "x":
        lp = e_x / x - e_omx / (1.0 - x) + e_k / (x - y)
        lpp = -e_x / x ** 2 - e_omx / (1.0 - x) ** 2 - e_k / (x - y) ** 2
        t = x
    else:
        lp = e_y / y - e_omy / (1.0 - y) - e_k / (x - y)
        lpp = -e_y / y ** 2 - e_omy / (1.0 - y) ** 2 - e_k / (x - y) ** 2
        t = y
    fp = f * lp
    fpp = f * (lpp + lp * lp)
    return t * (1.0 - t) * fpp + (pc - (pa + pb + 1.0) * t) * fp - pa * pb * f


def _interval_between(x0: float, x: float) -> tuple[float, float]:
    return (x0, x) if x0 < x else (x, x0)


def kernel_identity_sides(case: str | TransmutationCase, p: HypParams,
                          mu: float, x: float, y: float) -> tuple[float, float]:
    """(L_{a',b',c';x} K1, L_{1-a,1-b,2-c;y} K2) for one table row,
    evaluated with exact power-product derivatives."""
    row = case if isinstance(case, TransmutationCase) else transmutation_case(case)
    pt = SimpleNamespace(a=p.a, b=p.b, c=p.c, mu=mu)

    ok_x = any((lo < x < hi) for lo, hi in row.domain)
    lo, hi = _interval_between(row.x0, x)
    if not ok_x or not (lo < y < hi) or y == x:
        raise DomainError(f"(x={x}, y={y}) not interior to case {row.name}")

    ap, bp, cp = row.a_p(pt), row.b_p(pt), row.c_p(pt)
    k1 = _powprod_L(ap, bp, cp,
                    -row.v_x(pt), -row.v_omx(pt), row.w_y(pt), row.w_omy(pt),
                    mu - 1.0, "x", x, y)
    k2 = _powprod_L(1.0 - p.a, 1.0 - p.b, 2.0 - p.c,
                    -(row.v_x(pt) + row.v2_x(pt)), -(row.v_omx(pt) + row.v2_omx(pt)),
                    row.w_y(pt) + row.w2_y(pt), row.w_omy(pt) + row.w2_omy(pt),
                    mu - 1.0, "y", x, y)
    return k1, k2


def kernel_residual(case: str | TransmutationCase, p: HypParams, mu: float,
                    x: float, y: float) -> float:
    """L_{a',b',c';x} K1 - L_{1-a,1-b,2-c;y} K2; vanishes identically."""
    k1, k2 = kernel_identity_sides(case, p, mu, x, y)
    return k1 - k2
