"""Machine-readable catalog of the integral identities.

Every entry states one identity

    integral over y of  |y|^p |1-y|^q |x-y|^r  [inner solution](y)  dy
        =  gamma ratio * |x|^s |1-x|^t * [outer solution](x)

with all exponents, gamma arguments, and parameter maps affine in
(a, b, c, mu).  Families:

* FracI/II/III - the eight fractional transforms of 2F1 (kernel endpoint
  at y = x, kernel normalized by Gamma(mu)),
* WTransform   - nine fractional transforms acting on the solutions w1..w6,
* Stieltjes    - twenty-four transforms with x outside the integration
  interval (kernel not normalized),
* Euler        - twelve single-integral representations of the solutions,
* KarpSitnik   - the 3F2-valued transform and its 2F1 specialization,
* Composition  - four nested fractional/Stieltjes composition checks.

Three slips in the printed source are corrected here, each confirmed
numerically against an independent high-precision oracle: the w4 Euler
representations carry the prefactor Gamma(b-a+1)/(Gamma(1-a)Gamma(b))
(with constraints b > 0, a < 1), and the case-a+/b+ Stieltjes transforms
onto w4/w3 carry |1-x|^(a+b-c+mu).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from enum import Enum
from types import SimpleNamespace
from typing import Callable

import numpy as np

from . import backend
from .errors import DomainError, SamplerExhaustedError, UnknownIdentityError
from .expr import A, B, C, MU, ONE, ZERO, Expr
from .quadrature import SingularIntegrand
from .solutions import SolutionKind
from .special import GammaRatioSpec, HypParams, gamma_ratio, hyp2f1_raw, hyp3f2

INF = math.inf

W1, W2, W3, W4, W5, W6 = (SolutionKind.W1, SolutionKind.W2, SolutionKind.W3,
                          SolutionKind.W4, SolutionKind.W5, SolutionKind.W6)


class Family(str, Enum):
    FRAC_I = "FracI"
    FRAC_II = "FracII"
    FRAC_III = "FracIII"
    WTRANSFORM = "WTransform"
    STIELTJES = "Stieltjes"
    EULER = "Euler"
    COMPOSITION = "Composition"
    KARP_SITNIK = "KarpSitnik"


class IntervalKind(Enum):
    SEG_0X = "0<y/x<1"        # (0,x) or (x,0)
    RAY_X = "y/x>1"           # (x,inf) or (-inf,x)
    SEG_X1 = "0<(1-y)/(1-x)<1"  # (x,1) or (1,x)
    LEFT_RAY_X = "(-inf,x)"
    RIGHT_RAY_X = "(x,inf)"
    UNIT = "(0,1)"
    NEG = "(-inf,0)"
    UP = "(1,inf)"


@dataclass(frozen=True)
class IntegralSpec:
    interval: IntervalKind
    y_exp: Expr = ZERO
    omy_exp: Expr = ZERO
    kernel_exp: Expr = MU - 1
    inner_kind: SolutionKind | str | None = None   # SolutionKind, "2F1", or None
    inner_map: tuple[Expr, Expr, Expr] | None = None
    gamma_mu_normalized: bool = False


@dataclass(frozen=True)
class ClosedFormSpec:
    gamma_num: tuple[Expr, ...] = ()
    gamma_den: tuple[Expr, ...] = ()
    x_exp: Expr = ZERO
    omx_exp: Expr = ZERO
    outer_kind: SolutionKind | str | None = None   # SolutionKind, "2F1", "3F2", None
    outer_map: tuple[Expr, ...] | None = None      # 3 exprs (5 for "3F2", argument 1/x)


@dataclass(frozen=True)
class CompositionSpec:
    inner_id: str     # identity whose LHS is the inner integral (at order mu)
    outer: str        # "frac_below" | "frac_above" | "gs_up" | "gs_neg"
    base_id: str      # identity whose closed form, at order 2*mu, is the RHS


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    paper_eq: str
    family: Family
    lhs: IntegralSpec
    rhs: ClosedFormSpec
    constraints: tuple[Expr, ...]          # each must be > 0 (sampler margin)
    x_domain: tuple[tuple[float, float], ...]
    composition: CompositionSpec | None = None
    # derived at build time:
    pole_exprs: tuple[Expr, ...] = ()       # keep away from gamma poles
    degeneracy_exprs: tuple[Expr, ...] = () # keep away from all integers


@dataclass(frozen=True)
class ParamPoint:
    a: float
    b: float
    c: float
    mu: float
    x: float

    def with_(self, **kw) -> "ParamPoint":
        return replace(self, **kw)


# ------------------------------------------------------------ W structure --

def _w_form_expr(kind: SolutionKind, m: tuple[Expr, Expr, Expr]):
    """(pow_y, pow_omy, FA, FB, FC, argmap) of w_kind(y; m) at the Expr level."""
    ap, bp, cp = m
    if kind is W1:
        return ZERO, ZERO, ap, bp, cp, "x"
    if kind is W2:
        return ONE - cp, ZERO, ap - cp + 1, bp - cp + 1, 2 - cp, "x"
    if kind is W3:
        return -ap, ZERO, ap, ap - cp + 1, ap - bp + 1, "inv"
    if kind is W4:
        return -bp, ZERO, bp, bp - cp + 1, bp - ap + 1, "inv"
    if kind is W5:
        return ZERO, ZERO, ap, bp, ap + bp - cp + 1, "one_minus"
    if kind is W6:
        return ZERO, cp - ap - bp, cp - ap, cp - bp, cp - ap - bp + 1, "one_minus"
    raise ValueError(kind)


def _lhs_structure(lhs: IntegralSpec):
    """Combined exponents and the single 2F1 factor of the realized integrand."""
    p_y, p_omy, p_ker = lhs.y_exp, lhs.omy_exp, lhs.kernel_exp
    fcall = None  # (FA, FB, FC, argmap) as Exprs
    if lhs.inner_kind == "2F1":
        fa, fb, fc = lhs.inner_map
        fcall = (fa, fb, fc, "x")
    elif isinstance(lhs.inner_kind, SolutionKind):
        wy, womy, fa, fb, fc, argmap = _w_form_expr(lhs.inner_kind, lhs.inner_map)
        p_y = p_y + wy
        p_omy = p_omy + womy
        fcall = (fa, fb, fc, argmap)
    return p_y, p_omy, p_ker, fcall


_ENDPOINTS = {
    IntervalKind.SEG_0X: {+1: ("zero", "x"), -1: ("x", "zero")},
    IntervalKind.RAY_X: {+1: ("x", "+inf"), -1: ("-inf", "x")},
    IntervalKind.SEG_X1: {+1: ("x", "one"), -1: ("one", "x")},
    IntervalKind.LEFT_RAY_X: {0: ("-inf", "x")},
    IntervalKind.RIGHT_RAY_X: {0: ("x", "+inf")},
    IntervalKind.UNIT: {0: ("zero", "one")},
    IntervalKind.NEG: {0: ("-inf", "zero")},
    IntervalKind.UP: {0: ("one", "+inf")},
}


def _interval_branches(kind: IntervalKind):
    return _ENDPOINTS[kind].items()


def _endpoint_exponents(endpoint: str, p_y, p_omy, p_ker, fcall) -> list[Expr]:
    """Algebraic branch exponents of the integrand at one endpoint."""
    f_local: list[Expr] = [ZERO]
    if fcall is not None:
        fa, fb, fc, argmap = fcall
        if endpoint == "zero":
            if argmap == "inv":
                f_local = [fa, fb]
            elif argmap == "one_minus":
                f_local = [ZERO, fc - fa - fb]
        elif endpoint == "one":
            if argmap in ("x", "inv"):
                f_local = [ZERO, fc - fa - fb]
        elif endpoint in ("+inf", "-inf"):
            if argmap in ("x", "one_minus"):
                f_local = [-fa, -fb]
    if endpoint == "zero":
        return [p_y + e for e in f_local]
    if endpoint == "one":
        return [p_omy + e for e in f_local]
    if endpoint == "x":
        return [p_ker]
    return [p_y + p_omy + p_ker + e for e in f_local]


def _resolve_interval(kind: IntervalKind, x: float) -> tuple[float, float]:
    if kind is IntervalKind.SEG_0X:
        return (0.0, x) if x > 0 else (x, 0.0)
    if kind is IntervalKind.RAY_X:
        return (x, INF) if x > 0 else (-INF, x)
    if kind is IntervalKind.SEG_X1:
        return (x, 1.0) if x < 1 else (1.0, x)
    if kind is IntervalKind.LEFT_RAY_X:
        return (-INF, x)
    if kind is IntervalKind.RIGHT_RAY_X:
        return (x, INF)
    if kind is IntervalKind.UNIT:
        return (0.0, 1.0)
    if kind is IntervalKind.NEG:
        return (-INF, 0.0)
    if kind is IntervalKind.UP:
        return (1.0, INF)
    raise ValueError(kind)


def _base_arrays(kind: IntervalKind, x: float, y, d_lo, d_hi):
    """Magnitudes of (y, 1-y, x-y) from endpoint distances, per interval."""
    if kind is IntervalKind.SEG_0X:
        if x > 0:
            return d_lo, 1.0 - y, d_hi
        return d_hi, 1.0 - y, d_lo
    if kind is IntervalKind.RAY_X:
        if x > 0:
            return y, (x - 1.0) + d_lo, d_lo
        return -y, 1.0 - y, d_hi
    if kind is IntervalKind.SEG_X1:
        if x < 1:
            return np.abs(y), d_hi, d_lo
        return y, d_lo, d_hi
    if kind is IntervalKind.LEFT_RAY_X:
        return np.abs(y), 1.0 - y, d_hi
    if kind is IntervalKind.RIGHT_RAY_X:
        return y, np.abs(1.0 - y), d_lo
    if kind is IntervalKind.UNIT:
        return d_lo, d_hi, np.abs(x - y)
    if kind is IntervalKind.NEG:
        return d_hi, 1.0 - y, np.abs(x - y)
    if kind is IntervalKind.UP:
        return y, d_lo, np.abs(x - y)
    raise ValueError(kind)


def _f_arguments(argmap: str, kind: IntervalKind, x: float, y, d_lo, d_hi, absy):
    """(z, 1-z) for the inner 2F1, computed from stable distances."""
    if argmap == "x":
        z = y
        if kind is IntervalKind.UNIT or (kind is IntervalKind.SEG_X1 and x < 1):
            omz = d_hi
        else:
            omz = 1.0 - y
        return z, omz
    if argmap == "inv":
        if kind is IntervalKind.UP:
            ym1 = d_lo
        elif kind is IntervalKind.RAY_X and x > 0:
            ym1 = (x - 1.0) + d_lo
        else:
            ym1 = y - 1.0
        z = 1.0 / y
        return z, ym1 / y
    # one_minus
    z = 1.0 - y
    if kind is IntervalKind.UNIT or (kind is IntervalKind.SEG_0X and x > 0):
        omz = d_lo
    else:
        omz = absy
    return z, omz


# ----------------------------------------------------------------- entries --

_DOM_01 = ((-INF, 0.0), (0.0, 1.0))
_DOM_0UP = ((-INF, 0.0), (1.0, INF))
_DOM_1UP = ((0.0, 1.0), (1.0, INF))
_DOM_LT1 = ((-INF, 1.0),)
_DOM_POS = ((0.0, 1.0), (1.0, INF))


def _entry(id, paper_eq, family, lhs, rhs, constraints, x_domain, composition=None):
    pole, degen = _derived_guards(lhs, rhs)
    extra = _integrability_constraints(lhs)
    # keep stated constraints first; append derived ones not already present
    seen = set(constraints)
    cons = tuple(constraints) + tuple(e for e in extra if e not in seen)
    return IdentitySpec(id, paper_eq, family, lhs, rhs, cons, x_domain,
                        composition, pole, degen)


def _fcalls(lhs: IntegralSpec, rhs: ClosedFormSpec):
    calls = []
    fc = _lhs_structure(lhs)[3]
    if fc is not None:
        calls.append(fc[:3])
    if rhs.outer_kind == "2F1":
        calls.append(tuple(rhs.outer_map))
    elif rhs.outer_kind == "3F2":
        pass  # handled via pole exprs below
    elif isinstance(rhs.outer_kind, SolutionKind):
        _, _, fa, fb, fcp, _ = _w_form_expr(rhs.outer_kind, rhs.outer_map)
        calls.append((fa, fb, fcp))
    return calls


def _derived_guards(lhs: IntegralSpec, rhs: ClosedFormSpec):
    # only poles that break evaluation are sampling-hard; a denominator
    # gamma pole just makes the closed form exactly zero
    pole: list[Expr] = list(rhs.gamma_num)
    degen: list[Expr] = []
    for fa, fb, fc in _fcalls(lhs, rhs):
        pole.append(fc)
        degen.append(fc - fa - fb)
        degen.append(fa - fb)
    if rhs.outer_kind == "3F2":
        pole.extend(rhs.outer_map[3:])
    return tuple(pole), tuple(degen)


def _integrability_constraints(lhs: IntegralSpec) -> tuple[Expr, ...]:
    p_y, p_omy, p_ker, fcall = _lhs_structure(lhs)
    out = []
    for _, (left, right) in _interval_branches(lhs.interval):
        for endpoint in (left, right):
            for e in _endpoint_exponents(endpoint, p_y, p_omy, p_ker, fcall):
                if endpoint in ("+inf", "-inf"):
                    out.append(-e - 1)      # decay: exponent < -1
                else:
                    out.append(e + 1)       # integrable: exponent > -1
    # drop constant expressions that are trivially true
    return tuple(e for e in out
                 if not (e.a == e.b == e.c == e.mu == 0.0) or e.const <= 0)


def build_catalog() -> list[IdentitySpec]:
    """All verified identities, in a stable order."""
    E: list[IdentitySpec] = []
    add = E.append

    def frac(id, tag, fam, interval, y, omy, inner, rhs_num, rhs_den, x_exp,
             omx, outer, cons, dom):
        add(_entry(id, tag, fam,
                   IntegralSpec(interval, y, omy, MU - 1, "2F1", inner,
                                gamma_mu_normalized=True),
                   ClosedFormSpec(rhs_num, rhs_den, x_exp, omx, "2F1", outer),
                   cons, dom))

    abc = (A, B, C)
    # --- the eight fractional transforms of 2F1 ---
    frac("F-I-CP", "10", Family.FRAC_I, IntervalKind.SEG_0X,
         C - 1, ZERO, abc, (C,), (C + MU,), C + MU - 1, ZERO,
         (A, B, C + MU), (C, MU), _DOM_01)
    frac("F-I-APCP", "I:a+c+", Family.FRAC_I, IntervalKind.SEG_0X,
         C - 1, B - C - MU, abc, (C,), (C + MU,), C + MU - 1, B - C,
         (A + MU, B, C + MU), (C, MU), _DOM_01)
    frac("F-I-APBPCP", "7", Family.FRAC_I, IntervalKind.SEG_0X,
         C - 1, A + B - C, abc, (C,), (C + MU,), C + MU - 1, A + B - C + MU,
         (A + MU, B + MU, C + MU), (C, MU), _DOM_01)
    frac("F-II-AM", "2", Family.FRAC_II, IntervalKind.SEG_0X,
         A - MU - 1, ZERO, abc, (A - MU,), (A,), A - 1, ZERO,
         (A - MU, B, C), (A - MU, MU), _DOM_01)
    frac("F-II-AP", "5", Family.FRAC_II, IntervalKind.SEG_0X,
         C - A - MU - 1, A + B - C, abc, (C - A - MU,), (C - A,), C - A - 1,
         A + B - C + MU, (A + MU, B, C), (C - A - MU, MU), _DOM_01)
    frac("F-III-AMBMCM", "4", Family.FRAC_III, IntervalKind.LEFT_RAY_X,
         ZERO, ZERO, abc, (A - MU, B - MU, C), (A, B, C - MU), ZERO, ZERO,
         (A - MU, B - MU, C - MU), (A - MU, B - MU, MU), _DOM_LT1)
    frac("F-III-AMCM", "III:a-c-", Family.FRAC_III, IntervalKind.SEG_X1,
         ZERO, A - MU - 1, abc, (A - MU, C - B - MU, C), (A, C - B, C - MU),
         ZERO, A - 1, (A - MU, B, C - MU), (A - MU, C - B - MU, MU), _DOM_LT1)
    frac("F-III-CM", "6", Family.FRAC_III, IntervalKind.LEFT_RAY_X,
         ZERO, A + B - C, abc, (C - A - MU, C - B - MU, C),
         (C - A, C - B, C - MU), ZERO, A + B - C + MU,
         (A, B, C - MU), (C - A - MU, C - B - MU, MU), _DOM_LT1)

    def wtr(id, tag, interval, y, inner_kind, rhs_num, rhs_den, x_exp,
            outer_kind, outer, cons, dom):
        add(_entry(id, tag, Family.WTRANSFORM,
                   IntegralSpec(interval, y, ZERO, MU - 1, inner_kind, abc,
                                gamma_mu_normalized=True),
                   ClosedFormSpec(rhs_num, rhs_den, x_exp, ZERO, outer_kind, outer),
                   cons, dom))

    # --- fractional transforms of the six solutions ---
    cpmap = (A, B, C + MU)
    wtr("W-W1-CP", "93", IntervalKind.SEG_0X, C - 1, W1,
        (C,), (C + MU,), C + MU - 1, W1, cpmap, (C, MU), _DOM_01)
    wtr("W-W2-CP", "100", IntervalKind.LEFT_RAY_X, C - 1, W2,
        (A - C - MU + 1, B - C - MU + 1, 2 - C),
        (A - C + 1, B - C + 1, 2 - C - MU), C + MU - 1, W2, cpmap,
        (A - C - MU + 1, B - C - MU + 1, MU), _DOM_01)
    wtr("W-W3-CP", "71", IntervalKind.RAY_X, C - 1, W3,
        (A - C - MU + 1,), (A - C + 1,), C + MU - 1, W3, cpmap,
        (A - C - MU + 1, MU), _DOM_0UP)
    wtr("W-W4-CP", "71:w4", IntervalKind.RAY_X, C - 1, W4,
        (B - C - MU + 1,), (B - C + 1,), C + MU - 1, W4, cpmap,
        (B - C - MU + 1, MU), _DOM_0UP)
    wtr("W-W5-CP", "102", IntervalKind.RIGHT_RAY_X, C - 1, W5,
        (B - C - MU + 1, A - C - MU + 1, A + B - C + 1),
        (B - C + 1, A - C + 1, A + B - C - MU + 1), C + MU - 1, W5, cpmap,
        (A - C - MU + 1, B - C - MU + 1, MU), ((0.0, 1.0), (1.0, INF)))
    wtr("W-W6-CP", "82", IntervalKind.SEG_X1, C - 1, W6,
        (C - A - B + 1,), (C - A - B + MU + 1,), C + MU - 1, W6, cpmap,
        (C - A - B + 1, MU), _DOM_1UP)
    wtr("W-W2-AM", "83", IntervalKind.SEG_0X, A - MU - 1, W2,
        (A - C - MU + 1,), (A - C + 1,), A - 1, W2, (A - MU, B, C),
        (A - C - MU + 1, MU), _DOM_01)
    wtr("W-W4-AMBMCM", "84", IntervalKind.RAY_X, ZERO, W4,
        (B - MU,), (B,), ZERO, W4, (A - MU, B - MU, C - MU),
        (B - MU, MU), _DOM_0UP)
    wtr("W-W6-AMBMCM", "19", IntervalKind.SEG_X1, ZERO, W6,
        (C - A - B + 1,), (C - A - B + MU + 1,), ZERO, W6,
        (A - MU, B - MU, C - MU), (C - A - B + 1, MU), _DOM_1UP)

    def gs(id, tag, interval, y, omy, inner_kind, num, den, x_exp, omx,
           outer_kind, outer, dom):
        # constraints per the source convention: the three non-Gamma(1-mu)
        # numerator gamma arguments must be positive
        cons = tuple(num) + (MU,)
        add(_entry(id, tag, Family.STIELTJES,
                   IntegralSpec(interval, y, omy, MU - 1, inner_kind, abc),
                   ClosedFormSpec(num, den + (1 - MU,), x_exp, omx,
                                  outer_kind, outer),
                   cons, dom))

    # --- generalized Stieltjes transforms between solutions ---
    gs("S-CP-W1toW5", "90", IntervalKind.NEG, C - 1, ZERO, W1,
       (A - C - MU + 1, B - C - MU + 1, C), (A + B - C - MU + 1,),
       C + MU - 1, ZERO, W5, (A, B, C + MU), _DOM_POS)
    gs("S-CP-W6toW2", "101", IntervalKind.UP, C - 1, ZERO, W6,
       (A - C - MU + 1, B - C - MU + 1, C - A - B + 1), (2 - C - MU,),
       C + MU - 1, ZERO, W2, (A, B, C + MU), _DOM_01)
    gs("S-APCP-W1toW4", "89", IntervalKind.UNIT, C - 1, B - C - MU, W1,
       (1 - A - MU, B - C - MU + 1, C), (B - A - MU + 1,),
       C + MU - 1, B - C, W4, (A + MU, B, C + MU), _DOM_0UP)
    gs("S-APCP-W3toW2", "37", IntervalKind.UP, C - 1, B - C - MU, W3,
       (1 - A - MU, B - C - MU + 1, A - B + 1), (2 - C - MU,),
       C + MU - 1, B - C, W2, (A + MU, B, C + MU), _DOM_01)
    gs("S-BPCP-W1toW3", "S:b+c+:1", IntervalKind.UNIT, C - 1, A - C - MU, W1,
       (1 - B - MU, A - C - MU + 1, C), (A - B - MU + 1,),
       C + MU - 1, A - C, W3, (A, B + MU, C + MU), _DOM_0UP)
    gs("S-BPCP-W4toW2", "S:b+c+:2", IntervalKind.UP, C - 1, A - C - MU, W4,
       (1 - B - MU, A - C - MU + 1, B - A + 1), (2 - C - MU,),
       C + MU - 1, A - C, W2, (A, B + MU, C + MU), _DOM_01)
    gs("S-APBPCP-W1toW6", "S:a+b+c+:1", IntervalKind.NEG, C - 1, A + B - C, W1,
       (1 - A - MU, 1 - B - MU, C), (C - A - B - MU + 1,),
       C + MU - 1, A + B - C + MU, W6, (A + MU, B + MU, C + MU), _DOM_1UP)
    gs("S-APBPCP-W5toW2", "S:a+b+c+:2", IntervalKind.UP, C - 1, A + B - C, W5,
       (1 - A - MU, 1 - B - MU, A + B - C + 1), (2 - C - MU,),
       C + MU - 1, A + B - C + MU, W2, (A + MU, B + MU, C + MU), _DOM_01)
    gs("S-AM-W4toW5", "92", IntervalKind.NEG, A - MU - 1, ZERO, W4,
       (A - MU, A - C - MU + 1, B - A + 1), (A + B - C - MU + 1,),
       A - 1, ZERO, W5, (A - MU, B, C), _DOM_POS)
    gs("S-AM-W6toW3", "87", IntervalKind.UNIT, A - MU - 1, ZERO, W6,
       (A - C - MU + 1, A - MU, C - A - B + 1), (A - B - MU + 1,),
       A - 1, ZERO, W3, (A - MU, B, C), _DOM_0UP)
    gs("S-BM-W3toW5", "S:b-:1", IntervalKind.NEG, B - MU - 1, ZERO, W3,
       (B - MU, B - C - MU + 1, A - B + 1), (A + B - C - MU + 1,),
       B - 1, ZERO, W5, (A, B - MU, C), _DOM_POS)
    gs("S-BM-W6toW4", "88", IntervalKind.UNIT, B - MU - 1, ZERO, W6,
       (B - C - MU + 1, B - MU, C - A - B + 1), (B - A - MU + 1,),
       B - 1, ZERO, W4, (A, B - MU, C), _DOM_0UP)
    gs("S-AP-W3toW6", "S:a+:1", IntervalKind.NEG, C - A - MU - 1, A + B - C, W3,
       (1 - A - MU, C - A - MU, A - B + 1), (C - A - B - MU + 1,),
       C - A - 1, A + B - C + MU, W6, (A + MU, B, C), _DOM_1UP)
    gs("S-AP-W5toW4", "S:a+:2", IntervalKind.UNIT, C - A - MU - 1, A + B - C, W5,
       (1 - A - MU, C - A - MU, A + B - C + 1), (B - A - MU + 1,),
       C - A - 1, A + B - C + MU, W4, (A + MU, B, C), _DOM_0UP)
    gs("S-BP-W4toW6", "S:b+:1", IntervalKind.NEG, C - B - MU - 1, A + B - C, W4,
       (1 - B - MU, C - B - MU, B - A + 1), (C - A - B - MU + 1,),
       C - B - 1, A + B - C + MU, W6, (A, B + MU, C), _DOM_1UP)
    gs("S-BP-W5toW3", "S:b+:2", IntervalKind.UNIT, C - B - MU - 1, A + B - C, W5,
       (1 - B - MU, C - B - MU, A + B - C + 1), (A - B - MU + 1,),
       C - B - 1, A + B - C + MU, W3, (A, B + MU, C), _DOM_0UP)
    gs("S-AMBMCM-W2toW5", "S:a-b-c-:1", IntervalKind.NEG, ZERO, ZERO, W2,
       (A - MU, B - MU, 2 - C), (A + B - C - MU + 1,),
       ZERO, ZERO, W5, (A - MU, B - MU, C - MU), _DOM_POS)
    gs("S-AMBMCM-W6toW1", "S:a-b-c-:2", IntervalKind.UP, ZERO, ZERO, W6,
       (A - MU, B - MU, C - A - B + 1), (C - MU,),
       ZERO, ZERO, W1, (A - MU, B - MU, C - MU), _DOM_LT1)
    gs("S-AMCM-W2toW3", "S:a-c-:1", IntervalKind.UNIT, ZERO, A - MU - 1, W2,
       (C - B - MU, A - MU, 2 - C), (A - B - MU + 1,),
       ZERO, A - 1, W3, (A - MU, B, C - MU), _DOM_0UP)
    gs("S-AMCM-W4toW1", "91", IntervalKind.UP, ZERO, A - MU - 1, W4,
       (C - B - MU, A - MU, B - A + 1), (C - MU,),
       ZERO, A - 1, W1, (A - MU, B, C - MU), _DOM_LT1)
    gs("S-BMCM-W2toW4", "S:b-c-:1", IntervalKind.UNIT, ZERO, B - MU - 1, W2,
       (C - A - MU, B - MU, 2 - C), (B - A - MU + 1,),
       ZERO, B - 1, W4, (A, B - MU, C - MU), _DOM_0UP)
    gs("S-BMCM-W3toW1", "S:b-c-:2", IntervalKind.UP, ZERO, B - MU - 1, W3,
       (C - A - MU, B - MU, A - B + 1), (C - MU,),
       ZERO, B - 1, W1, (A, B - MU, C - MU), _DOM_LT1)
    gs("S-CM-W2toW6", "S:c-:1", IntervalKind.NEG, ZERO, A + B - C, W2,
       (C - A - MU, C - B - MU, 2 - C), (C - A - B - MU + 1,),
       ZERO, A + B - C + MU, W6, (A, B, C - MU), _DOM_1UP)
    gs("S-CM-W5toW1", "S:c-:2", IntervalKind.UP, ZERO, A + B - C, W5,
       (C - A - MU, C - B - MU, A + B - C + 1), (C - MU,),
       ZERO, A + B - C + MU, W1, (A, B, C - MU), _DOM_LT1)

    def euler(id, tag, interval, y, omy, ker, num, den, x_exp, outer_kind,
              cons, dom):
        # stored in representation-inverted form: integral = gammas * powers * w
        add(_entry(id, tag, Family.EULER,
                   IntegralSpec(interval, y, omy, ker),
                   ClosedFormSpec(num, den, x_exp, ZERO, outer_kind, abc),
                   cons, dom))

    # --- Euler-type integral representations ---
    euler("E-W1", "23", IntervalKind.SEG_0X, B - 1, -A, C - B - 1,
          (B, C - B), (C,), C - 1, W1, (B, C - B), _DOM_01)
    euler("E-W2", "24", IntervalKind.UP, B - 1, -A, C - B - 1,
          (A - C + 1, 1 - A), (2 - C,), C - 1, W2, (A - C + 1, 1 - A), _DOM_01)
    euler("E-W3", "25", IntervalKind.RAY_X, B - 1, -A, C - B - 1,
          (A - C + 1, C - B), (A - B + 1,), C - 1, W3,
          (A - C + 1, C - B), _DOM_0UP)
    euler("E-W4", "26", IntervalKind.UNIT, B - 1, -A, C - B - 1,
          (1 - A, B), (B - A + 1,), C - 1, W4, (1 - A, B), _DOM_0UP)
    euler("E-W5", "27", IntervalKind.NEG, B - 1, -A, C - B - 1,
          (A - C + 1, B), (A + B - C + 1,), C - 1, W5,
          (A - C + 1, B), _DOM_POS)
    euler("E-W6", "28", IntervalKind.SEG_X1, B - 1, -A, C - B - 1,
          (1 - A, C - B), (C - A - B + 1,), C - 1, W6,
          (1 - A, C - B), _DOM_1UP)
    euler("E-W1-GS", "22", IntervalKind.UP, A - C, C - B - 1, -A,
          (B, C - B), (C,), ZERO, W1, (B, C - B), _DOM_LT1)
    euler("E-W2-GS", "29", IntervalKind.SEG_0X, A - C, C - B - 1, -A,
          (A - C + 1, 1 - A), (2 - C,), ZERO, W2, (A - C + 1, 1 - A), _DOM_01)
    euler("E-W3-GS", "30", IntervalKind.UNIT, A - C, C - B - 1, -A,
          (A - C + 1, C - B), (A - B + 1,), ZERO, W3,
          (A - C + 1, C - B, B), _DOM_0UP)
    euler("E-W4-GS", "31", IntervalKind.RAY_X, A - C, C - B - 1, -A,
          (1 - A, B), (B - A + 1,), ZERO, W4, (1 - A, B), _DOM_0UP)
    euler("E-W5-GS", "32", IntervalKind.NEG, A - C, C - B - 1, -A,
          (A - C + 1, B), (A + B - C + 1,), ZERO, W5,
          (A - C + 1, B), _DOM_POS)
    euler("E-W6-GS", "18", IntervalKind.SEG_X1, A - C, C - B - 1, -A,
          (1 - A, C - B), (C - A - B + 1,), ZERO, W6,
          (1 - A, C - B), _DOM_1UP)

    # --- Karp-Sitnik transforms ---
    # 3F2 case with (d, e) bound to (b+mu, c+mu); inner solution carries the
    # (1-t)^(d+e-b-c-1) 2F1 factor as a w6.
    add(_entry(
        "KS-3F2", "14", Family.KARP_SITNIK,
        IntegralSpec(IntervalKind.UNIT, B - 1, ZERO, -A, W6,
                     (1 - MU, B - C - MU + 1, B - C + 1)),
        ClosedFormSpec((B, C, 2 * MU), (B + MU, C + MU), -A, ZERO, "3F2",
                       (A, B, C, B + MU, C + MU)),
        (B, C, MU), ((-10.0, -1.25), (1.25, 10.0))))
    # 2F1 case (d = a) with e bound to b+c-a+mu.
    add(_entry(
        "KS-2F1", "86", Family.KARP_SITNIK,
        IntegralSpec(IntervalKind.UNIT, B - 1, ZERO, -A, W6,
                     (B - A + 1, A - C - MU + 1, B - C + 1)),
        ClosedFormSpec((B, C, MU), (A, B + C - A + MU), B - A, ZERO, W3,
                       (B, A - C - MU + 1, B - C + 1)),
        (B, C, MU, A, B + C - A + MU), ((1.0, 10.0),)))

    # --- composition identities (two quadrature layers, nu = mu) ---
    s101_cons = (A - C - 2 * MU + 1, B - C - 2 * MU + 1, C - A - B + 1,
                 MU, 1 - 2 * MU)
    s90_cons = (A - C - 2 * MU + 1, B - C - 2 * MU + 1, C, MU, 1 - 2 * MU)
    comp_dom_w2 = ((-10.0, 0.0), (0.0, 1.0))
    comp_dom_w5 = ((0.0, 1.0), (1.0, 10.0))
    for id, tag, inner_id, outer, base_id, cons, dom in (
            ("C-GSFRAC-L", "94", "S-CP-W6toW2", "frac_below", "S-CP-W6toW2",
             s101_cons, comp_dom_w2),
            ("C-GSFRAC-R", "95", "S-CP-W1toW5", "frac_above", "S-CP-W1toW5",
             s90_cons, comp_dom_w5),
            ("C-FRACGS-L", "96", "W-W6-CP", "gs_up", "S-CP-W6toW2",
             s101_cons, comp_dom_w2),
            ("C-FRACGS-R", "97", "W-W1-CP", "gs_neg", "S-CP-W1toW5",
             s90_cons, comp_dom_w5)):
        base = next(e for e in E if e.id == base_id)
        add(IdentitySpec(id, tag, Family.COMPOSITION, base.lhs, base.rhs,
                         tuple(cons), dom,
                         CompositionSpec(inner_id, outer, base_id),
                         base.pole_exprs, base.degeneracy_exprs))

    return E


_CATALOG: list[IdentitySpec] | None = None


def catalog() -> list[IdentitySpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = build_catalog()
    return _CATALOG


def get_identity(id: str) -> IdentitySpec:
    for e in catalog():
        if e.id == id:
            return e
    raise UnknownIdentityError(f"no identity {id!r} in the catalog")


# ------------------------------------------------------------- realization --

@dataclass(frozen=True)
class RealizedIntegral:
    integrand: SingularIntegrand
    lo: float
    hi: float


def _branch_key(kind: IntervalKind, x: float) -> int:
    if kind in (IntervalKind.SEG_0X, IntervalKind.RAY_X):
        return +1 if x > 0 else -1
    if kind is IntervalKind.SEG_X1:
        return +1 if x < 1 else -1
    return 0


def realize_lhs(spec: IdentitySpec, pt: ParamPoint,
                max_terms: int = 20000, tol: float = 1e-15) -> RealizedIntegral:
    """Concrete vectorized integrand and interval for the left-hand side."""
    if spec.family is Family.COMPOSITION:
        raise DomainError("composition entries are realized through the harness")
    lhs = spec.lhs
    kind = lhs.interval
    x = pt.x
    lo, hi = _resolve_interval(kind, x)
    p_y_e, p_omy_e, p_ker_e, fcall_e = _lhs_structure(lhs)
    p_y, p_omy, p_ker = p_y_e(pt), p_omy_e(pt), p_ker_e(pt)
    if lo < 0.0 < hi and p_y != 0.0:
        raise DomainError(f"{spec.id}: interval crosses 0 with |y| exponent {p_y}")
    if lo < 1.0 < hi and p_omy != 0.0:
        raise DomainError(f"{spec.id}: interval crosses 1 with |1-y| exponent {p_omy}")
    const = 1.0 / math.gamma(pt.mu) if lhs.gamma_mu_normalized else 1.0
    if fcall_e is not None:
        fa, fb, fc = fcall_e[0](pt), fcall_e[1](pt), fcall_e[2](pt)
        argmap = fcall_e[3]

    def core(y, d_lo, d_hi):
        absy, omy, ker = _base_arrays(kind, x, y, d_lo, d_hi)
        with np.errstate(all="ignore"):
            # power product in log space: the individual factors can leave
            # double range far out on slowly-decaying tails even though the
            # combined power is moderate
            lg = np.zeros(y.shape)
            if p_y != 0.0:
                lg += p_y * np.log(absy)
            if p_omy != 0.0:
                lg += p_omy * np.log(omy)
            if p_ker != 0.0:
                lg += p_ker * np.log(ker)
            if fcall_e is None:
                return const * np.exp(lg)
            z, omz = _f_arguments(argmap, kind, x, y, d_lo, d_hi, absy)
            fv, deep = backend.hyp2f1_vec_scaled(fa, fb, fc, z, omz,
                                                 max_terms, tol)
            if deep.any():
                # fold the deep-branch leading power of F into the log product
                lg = lg - np.where(deep, min(fa, fb) * np.log(omz), 0.0)
            out = const * fv * np.exp(lg)
        return out

    key = _branch_key(kind, x)
    left_t, right_t = _ENDPOINTS[kind][key]
    args = (p_y_e, p_omy_e, p_ker_e, fcall_e)
    if left_t in ("-inf",):
        left_exp = 0.0
        decay = max(e(pt) for e in _endpoint_exponents(left_t, *args))
    else:
        left_exp = min(e(pt) for e in _endpoint_exponents(left_t, *args))
        decay = -2.0
    if right_t in ("+inf",):
        right_exp = 0.0
        decay = max(e(pt) for e in _endpoint_exponents(right_t, *args))
    else:
        right_exp = min(e(pt) for e in _endpoint_exponents(right_t, *args))

    return RealizedIntegral(SingularIntegrand(core, left_exp, right_exp, decay),
                            lo, hi)


def realize_rhs(spec: IdentitySpec, pt: ParamPoint) -> float:
    """Closed-form right-hand side; exactly 0 on a denominator gamma pole."""
    from .solutions import eval_w  # local import to avoid cycle at module load

    rhs = spec.rhs
    val = gamma_ratio(GammaRatioSpec([e(pt) for e in rhs.gamma_num],
                                     [e(pt) for e in rhs.gamma_den]))
    if val == 0.0:
        return 0.0
    x = pt.x
    xe = rhs.x_exp(pt)
    oxe = rhs.omx_exp(pt)
    if xe != 0.0:
        val *= abs(x) ** xe
    if oxe != 0.0:
        val *= abs(1.0 - x) ** oxe
    kind = rhs.outer_kind
    if kind is None:
        return val
    if kind == "2F1":
        fa, fb, fc = (e(pt) for e in rhs.outer_map)
        return val * hyp2f1_raw(fa, fb, fc, x)
    if kind == "3F2":
        ps = [e(pt) for e in rhs.outer_map]
        return val * hyp3f2(*ps, 1.0 / x)
    ap, bp, cp = (e(pt) for e in rhs.outer_map)
    return val * eval_w(kind, x, HypParams(ap, bp, cp))


# ---------------------------------------------------------------- sampling --

SAMPLER_MARGIN = 0.05
POLE_MARGIN = 1e-3
X_MARGIN = 0.02
X_CLIP = 10.0
MAX_REJECTIONS = 100000


def _near_gamma_pole(v: float, margin: float) -> bool:
    if v > 0.5:
        return False
    r = round(v)
    return r <= 0 and abs(v - r) < margin


def _near_integer(v: float, margin: float) -> bool:
    return abs(v - round(v)) < margin


def _x_intervals(spec: IdentitySpec) -> list[tuple[float, float]]:
    out = []
    for lo, hi in spec.x_domain:
        lo = max(lo, -X_CLIP) + X_MARGIN
        hi = min(hi, X_CLIP) - X_MARGIN
        if lo < hi:
            out.append((lo, hi))
    return out


def sample_params(spec: IdentitySpec, seed: int, n: int, *,
                  mu_fixed: float | None = None) -> list[ParamPoint]:
    """Rejection-sample admissible parameter points, deterministic per seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(f"{spec.id}|{seed}")
    intervals = _x_intervals(spec)
    if not intervals:
        raise SamplerExhaustedError(f"{spec.id}: empty x domain after clipping")
    pts: list[ParamPoint] = []
    rejects = 0
    while len(pts) < n:
        if rejects > MAX_REJECTIONS:
            raise SamplerExhaustedError(
                f"{spec.id}: {MAX_REJECTIONS} rejections; constraints look "
                "unsatisfiable")
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        c = rng.uniform(-3.0, 3.0)
        mu = mu_fixed if mu_fixed is not None else rng.uniform(0.05, 2.5)
        trial = SimpleNamespace(a=a, b=b, c=c, mu=mu)
        if any(e(trial) < SAMPLER_MARGIN for e in spec.constraints):
            rejects += 1
            continue
        if any(_near_gamma_pole(e(trial), POLE_MARGIN) for e in spec.pole_exprs):
            rejects += 1
            continue
        if any(_near_integer(e(trial), SAMPLER_MARGIN)
               for e in spec.degeneracy_exprs):
            rejects += 1
            continue
        lo, hi = intervals[rng.randrange(len(intervals))]
        x = rng.uniform(lo, hi)
        pts.append(ParamPoint(a, b, c, mu, x))
    return pts


# ------------------------------------------------------------------ export --

def _expr_tuple(e: Expr):
    return list(e.coeffs())


def identity_to_dict(spec: IdentitySpec) -> dict:
    lhs = spec.lhs
    rhs = spec.rhs
    d = {
        "id": spec.id,
        "paper_eq": spec.paper_eq,
        "family": spec.family.value,
        "lhs": {
            "interval": lhs.interval.value,
            "y_exp": _expr_tuple(lhs.y_exp),
            "one_minus_y_exp": _expr_tuple(lhs.omy_exp),
            "kernel_exp": _expr_tuple(lhs.kernel_exp),
            "inner_kind": (lhs.inner_kind.name
                           if isinstance(lhs.inner_kind, SolutionKind)
                           else lhs.inner_kind),
            "inner_map": ([_expr_tuple(e) for e in lhs.inner_map]
                          if lhs.inner_map else None),
            "gamma_mu_normalized": lhs.gamma_mu_normalized,
        },
        "rhs": {
            "gamma_num": [_expr_tuple(e) for e in rhs.gamma_num],
            "gamma_den": [_expr_tuple(e) for e in rhs.gamma_den],
            "x_exp": _expr_tuple(rhs.x_exp),
            "one_minus_x_exp": _expr_tuple(rhs.omx_exp),
            "outer_kind": (rhs.outer_kind.name
                           if isinstance(rhs.outer_kind, SolutionKind)
                           else rhs.outer_kind),
            "outer_map": ([_expr_tuple(e) for e in rhs.outer_map]
                          if rhs.outer_map else None),
        },
        "constraints": [_expr_tuple(e) for e in spec.constraints],
        "x_domain": [[lo, hi] for lo, hi in spec.x_domain],
    }
    if spec.composition is not None:
        d["composition"] = {
            "inner_id": spec.composition.inner_id,
            "outer": spec.composition.outer,
            "base_id": spec.composition.base_id,
        }
    return d


def catalog_to_dict() -> dict:
    return {
        "version": 1,
        "expr_coeffs": ["const", "a", "b", "c", "mu"],
        "identities": [identity_to_dict(e) for e in catalog()],
    }
