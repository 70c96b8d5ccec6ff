"""Verification runner: sample parameters, integrate left-hand sides,
compare with closed forms, and report.

A point passes when the relative error is within tolerance AND the
quadrature's own error estimate is at most a tenth of the allowed error
(no passing on quadrature luck).  When the closed form is exactly zero
(the Gamma(1-mu) mechanism at integer mu) the check switches to an
absolute bound |lhs| <= 1e-8.
"""
from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    Family,
    IdentitySpec,
    ParamPoint,
    catalog,
    get_identity,
    realize_lhs,
    realize_rhs,
    sample_params,
)
from .diffop import (
    TransmutationCase,
    apply_L,
    gaussian_fn,
    kernel_identity_sides,
    transmutation_case,
)
from .errors import HyptransError, NoConvergenceError
from .quadrature import SingularIntegrand, integrate_finite, integrate_semi_infinite
from .special import HypParams

DEFAULT_QUAD_TOL = 1e-10
INNER_QUAD_TOL = 1e-12
INNER_QUAD_ABS_TOL = 1e-60
OUTER_QUAD_TOL = 1e-8
ZERO_RHS_CUTOFF = 1e-10
ZERO_RHS_ABS_TOL = 1e-8


def quad_tolerance() -> float:
    env = os.environ.get("HYPTRANS_QUAD_TOL", "").strip()
    if env:
        return float(env)
    return DEFAULT_QUAD_TOL


@dataclass(frozen=True)
class PointResult:
    point: ParamPoint
    lhs: float | None
    rhs: float | None
    rel_err: float | None
    quad_err: float | None
    passed: bool
    error: str | None = None


@dataclass
class VerificationReport:
    identity_id: str
    paper_eq: str
    family: str
    points: list[PointResult] = field(default_factory=list)
    pass_count: int = 0
    worst_rel_err: float = 0.0
    elapsed: float = 0.0

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def all_passed(self) -> bool:
        return self.pass_count == len(self.points)


def _integrate_realized(ri, rel_tol: float, abs_tol: float = 0.0):
    lo, hi = ri.lo, ri.hi
    if math.isinf(lo) and math.isinf(hi):
        raise ValueError("doubly infinite intervals do not occur in the catalog")
    if math.isinf(lo):
        return integrate_semi_infinite(ri.integrand, hi, -1, rel_tol, abs_tol=abs_tol)
    if math.isinf(hi):
        return integrate_semi_infinite(ri.integrand, lo, +1, rel_tol, abs_tol=abs_tol)
    return integrate_finite(ri.integrand, lo, hi, rel_tol, abs_tol=abs_tol)


def evaluate_lhs(spec: IdentitySpec, pt: ParamPoint,
                 rel_tol: float | None = None) -> tuple[float, float]:
    """Numerical value of the left-hand side at one parameter point."""
    if spec.family is Family.COMPOSITION:
        return evaluate_composition_lhs(spec, pt)
    qt = quad_tolerance() if rel_tol is None else rel_tol
    return _integrate_realized(realize_lhs(spec, pt), qt)


def evaluate_composition_lhs(spec: IdentitySpec, pt: ParamPoint
                             ) -> tuple[float, float]:
    """Two-layer quadrature for the composition entries (both orders = mu).

    Inner transform at tolerance 1e-12, outer at 1e-8, inner values memoized
    on the outer abscissae.
    """
    comp = spec.composition
    inner_spec = get_identity(comp.inner_id)
    mu = pt.mu
    gamma_mu = math.gamma(mu)
    gamma_1m = math.gamma(1.0 - mu)
    inner_is_gs = inner_spec.family is Family.STIELTJES
    cache: dict[float, float] = {}

    def inner_value(y: float) -> float:
        v = cache.get(y)
        if v is None:
            ri = realize_lhs(inner_spec, pt.with_(x=y))
            if ri.lo >= ri.hi:  # outer node rounded onto the inner endpoint
                v = 0.0
            else:
                try:
                    v, _ = _integrate_realized(ri, INNER_QUAD_TOL,
                                               abs_tol=INNER_QUAD_ABS_TOL)
                except NoConvergenceError as exc:
                    # only happens at extreme outer-tail nodes whose weighted
                    # contribution is negligible; the best estimate (or zero)
                    # is more than accurate enough there
                    v = exc.value if math.isfinite(exc.value) else 0.0
                if inner_is_gs:
                    v *= gamma_1m
            cache[y] = v
        return v

    x = pt.x
    a, b, c = pt.a, pt.b, pt.c
    decay = c + 2.0 * mu - 2.0 - min(a, b)

    def kernel_and_interval():
        if comp.outer == "frac_below":      # int_(-inf)^x  (x-y)^(mu-1)/G(mu)
            return (-math.inf, x), (lambda y, dlo, dhi: dhi ** (mu - 1.0) / gamma_mu), 0.0, mu - 1.0
        if comp.outer == "frac_above":      # int_x^inf  (y-x)^(mu-1)/G(mu)
            return (x, math.inf), (lambda y, dlo, dhi: dlo ** (mu - 1.0) / gamma_mu), mu - 1.0, 0.0
        if comp.outer == "gs_up":           # int_1^inf  G(1-mu)(y-x)^(mu-1)
            return (1.0, math.inf), (lambda y, dlo, dhi: gamma_1m * (dlo + (1.0 - x)) ** (mu - 1.0)), min(0.0, c + mu - a - b), 0.0
        if comp.outer == "gs_neg":          # int_(-inf)^0  G(1-mu)(x-y)^(mu-1)
            return (-math.inf, 0.0), (lambda y, dlo, dhi: gamma_1m * (x + dhi) ** (mu - 1.0)), 0.0, c + mu - 1.0
        raise ValueError(comp.outer)

    (lo, hi), kernel, left_exp, right_exp = kernel_and_interval()

    def core(y, d_lo, d_hi):
        vals = np.fromiter((inner_value(float(v)) for v in y), dtype=float,
                           count=len(y))
        with np.errstate(all="ignore"):
            return vals * kernel(y, d_lo, d_hi)

    integrand = SingularIntegrand(core, left_exp, right_exp, decay)
    if math.isinf(lo):
        return integrate_semi_infinite(integrand, hi, -1, OUTER_QUAD_TOL)
    return integrate_semi_infinite(integrand, lo, +1, OUTER_QUAD_TOL)


def composition_rhs(spec: IdentitySpec, pt: ParamPoint) -> float:
    """Closed form of the combined order: Gamma(1-2mu) * base rhs at 2mu."""
    base = get_identity(spec.composition.base_id)
    pt2 = pt.with_(mu=2.0 * pt.mu)
    return math.gamma(1.0 - 2.0 * pt.mu) * realize_rhs(base, pt2)


def _judge(lhs: float, rhs: float, quad_err: float, rel_tol: float
           ) -> tuple[float, bool]:
    if abs(rhs) < ZERO_RHS_CUTOFF:
        return abs(lhs), abs(lhs) <= ZERO_RHS_ABS_TOL
    rel = abs(lhs - rhs) / abs(rhs)
    ok = rel <= rel_tol and quad_err <= 0.1 * rel_tol * abs(rhs)
    return rel, ok


def verify_identity(id: str | IdentitySpec, seed: int = 42, n_points: int = 5,
                    rel_tol: float = 1e-6, *,
                    mu_fixed: float | None = None) -> VerificationReport:
    """Verify one identity at sampled parameter points."""
    spec = id if isinstance(id, IdentitySpec) else get_identity(id)
    report = VerificationReport(spec.id, spec.paper_eq, spec.family.value)
    t0 = time.perf_counter()
    points = sample_params(spec, seed, n_points, mu_fixed=mu_fixed)
    for pt in points:
        try:
            if spec.family is Family.COMPOSITION:
                lhs, qerr = evaluate_composition_lhs(spec, pt)
                rhs = composition_rhs(spec, pt)
            else:
                lhs, qerr = evaluate_lhs(spec, pt)
                rhs = realize_rhs(spec, pt)
            rel, ok = _judge(lhs, rhs, qerr, rel_tol)
            report.points.append(PointResult(pt, lhs, rhs, rel, qerr, ok))
            if ok:
                report.pass_count += 1
            report.worst_rel_err = max(report.worst_rel_err, rel)
        except HyptransError as exc:
            report.points.append(PointResult(pt, None, None, None, None,
                                             False, type(exc).__name__))
            report.worst_rel_err = math.inf
    report.elapsed = time.perf_counter() - t0
    return report


def verify_all(seed: int = 42, n_points: int = 5, rel_tol: float = 1e-6, *,
               family: str | None = None, jobs: int | None = None
               ) -> list[VerificationReport]:
    """Verify the whole catalog (optionally one family), one task per identity."""
    entries = catalog()
    if family is not None:
        fam = family.lower()
        entries = [e for e in entries if e.family.value.lower() == fam]
    order = [e.id for e in entries]
    if jobs is None:
        jobs = min(8, os.cpu_count() or 1)
    if jobs <= 1:
        reports = [verify_identity(e.id, seed, n_points, rel_tol) for e in entries]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futs = {e.id: pool.submit(verify_identity, e.id, seed, n_points, rel_tol)
                    for e in entries}
        reports = [futs[i].result() for i in order]
    return reports


# ------------------------------------------------------------ transmutation --

@dataclass(frozen=True)
class KernelResidualPoint:
    a: float
    b: float
    c: float
    mu: float
    x: float
    y: float
    residual: float
    passed: bool


@dataclass(frozen=True)
class GaussianCheck:
    a: float
    b: float
    c: float
    mu: float
    x: float
    lhs: float
    rhs: float
    rel_err: float
    passed: bool


@dataclass
class TransmutationReport:
    case: str
    kernel_points: list[KernelResidualPoint] = field(default_factory=list)
    gaussian_checks: list[GaussianCheck] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def all_passed(self) -> bool:
        return (all(p.passed for p in self.kernel_points)
                and all(g.passed for g in self.gaussian_checks))


def _sample_case_point(row: TransmutationCase, rng: random.Random):
    while True:
        a = rng.uniform(-2.0, 2.0)
        b = rng.uniform(-2.0, 2.0)
        c = rng.uniform(-2.0, 2.0)
        mu = rng.uniform(0.05, 2.5)
        lo, hi = row.domain[rng.randrange(len(row.domain))]
        lo = max(lo, -10.0) + 0.02
        hi = min(hi, 10.0) - 0.02
        x = rng.uniform(lo, hi)
        x0 = row.x0 if math.isfinite(row.x0) else x - 5.0
        ylo, yhi = (x0, x) if x0 < x else (x, x0)
        span = yhi - ylo
        y = rng.uniform(ylo + 0.05 * span, yhi - 0.05 * span)
        if min(abs(y), abs(1.0 - y), abs(x - y), abs(x), abs(1.0 - x)) < 1e-3:
            continue
        return a, b, c, mu, x, y


def _sample_gaussian_point(row: TransmutationCase, rng: random.Random,
                           mu: float):
    """Parameters for the integral-form check: the Gaussian is merely tiny
    (not zero) at the inner endpoint, so the weight exponents there must
    stay integrable."""
    while True:
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        c = rng.uniform(-3.0, 3.0)
        pt = ParamPoint(a, b, c, mu, 0.0)
        if row.x0 == 0.0:
            exps = (row.w_y(pt), row.w_y(pt) + row.w2_y(pt))
        elif row.x0 == 1.0:
            exps = (row.w_omy(pt), row.w_omy(pt) + row.w2_omy(pt))
        else:
            exps = ()
        if any(e <= -0.95 for e in exps):
            continue
        lo, hi = row.domain[rng.randrange(len(row.domain))]
        lo = max(lo, -10.0) + 0.05
        hi = min(hi, 10.0) - 0.05
        x = rng.uniform(lo, hi)
        if min(abs(x), abs(1.0 - x)) < 0.05:
            continue
        return a, b, c, x


def _gaussian_form_check(row: TransmutationCase, p: HypParams, mu: float,
                         x: float, rel_tol_quad: float = 1e-11):
    """Both sides of the transmutation identity with a Gaussian test function.

    The interval I runs from the row's inner endpoint to x (an 8-long window
    when that endpoint is -inf); the Gaussian is centered with sigma = L/12
    so its tails are below 1e-14 at the endpoints, and mu must exceed 2 so
    the twice-differentiated kernel stays integrable.
    """
    if mu <= 2.0:
        raise ValueError("the integral form needs mu > 2")
    pt = ParamPoint(p.a, p.b, p.c, mu, x)
    x0 = row.x0 if math.isfinite(row.x0) else x - 8.0
    lo, hi = (x0, x) if x0 < x else (x, x0)
    span = hi - lo
    f = gaussian_fn(lo + 0.5 * span, span / 12.0)
    sign = 1.0 if x >= hi else -1.0  # sign of x - y on I

    w_y, w_omy = row.w_y(pt), row.w_omy(pt)
    v_x, v_omx = row.v_x(pt), row.v_omx(pt)
    w2_y, w2_omy = row.w2_y(pt), row.w2_omy(pt)
    v2_x, v2_omx = row.v2_x(pt), row.v2_omx(pt)

    def weight(y, e_y, e_omy):
        with np.errstate(all="ignore"):
            out = np.ones_like(y)
            if e_y != 0.0:
                out = out * np.abs(y) ** e_y
            if e_omy != 0.0:
                out = out * (1.0 - y) ** e_omy
        return out

    def fvals(y):
        return np.fromiter((f.value_at(float(t)) for t in y), dtype=float,
                           count=len(y))

    def h_integral(kexp: float, e_y: float, e_omy: float, lf=None):
        def core(y, d_lo, d_hi):
            vals = (lf(y) if lf is not None else fvals(y)) * weight(y, e_y, e_omy)
            d = d_hi if x >= hi else d_lo
            with np.errstate(all="ignore"):
                return vals * d ** kexp
        val, _ = integrate_finite(SingularIntegrand(core, 0.0, 0.0),
                                  lo, hi, rel_tol_quad)
        return val

    # x-derivatives of H(x) = int f w |x-y|^(mu-1) dy under the integral sign
    h0 = h_integral(mu - 1.0, w_y, w_omy)
    h1 = (mu - 1.0) * sign * h_integral(mu - 2.0, w_y, w_omy)
    h2 = (mu - 1.0) * (mu - 2.0) * h_integral(mu - 3.0, w_y, w_omy)

    # 1/v(x) and derivatives
    vinv = 1.0
    lp = 0.0
    lpp = 0.0
    if v_x != 0.0:
        vinv *= abs(x) ** (-v_x)
        lp += -v_x / x
        lpp += v_x / x ** 2
    if v_omx != 0.0:
        vinv *= (1.0 - x) ** (-v_omx)
        lp += v_omx / (1.0 - x)
        lpp += v_omx / (1.0 - x) ** 2
    g0 = vinv * h0
    g1 = vinv * (lp * h0 + h1)
    g2 = vinv * ((lpp + lp * lp) * h0 + 2.0 * lp * h1 + h2)

    ap, bp, cp = row.a_p(pt), row.b_p(pt), row.c_p(pt)
    lhs = x * (1.0 - x) * g2 + (cp - (ap + bp + 1.0) * x) * g1 - ap * bp * g0

    def lf_vals(y):
        return np.fromiter(
            (apply_L(p, f, float(t)) for t in y), dtype=float, count=len(y))

    vinv2 = vinv
    if v2_x != 0.0:
        vinv2 *= abs(x) ** (-v2_x)
    if v2_omx != 0.0:
        vinv2 *= (1.0 - x) ** (-v2_omx)
    rhs = vinv2 * h_integral(mu - 1.0, w_y + w2_y, w_omy + w2_omy, lf=lf_vals)
    return lhs, rhs


def verify_transmutation(case: str, seed: int = 42, n_points: int = 20,
                         tol: float = 1e-8, *, gaussian_mu: float = 2.5,
                         n_gaussian: int = 3) -> TransmutationReport:
    """Kernel-identity residuals plus the Gaussian integral-form check."""
    row = transmutation_case(case)
    report = TransmutationReport(row.name)
    t0 = time.perf_counter()
    rng = random.Random(f"transmute:{row.name}|{seed}")
    for _ in range(n_points):
        a, b, c, mu, x, y = _sample_case_point(row, rng)
        p = HypParams(a, b, c)
        k1, k2 = kernel_identity_sides(row, p, mu, x, y)
        norm = abs(k1 - k2) / (1.0 + abs(k1))
        report.kernel_points.append(
            KernelResidualPoint(a, b, c, mu, x, y, norm, norm <= tol))
    for _ in range(n_gaussian):
        a, b, c, x = _sample_gaussian_point(row, rng, gaussian_mu)
        p = HypParams(a, b, c)
        try:
            lhs, rhs = _gaussian_form_check(row, p, gaussian_mu, x)
            scale = max(abs(lhs), abs(rhs), 1e-30)
            rel = abs(lhs - rhs) / scale
            report.gaussian_checks.append(
                GaussianCheck(a, b, c, gaussian_mu, x, lhs, rhs, rel,
                              rel <= 10.0 * tol))
        except HyptransError:
            report.gaussian_checks.append(
                GaussianCheck(a, b, c, gaussian_mu, x, math.nan, math.nan,
                              math.inf, False))
    report.elapsed = time.perf_counter() - t0
    return report


# --------------------------------------------------------------- reporting --

def point_to_dict(pr: PointResult) -> dict:
    return {
        "a": pr.point.a, "b": pr.point.b, "c": pr.point.c,
        "mu": pr.point.mu, "x": pr.point.x,
        "lhs": pr.lhs, "rhs": pr.rhs,
        "rel_err": pr.rel_err, "quad_err_est": pr.quad_err,
        "passed": pr.passed, "error": pr.error,
    }


def report_to_dict(r: VerificationReport) -> dict:
    # elapsed is intentionally excluded: reports must be byte-identical
    # across runs with the same seed and flags
    return {
        "identity_id": r.identity_id,
        "paper_eq": r.paper_eq,
        "family": r.family,
        "pass_count": r.pass_count,
        "n_points": r.n_points,
        "worst_rel_err": r.worst_rel_err,
        "points": [point_to_dict(p) for p in r.points],
    }


def reports_to_json(reports: list[VerificationReport], seed: int,
                    rel_tol: float) -> str:
    doc = {
        "version": 1,
        "seed": seed,
        "tolerances": {"rel_tol": rel_tol, "quad_tol": quad_tolerance()},
        "reports": [report_to_dict(r) for r in reports],
    }
    return json.dumps(doc, indent=2, allow_nan=True)


def reports_to_csv(reports: list[VerificationReport]) -> str:
    cols = ["identity_id", "paper_eq", "family", "a", "b", "c", "mu", "x",
            "lhs", "rhs", "rel_err", "quad_err_est", "passed", "error"]
    lines = [",".join(cols)]
    for r in reports:
        for p in r.points:
            d = point_to_dict(p)
            row = [r.identity_id, r.paper_eq, r.family] + [
                "" if d[k] is None else str(d[k])
                for k in cols[3:]]
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def reports_to_table(reports: list[VerificationReport]) -> str:
    lines = [f"{'identity':22s} {'family':12s} {'pass':>9s} {'worst rel err':>14s}"]
    for r in reports:
        lines.append(f"{r.identity_id:22s} {r.family:12s} "
                     f"{r.pass_count}/{r.n_points:<7d} {r.worst_rel_err:14.3e}")
    total = sum(r.pass_count for r in reports)
    n = sum(r.n_points for r in reports)
    ok = sum(1 for r in reports if r.all_passed)
    lines.append(f"-- {ok}/{len(reports)} identities passed "
                 f"({total}/{n} point checks)")
    return "\n".join(lines)
