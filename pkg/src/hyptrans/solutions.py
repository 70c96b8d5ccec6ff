"""The six explicit solutions w1..w6 of the hypergeometric equation.

Each solution is a power prefactor in |x| and |1-x| times a 2F1 with mapped
parameters and a mapped argument (x, 1/x, or 1-x), evaluated on real
subintervals with absolute-value conventions for the power factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .special import MAX_TERMS, SERIES_TOL, HypParams, hyp2f1_raw

INF = math.inf

EDGE_GUARD = 1e-8  # reject x this close to a finite domain endpoint


class SolutionKind(Enum):
    W1 = 1
    W2 = 2
    W3 = 3
    W4 = 4
    W5 = 5
    W6 = 6


_DOMAINS = {
    SolutionKind.W1: ((-INF, 1.0),),
    SolutionKind.W2: ((-INF, 0.0), (0.0, 1.0)),
    SolutionKind.W3: ((-INF, 0.0), (1.0, INF)),
    SolutionKind.W4: ((-INF, 0.0), (1.0, INF)),
    SolutionKind.W5: ((0.0, INF),),
    SolutionKind.W6: ((0.0, 1.0), (1.0, INF)),
}


def domain_of(kind: SolutionKind) -> tuple[tuple[float, float], ...]:
    """Open real intervals on which the solution is defined."""
    return _DOMAINS[kind]


@dataclass(frozen=True)
class WForm:
    """Structure of one solution: |x|^pow_x |1-x|^pow_omx F(fa,fb;fc; argmap(x))."""

    pow_x: float
    pow_omx: float
    fa: float
    fb: float
    fc: float
    argmap: str  # "x" | "inv" | "one_minus"


def w_form(kind: SolutionKind, p: HypParams) -> WForm:
    a, b, c = p.a, p.b, p.c
    if kind is SolutionKind.W1:
        return WForm(0.0, 0.0, a, b, c, "x")
    if kind is SolutionKind.W2:
        return WForm(1.0 - c, 0.0, a - c + 1.0, b - c + 1.0, 2.0 - c, "x")
    if kind is SolutionKind.W3:
        return WForm(-a, 0.0, a, a - c + 1.0, a - b + 1.0, "inv")
    if kind is SolutionKind.W4:
        return WForm(-b, 0.0, b, b - c + 1.0, b - a + 1.0, "inv")
    if kind is SolutionKind.W5:
        return WForm(0.0, 0.0, a, b, a + b - c + 1.0, "one_minus")
    if kind is SolutionKind.W6:
        return WForm(0.0, c - a - b, c - a, c - b, c - a - b + 1.0, "one_minus")
    raise ValueError(kind)


def map_argument(argmap: str, x: float) -> float:
    if argmap == "x":
        return x
    if argmap == "inv":
        return 1.0 / x
    return 1.0 - x


def in_domain(kind: SolutionKind, x: float) -> bool:
    for lo, hi in _DOMAINS[kind]:
        lo_ok = (x > lo + EDGE_GUARD) if lo != -INF else True
        hi_ok = (x < hi - EDGE_GUARD) if hi != INF else True
        if lo_ok and hi_ok:
            return True
    return False


def eval_w(kind: SolutionKind, x: float, p: HypParams, *,
           max_terms: int = MAX_TERMS, tol: float = SERIES_TOL) -> float:
    """Evaluate the solution at a real point of its domain."""
    if not in_domain(kind, x):
        raise DomainError(f"x={x} outside the domain of {kind.name}")
    form = w_form(kind, p)
    z = map_argument(form.argmap, x)
    val = hyp2f1_raw(form.fa, form.fb, form.fc, z, None, max_terms, tol)
    if form.pow_x != 0.0:
        val *= abs(x) ** form.pow_x
    if form.pow_omx != 0.0:
        val *= abs(1.0 - x) ** form.pow_omx
    return val
