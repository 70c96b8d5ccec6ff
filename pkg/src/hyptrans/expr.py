"""Affine expressions in the parameters (a, b, c, mu).

Every exponent, gamma argument, and parameter map in the identity catalog is
affine in (a, b, c, mu) with small integer coefficients, so a five-tuple of
coefficients is enough to express, combine, and serialize all of them.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Expr:
    const: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    mu: float = 0.0

    def __add__(self, other):
        other = _coerce(other)
        return Expr(self.const + other.const, self.a + other.a, self.b + other.b,
                    self.c + other.c, self.mu + other.mu)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Expr(self.const - other.const, self.a - other.a, self.b - other.b,
                    self.c - other.c, self.mu - other.mu)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Expr(-self.const, -self.a, -self.b, -self.c, -self.mu)

    def __mul__(self, k):
        k = float(k)
        return Expr(k * self.const, k * self.a, k * self.b, k * self.c, k * self.mu)

    __rmul__ = __mul__

    def __call__(self, pt) -> float:
        return (self.const + self.a * pt.a + self.b * pt.b + self.c * pt.c
                + self.mu * pt.mu)

    def is_zero(self) -> bool:
        return self == Expr()

    def coeffs(self) -> tuple[float, float, float, float, float]:
        return (self.const, self.a, self.b, self.c, self.mu)

    def __str__(self) -> str:
        parts = []
        for coef, sym in ((self.a, "a"), (self.b, "b"), (self.c, "c"), (self.mu, "mu")):
            if coef == 0:
                continue
            mag = "" if abs(coef) == 1 else f"{abs(coef):g}*"
            parts.append(("-" if coef < 0 else "+", f"{mag}{sym}"))
        if self.const != 0 or not parts:
            parts.append(("-" if self.const < 0 else "+", f"{abs(self.const):g}"))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _coerce(v) -> Expr:
    if isinstance(v, Expr):
        return v
    return Expr(const=float(v))


A = Expr(a=1.0)
B = Expr(b=1.0)
C = Expr(c=1.0)
MU = Expr(mu=1.0)
ONE = Expr(const=1.0)
ZERO = Expr()
